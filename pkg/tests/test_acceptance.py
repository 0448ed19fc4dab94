"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary by ``conftest.py``.
"""
import random
import time
from functools import lru_cache
from math import gcd
from pathlib import Path

import pytest

from vcrg.abelian import abelianize, smith_normal_form
from vcrg.analysis import (
    canonical_phi,
    check_hom,
    column_swap_map,
    embedding_map,
    is_bijective,
    nm_swap_images,
    phi_cokernel_presentation,
    verify_central_extension,
    verify_conjugacy,
)
from vcrg.classification import (
    column_permutations,
    divisors,
    hyperplane_classes,
    is_finite,
    orders_multiset,
    reflection_class_data,
    reflection_isomorphic,
)
from vcrg.cli import verify_table1
from vcrg.cosets import EnumerationLimits, RegularRepresentation, group_order, normal_closure_index
from vcrg.presentations import S, T, U, Presentation, VcrgParams, j_group, render, vcrg_presentation
from vcrg.rewriting import RsSetup, rederive_vcrg, subgroup_presentation, tietze_simplify
from vcrg.words import GenId, Word, format_word, parse_word

GOLDEN = Path(__file__).parent / "golden"
MAX_ORDER = 5000
STU = [S, T, U]


@lru_cache(maxsize=None)
def finite_grid():
    """Every finite W_b^c(k, bn, cm) with k <= 6, b, c <= 5, n, m <= 12 and order <= 5000."""
    cases = []
    for k in range(2, 7):
        for b in range(1, 6):
            for n in range(1, 13):
                for c in range(1, 6):
                    for m in range(1, 13):
                        if b * n < 2 or c * m < 2 or gcd(n, m) != 1:
                            continue
                        p = VcrgParams(k, b, n, c, m)
                        if not is_finite(p):
                            continue
                        order = group_order(vcrg_presentation(p), EnumerationLimits(max_cosets=400_000))
                        if order is not None and order <= MAX_ORDER:
                            cases.append((p, order))
    return tuple(cases)


@lru_cache(maxsize=None)
def table1_report():
    return tuple(verify_table1(MAX_ORDER, 10, EnumerationLimits()))


def random_params(rng, hi=12):
    while True:
        k, b, n, c, m = rng.randint(2, hi), rng.randint(1, 5), rng.randint(1, hi), rng.randint(1, 5), rng.randint(1, hi)
        if b * n >= 2 and c * m >= 2 and gcd(n, m) == 1:
            return VcrgParams(k, b, n, c, m)


def test_criterion_01_golden_presentations(criterion):
    start = time.perf_counter()
    ok = []
    for params, name in [((4, 2, 3, 3, 4), "w_4_2_3_3_4"), ((3, 2, 4, 1, 5), "w_3_2_4_1_5")]:
        text = render(vcrg_presentation(VcrgParams(*params))) + "\n"
        ok.append(text == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8"))

    pres = vcrg_presentation(VcrgParams(3, 1, 3, 2, 4))
    golden = (GOLDEN / "w_3_1_3_2_4.txt").read_text(encoding="utf-8").strip()
    extra = ", x3zx1x2x3 = zx1x2x3x1"
    text = render(pres)
    ok.append(extra in text and text.replace(extra, "") == golden)

    # the extra relation follows in two substitutions:
    # 1. x3zx1x2x3 -> x1x2x3zx1, both sides of the displayed chain
    # 2. prefix x1x2x3z -> zx1x2x3, the commutation relation
    sides = [[format_word(w) for w in chain.sides] for chain in pres.chains]
    ok.append(any({"x1x2x3zx1", "x3zx1x2x3"} <= set(s) for s in sides))
    ok.append(["x1x2x3z", "zx1x2x3"] in sides)
    word = "x3zx1x2x3"
    word = word.replace("x3zx1x2x3", "x1x2x3zx1")
    word = word.replace("x1x2x3z", "zx1x2x3", 1)
    ok.append(word == "zx1x2x3x1")

    elapsed = time.perf_counter() - start
    passed = all(ok) and elapsed < 1
    criterion(1, passed, f"{sum(ok)}/{len(ok)} checks, {elapsed:.2f}s")
    assert passed


def test_criterion_02_rs_commuting_pair(criterion):
    start = time.perf_counter()
    a_, b_ = GenId("a"), GenId("b")
    parent = Presentation((a_, b_), (parse_word("a b a^-1 b^-1", [a_, b_]),))
    ok = []
    for n in range(2, 7):
        result = tietze_simplify(subgroup_presentation(RsSetup(parent, a_, n)))
        a, b = GenId("a", n - 1), GenId("b", 0)
        ok.append(
            result.complete
            and result.presentation.generators == (a, b)
            and result.presentation.relators == (Word.product([a, b]) * ~Word.product([b, a]),)
        )
    elapsed = time.perf_counter() - start
    passed = all(ok) and elapsed < 1
    criterion(2, passed, f"n=2..6 {sum(ok)}/5, {elapsed:.2f}s")
    assert passed


@pytest.mark.slow
def test_criterion_03_rs_rederivation(criterion):
    mismatches = []
    for p, order in finite_grid():
        derived = group_order(rederive_vcrg(*p.as_tuple()), EnumerationLimits(max_cosets=400_000))
        if derived != order:
            mismatches.append((p.as_tuple(), derived, order))
    criterion(3, not mismatches, f"{len(finite_grid())} finite cases, {len(mismatches)} mismatches")
    assert not mismatches


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="last Table 1 row: the group is G(2cd,2d,2), not the listed G(2cd,2c,2), when c != d")
def test_criterion_04_table1_orders(criterion):
    report = table1_report()
    failures = [r for r in report if not r["ok"]]
    rows = sorted({r["row"] for r in failures})
    criterion(4, not failures, f"{len(report)} cases, {len(failures)} failures in rows {rows}")
    assert not failures


@pytest.mark.slow
def test_criterion_04_failures_confined_to_the_relabelled_row():
    # companion to the expected failure above: every other row passes, and
    # each failure in the last row matches the order of G(2cd,2d,2)
    report = table1_report()
    failures = [r for r in report if not r["ok"]]
    assert {r["row"] for r in failures} == {"G(2cd,2c,2) <-> W_2^c(2,2,cd)"}
    for r in failures:
        c, d = r["params"][3], r["params"][4]
        assert c != d and r["order"] == 4 * c * c * d
    assert sum(r["ok"] for r in report) > 60


def test_criterion_05_normal_closure_index(criterion):
    tuples = [
        (2, 1, 3, 1, 4), (3, 1, 3, 2, 4), (4, 2, 3, 3, 4), (3, 2, 4, 1, 5), (2, 1, 5, 1, 7),
        (5, 1, 2, 1, 3), (2, 2, 3, 3, 2), (6, 1, 5, 1, 6), (3, 3, 7, 2, 2), (2, 4, 9, 1, 4),
        (7, 1, 4, 1, 9), (4, 1, 11, 2, 3), (2, 5, 8, 5, 3), (3, 2, 5, 3, 7), (9, 1, 2, 1, 5),
        (2, 1, 12, 1, 11), (5, 3, 3, 1, 10), (3, 2, 1, 4, 3), (4, 4, 1, 1, 7), (6, 2, 6, 2, 5),
        (3, 1, 2, 1, 3), (2, 2, 1, 3, 1), (12, 2, 13, 3, 1),
    ]
    infinite = sum(not is_finite(VcrgParams(*t)) for t in tuples)
    bad, slowest = [], 0.0
    for k, b, n, c, m in tuples:
        start = time.perf_counter()
        words = [Word.letter(S), Word.letter(T, n), Word.letter(U, m)]
        index = normal_closure_index(j_group(k, b * n, c * m), words)
        slowest = max(slowest, time.perf_counter() - start)
        if index != n * m:
            bad.append(((k, b, n, c, m), index))
    passed = not bad and infinite >= 10 and slowest < 1
    criterion(5, passed, f"{len(tuples)} tuples ({infinite} infinite), slowest {slowest:.3f}s")
    assert passed


@pytest.mark.slow
def test_criterion_06_central_extension(criterion):
    failures, checked = [], set()
    for r in table1_report():
        p = VcrgParams(*r["params"])
        if p.as_tuple() in checked:
            continue
        checked.add(p.as_tuple())
        report = verify_central_extension(p)
        if report is None or not report["ok"]:
            failures.append(p.as_tuple())
    stu = parse_word("stu", STU)
    parents = {(p.k, p.b * p.n, p.c * p.m) for p, _ in finite_grid()}
    not_central = [kmn for kmn in sorted(parents) if not RegularRepresentation(j_group(*kmn)).is_central(stu)]
    passed = not failures and not not_central
    criterion(6, passed, f"{len(checked)} Table 1 cases, {len(parents)} parents")
    assert passed


def test_criterion_07_cokernel_triviality(criterion):
    pairs = [(2, 3), (3, 2), (2, 5), (3, 4), (4, 3), (3, 5), (5, 2), (2, 7), (5, 3), (4, 5)]
    orders = {nm: group_order(phi_cokernel_presentation(*nm)) for nm in pairs}
    control = group_order(phi_cokernel_presentation(2, 4))
    passed = all(o == 1 for o in orders.values()) and control is not None and control > 1 and gcd(2, 4) % control == 0
    criterion(7, passed, f"10 coprime pairs trivial, control (2,4) order {control}")
    assert passed


@pytest.mark.slow
def test_criterion_08_isomorphism_maps(criterion):
    failures = []
    for p, order in finite_grid():
        k, bn, cm = p.k, p.b * p.n, p.c * p.m
        parent = RegularRepresentation(j_group(k, bn, cm))
        swap = nm_swap_images(p)
        checks = {
            "phi": check_hom(canonical_phi(k, bn, cm)).verified,
            "embedding": check_hom(embedding_map(p), rep=parent).verified,
            "column_swap": check_hom(column_swap_map(k, bn, cm), rep=parent).verified,
            "nm_swap": check_hom(swap).verified,
            "nm_swap_bijective": is_bijective(swap) is True,
        }
        failures.extend((p.as_tuple(), name) for name, ok in checks.items() if not ok)
    criterion(8, not failures, f"{len(finite_grid())} finite cases, {len(failures)} failed checks")
    assert not failures


def test_criterion_09_classification_properties(criterion):
    rng = random.Random(20261018)
    broken = []
    for _ in range(1000):
        p = random_params(rng)
        expected_classes = 3 - (p.b == 1) - (p.c == 1)
        expected_orders = sorted(divisors(p.k) + (divisors(p.b) if p.b > 1 else []) + (divisors(p.c) if p.c > 1 else []))
        for q in column_permutations(p):
            if not (reflection_isomorphic(p, q) and reflection_isomorphic(q, p)):
                broken.append((p.as_tuple(), q.as_tuple(), "isomorphic"))
            if hyperplane_classes(q) != expected_classes or orders_multiset(q) != expected_orders:
                broken.append((p.as_tuple(), q.as_tuple(), "invariants"))

    # finite cases: conjugacy data of generator images in the regular rep
    sample = [p for p, order in finite_grid() if order <= 2000]
    for p in sample:
        data = reflection_class_data(p)
        if data != {"classes": hyperplane_classes(p), "orders": orders_multiset(p)}:
            broken.append((p.as_tuple(), data, "class data"))
        if verify_conjugacy(p) is not True:
            broken.append((p.as_tuple(), None, "x_i conjugacy"))
    criterion(9, not broken, f"1000 random tuples, {len(sample)} finite cross-checks, {len(broken)} problems")
    assert not broken


def test_criterion_10_abelianization(criterion):
    rng = random.Random(10)
    bad = []
    for _ in range(20):
        k, n, m = (rng.randint(1, 40) for _ in range(3))
        expected = [d for d in smith_normal_form([[k, 0, 0], [0, n, 0], [0, 0, m]]) if d != 1]
        if abelianize(j_group(k, n, m)) != expected:
            bad.append(("triple", (k, n, m)))
    for run in range(100):
        p = random_params(rng, hi=8)
        pres = vcrg_presentation(p) if run % 2 else j_group(p.k, p.b * p.n, p.c * p.m)
        relators = list(pres.relators)
        rng.shuffle(relators)
        simplified = tietze_simplify(pres.with_relators(relators), budget=rng.randint(1, 50)).presentation
        if abelianize(simplified) != abelianize(pres):
            bad.append(("tietze", p.as_tuple()))
    criterion(10, not bad, f"20 triples, 100 simplification runs, {len(bad)} mismatches")
    assert not bad
