import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from vcrg.abelian import abelian_image_trivial, abelian_order, abelianize, exponent_matrix, smith_normal_form
from vcrg.presentations import Presentation, VcrgParams, j_group, vcrg_presentation
from vcrg.rewriting import tietze_simplify
from vcrg.words import GenId, Word, parse_word

A, B = GenId("a"), GenId("b")


def det(m):
    # fraction-free enough for tiny matrices: exact Gaussian elimination
    m = [[Fraction(v) for v in row] for row in m]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= f * m[c][j]
    return int(out)


def determinantal_factors(m):
    """Invariant factors from gcds of minors: d_k = D_k / D_(k-1)."""
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            return out
        out.append(g // prev)
        prev = g
    return out


class TestSmithNormalForm:
    def test_examples(self):
        assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
        assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
        assert smith_normal_form([[0]]) == [0]

    def test_rectangular(self):
        assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
        assert smith_normal_form([[4, 6]]) == [2]
        assert smith_normal_form([[4], [6], [0]]) == [2]

    def test_ragged(self):
        with pytest.raises(ValueError):
            smith_normal_form([[1, 2], [3]])

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))))
    def test_matches_determinantal_divisors(self, m):
        assert smith_normal_form(m) == determinantal_factors(m)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=3, max_size=5))
    def test_divisibility_chain(self, m):
        d = smith_normal_form(m)
        nonzero = [v for v in d if v]
        assert all(v > 0 for v in nonzero)
        assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))
        assert d[len(nonzero):] == [0] * (len(d) - len(nonzero))


class TestAbelianize:
    def test_free(self):
        assert abelianize(Presentation((A, B), ())) == [0, 0]

    def test_cyclic(self):
        assert abelianize(Presentation((A,), (Word.letter(A, 7),))) == [7]

    def test_j_group(self):
        assert abelianize(j_group(2, 3, 5)) == [30]
        assert abelianize(j_group(4, 6, 12)) == [2, 12, 12]

    def test_exponent_matrix(self):
        assert exponent_matrix(j_group(2, 3, 5)) == [[2, 0, 0], [0, 3, 0], [0, 0, 5], [0, 0, 0], [0, 0, 0]]

    def test_order(self):
        assert abelian_order(j_group(2, 3, 5)) == 30
        assert abelian_order(Presentation((A, B), ())) is None
        assert abelian_order(vcrg_presentation(VcrgParams(3, 1, 3, 2, 4))) is not None

    def test_image_trivial(self):
        pres = Presentation((A, B), (Word.letter(A, 4), parse_word("a b a^-1 b^-1", [A, B]), Word.letter(B, 6)))
        assert abelian_image_trivial(pres, parse_word("a^4 b^6", [A, B]))
        assert abelian_image_trivial(pres, parse_word("a b a^-1 b^-1", [A, B]))
        assert not abelian_image_trivial(pres, parse_word("a^2", [A, B]))

    @pytest.mark.parametrize("seed", range(20))
    def test_j_group_is_product_of_cyclics(self, seed):
        rng = random.Random(seed)
        k, n, m = (rng.randint(1, 30) for _ in range(3))
        expected = smith_normal_form([[k, 0, 0], [0, n, 0], [0, 0, m]])
        assert abelianize(j_group(k, n, m)) == [d for d in expected if d != 1]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(1, 3), st.integers(1, 5), st.integers(1, 3), st.integers(1, 5),
           st.integers(0, 10 ** 6))
    def test_tietze_invariance(self, k, b, n, c, m, seed):
        if b * n < 2 or c * m < 2 or gcd(n, m) != 1:
            return
        pres = vcrg_presentation(VcrgParams(k, b, n, c, m))
        rels = list(pres.relators)
        random.Random(seed).shuffle(rels)
        simplified = tietze_simplify(pres.with_relators(rels)).presentation
        assert abelianize(simplified) == abelianize(pres)
