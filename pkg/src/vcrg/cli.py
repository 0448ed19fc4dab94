"""Command-line interface.

Parameters of a virtual group are given as ``k,b,n,c,m`` for
``W_b^c(k, bn, cm)``: for example ``4,2,3,3,4`` is ``W_2^3(4, 6, 12)``.
Exit status: 0 ok, 1 verification failure, 2 usage or resource error
(including coset enumeration overflow).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import List, Optional, Sequence

from . import analysis, classification
from .abelian import abelianize
from .cosets import (
    DEFAULT_MAX_COSETS,
    STRATEGIES,
    EnumerationLimits,
    EnumerationOverflow,
    group_order,
    normal_closure_index,
    todd_coxeter,
)
from .presentations import (
    ParameterError,
    Presentation,
    TriangleParams,
    VcrgParams,
    center_word,
    intermediate_presentation,
    j_group,
    parse_presentation,
    render,
    triangle_plus,
    vcrg_presentation,
)
from .rewriting import RewritingError, RsSetup, subgroup_presentation, tietze_simplify
from .words import format_word, parse_word

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str, count: int, what: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}") from None
    if len(values) != count:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}")
    return values


def _vcrg_params(args) -> Optional[VcrgParams]:
    if getattr(args, "params", None):
        return VcrgParams(*_ints(args.params, 5, "--params"))
    singles = [getattr(args, name, None) for name in ("k", "b", "n", "c", "m")]
    if any(v is not None for v in singles):
        if any(v is None for v in singles):
            raise UsageError("--k, --b, --n, --c and --m must be given together")
        return VcrgParams(*singles)
    return None


def _add_source(p: argparse.ArgumentParser, single_flags: bool = False) -> None:
    g = p.add_argument_group("presentation source (exactly one)")
    g.add_argument("--params", metavar="K,B,N,C,M", help="virtual group W_b^c(k, bn, cm)")
    if single_flags:
        for name in ("k", "b", "n", "c", "m"):
            g.add_argument(f"--{name}", type=int, help=f"parameter {name} (with the other four)")
    g.add_argument("--j", metavar="K,N,M", help="J-group <s,t,u | s^k=t^n=u^m=1, stu=tus=ust>")
    g.add_argument("--triangle", metavar="K,N,M", help="<a,b | a^k = b^n = (ba^-1)^m = 1>")
    g.add_argument("--intermediate", metavar="K,BN,C,M", help="index-m subgroup of J(k,bn,cm) on s,t,z")
    g.add_argument("--input", metavar="FILE", help="presentation JSON ('-' for stdin)")


def _source(args) -> Presentation:
    found = []
    params = _vcrg_params(args)
    if params is not None:
        found.append(vcrg_presentation(params))
    if getattr(args, "j", None):
        found.append(j_group(*_ints(args.j, 3, "--j")))
    if getattr(args, "triangle", None):
        found.append(triangle_plus(TriangleParams(*_ints(args.triangle, 3, "--triangle"))))
    if getattr(args, "intermediate", None):
        found.append(intermediate_presentation(*_ints(args.intermediate, 4, "--intermediate")))
    if getattr(args, "input", None):
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
        found.append(parse_presentation(text))
    if len(found) != 1:
        raise UsageError("give exactly one presentation source")
    return found[0]


def _limits(args) -> EnumerationLimits:
    limits = EnumerationLimits.from_env()
    if getattr(args, "max_cosets", None):
        limits = replace(limits, max_cosets=args.max_cosets)
    if getattr(args, "strategy", None):
        limits = replace(limits, strategy=args.strategy)
    return limits


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def cmd_present(args) -> int:
    print(render(_source(args), args.format).rstrip("\n"))
    return EXIT_OK


def cmd_order(args) -> int:
    order = group_order(_source(args), _limits(args))
    if order is None:
        _emit({"order": None, "status": "unknown", "reason": "coset enumeration overflow"})
        return EXIT_ERROR
    _emit({"order": order})
    return EXIT_OK


def cmd_index(args) -> int:
    pres = _source(args)
    words = [parse_word(w, pres.generators) for w in (args.subgroup or "").split(";") if w.strip()]
    limits = _limits(args)
    if args.normal:
        index = normal_closure_index(pres, words, limits)
    else:
        try:
            table = todd_coxeter(pres, words, limits)
            index = table.size
        except EnumerationOverflow:
            index = None
    if index is None:
        _emit({"index": None, "status": "unknown", "reason": "coset enumeration overflow"})
        return EXIT_ERROR
    out = {"index": index, "normal_closure": bool(args.normal)}
    if args.table and not args.normal:
        out["table"] = table.to_json()
    _emit(out)
    return EXIT_OK


def cmd_center(args) -> int:
    p = _vcrg_params(args)
    if p is None:
        raise UsageError("center needs --params")
    out = {"params": list(p.as_tuple()), "delta": format_word(center_word(p))}
    if not args.verify:
        _emit(out)
        return EXIT_OK
    report = analysis.verify_central_extension(p, _limits(args))
    if report is None:
        out["verification"] = {"status": "unknown", "reason": "coset enumeration overflow"}
        _emit(out)
        return EXIT_ERROR
    out["verification"] = report
    _emit(out)
    return EXIT_OK if report["ok"] else EXIT_FAILED


def cmd_classify(args) -> int:
    p1 = VcrgParams(*_ints(args.p1, 5, "--p1"))
    p2 = VcrgParams(*_ints(args.p2, 5, "--p2"))
    _emit({
        "isomorphic": classification.reflection_isomorphic(p1, p2),
        "C1": classification.column_multiset(p1).to_json(),
        "C2": classification.column_multiset(p2).to_json(),
        "classes1": classification.hyperplane_classes(p1),
        "classes2": classification.hyperplane_classes(p2),
        "finite1": classification.is_finite(p1),
        "finite2": classification.is_finite(p2),
        "names": [classification.shephard_todd_name(p1), classification.shephard_todd_name(p2)],
    })
    return EXIT_OK


def cmd_iso(args) -> int:
    if args.map == "nm-swap":
        p = _vcrg_params(args)
        if p is None:
            raise UsageError("iso --map nm-swap needs --params")
        f = analysis.nm_swap_images(p)
    else:
        if not args.j:
            raise UsageError("iso --map column-swap needs --j K,N,M (the target J(k, n, m))")
        f = analysis.column_swap_map(*_ints(args.j, 3, "--j"))
    limits = _limits(args)
    check = analysis.check_hom(f, limits)
    out = {
        "map": args.map,
        "images": {str(g): format_word(f.images[g]) for g in f.source.generators},
        "homomorphism": check.to_json(),
    }
    if check.verified and args.map == "nm-swap":
        out["bijective"] = analysis.is_bijective(f, limits)
    _emit(out)
    if check.failed or out.get("bijective") is False:
        return EXIT_FAILED
    return EXIT_OK if check.verified else EXIT_ERROR


def cmd_rs(args) -> int:
    pres = _source(args)
    setup = RsSetup(pres, pres.gen(args.generator), args.modulus)
    try:
        sub = subgroup_presentation(setup, _limits(args))
    except RewritingError as err:
        _emit({"error": str(err), "verdict": err.verdict})
        return EXIT_FAILED if err.verdict is False else EXIT_ERROR
    dictionary = {str(g): format_word(w) for g, w in sub.meaning.items()}
    out = {"presentation": sub.to_json(), "dictionary": dictionary}
    if args.simplify:
        simplified = tietze_simplify(sub, protect=args.protect or ())
        out["simplified"] = simplified.presentation.to_json()
        out["simplified_text"] = render(simplified.presentation)
        out["simplification_complete"] = simplified.complete
    _emit(out)
    return EXIT_OK


def cmd_abelianize(args) -> int:
    _emit(abelianize(_source(args)))
    return EXIT_OK


def cmd_homcount(args) -> int:
    pres = _source(args)
    try:
        count = analysis.hom_count(pres, args.degree)
    except ValueError as err:
        raise UsageError(str(err)) from None
    _emit({"degree": args.degree, "count": count})
    return EXIT_OK


def verify_table1(max_order: int, family_param: int, limits: EnumerationLimits) -> List[dict]:
    """Check ``group_order`` against the expected order of each Table 1 instance.

    Family rows are sampled: every instance whose family parameters are at
    most ``family_param``, plus the largest instance within ``max_order``.
    """
    cases = []
    for row in classification.TABLE1_ROWS:
        instances = row.enumerate(max_order)
        chosen = [inst for inst in instances if max(inst.params.as_tuple()) <= max(family_param, 5)]
        if instances:
            largest = max(instances, key=lambda inst: inst.expected_order)
            if largest not in chosen:
                chosen.append(largest)
        cases.extend(chosen)
    report = []
    for inst in cases:
        order = group_order(vcrg_presentation(inst.params), limits)
        entry = {
            "row": inst.row,
            "name": inst.name,
            "params": list(inst.params.as_tuple()),
            "expected": inst.expected_order,
            "order": order,
        }
        if inst.monomial is not None:
            entry["monomial_closure"] = classification.monomial_group_order(*inst.monomial)
        entry["ok"] = order == inst.expected_order and entry.get("monomial_closure", order) == order
        report.append(entry)
    return report


def cmd_verify(args) -> int:
    if args.suite != "table1":
        raise UsageError(f"unknown suite {args.suite!r}")
    report = verify_table1(args.max_order, args.family_param, _limits(args))
    failures = [r for r in report if not r["ok"]]
    _emit({"suite": "table1", "cases": len(report), "failures": failures, "results": report if args.all else None})
    return EXIT_FAILED if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcrg",
        description=__doc__.split("\n\n")[0],
        epilog="Parameters K,B,N,C,M describe W_b^c(k, bn, cm); the env var VCRG_MAX_COSETS "
        "overrides the default coset limit.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-cosets", type=int, default=argparse.SUPPRESS,
                        help=f"coset limit for enumerations (default {DEFAULT_MAX_COSETS})")
    parser.add_argument("--max-cosets", type=int, default=None,
                        help=f"coset limit for enumerations (default {DEFAULT_MAX_COSETS})")
    for p in (common, parser):
        p.add_argument("--strategy", choices=STRATEGIES, default=argparse.SUPPRESS if p is common else None,
                       help="coset enumeration strategy (default auto: Felsch for wide presentations)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    p = add("present", "print a presentation")
    _add_source(p, single_flags=True)
    p.add_argument("--format", choices=("text", "gap", "json"), default="text")
    p.set_defaults(func=cmd_present)

    p = add("order", "group order by coset enumeration")
    _add_source(p, single_flags=True)
    p.set_defaults(func=cmd_order)

    p = add("index", "index of a subgroup given by words")
    _add_source(p, single_flags=True)
    p.add_argument("--subgroup", default="", help='subgroup generators, e.g. "s;t^2;u^3"')
    p.add_argument("--normal", action="store_true", help="index of the normal closure instead")
    p.add_argument("--table", action="store_true", help="include the coset table (1-based)")
    p.set_defaults(func=cmd_index)

    p = add("center", "the central element Delta, optionally verified")
    _add_source(p, single_flags=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_center)

    p = add("classify", "compare two parameter tuples")
    p.add_argument("--p1", required=True, metavar="K,B,N,C,M")
    p.add_argument("--p2", required=True, metavar="K,B,N,C,M")
    p.set_defaults(func=cmd_classify)

    p = add("iso", "check an explicit isomorphism")
    p.add_argument("--map", choices=("nm-swap", "column-swap"), required=True)
    p.add_argument("--params", metavar="K,B,N,C,M", help="source of nm-swap")
    p.add_argument("--j", metavar="K,N,M", help="target J(k,n,m) of column-swap")
    p.set_defaults(func=cmd_iso)

    p = add("rs", "Reidemeister-Schreier for a cyclic quotient")
    _add_source(p)
    p.add_argument("--generator", required=True, help="the distinguished generator")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--protect", action="append", help="generator kept by the simplifier (repeatable)")
    p.set_defaults(func=cmd_rs)

    p = add("abelianize", "invariant factors of the abelianization")
    _add_source(p, single_flags=True)
    p.set_defaults(func=cmd_abelianize)

    p = add("homcount", "number of homomorphisms into Sym(d)")
    _add_source(p, single_flags=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_homcount)

    p = add("verify", "batch verification suites")
    p.add_argument("suite", choices=("table1",))
    p.add_argument("--max-order", type=int, default=5000)
    p.add_argument("--family-param", type=int, default=10,
                   help="check every family instance with parameters up to this value")
    p.add_argument("--all", action="store_true", help="include passing cases in the report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParameterError, KeyError, ValueError, OSError) as err:
        print(f"vcrg {args.command}: error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
