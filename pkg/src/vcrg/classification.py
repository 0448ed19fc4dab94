"""Reflection-isomorphism invariants, the finiteness test and the Table 1
identification of finite groups."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .cosets import EnumerationLimits, RegularRepresentation
from .presentations import ParameterError, VcrgParams, Y, Z, vcrg_presentation, x
from .words import Word

Column = Tuple[int, int]


@dataclass(frozen=True)
class ColumnMultiset:
    """The three columns ``(top, bottom)``, kept sorted."""

    columns: Tuple[Column, Column, Column]

    def __post_init__(self):
        cols = tuple(sorted((int(a), int(b)) for a, b in self.columns))
        if len(cols) != 3:
            raise ValueError("a column multiset has exactly three columns")
        object.__setattr__(self, "columns", cols)

    def to_json(self) -> list:
        return [list(c) for c in self.columns]

    def __str__(self) -> str:
        return "{{" + ", ".join(f"({a},{b})" for a, b in self.columns) + "}}"


def column_multiset(p: VcrgParams) -> ColumnMultiset:
    return ColumnMultiset(((p.k, 1), (p.b * p.n, p.n), (p.c * p.m, p.m)))


def reflection_isomorphic(p1: VcrgParams, p2: VcrgParams) -> bool:
    return column_multiset(p1) == column_multiset(p2)


def params_from_columns(columns: Sequence[Column]) -> Optional[VcrgParams]:
    """Read ``(k, b, n, c, m)`` off three columns in the order
    ``(k, 1), (bn, n), (cm, m)``; ``None`` if they do not form valid parameters."""
    (k, one), (bn, n), (cm, m) = columns
    if one != 1 or n < 1 or m < 1 or bn % n or cm % m:
        return None
    try:
        return VcrgParams(k, bn // n, n, cm // m, m)
    except ParameterError:
        return None


def column_permutations(p: VcrgParams) -> List[VcrgParams]:
    """All parameter tuples obtained by permuting the columns of ``p``."""
    cols = column_multiset(p).columns
    out = []
    seen = set()
    for order in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        q = params_from_columns([cols[i] for i in order])
        if q is not None and q.as_tuple() not in seen:
            seen.add(q.as_tuple())
            out.append(q)
    return out


def hyperplane_classes(p: VcrgParams) -> int:
    return 3 - (p.b == 1) - (p.c == 1)


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def orders_multiset(p: VcrgParams) -> List[int]:
    """``d(k) + d(b) + d(c)`` as a sorted list, dropping ``d(1)`` for absent classes."""
    out = list(divisors(p.k))
    if p.b > 1:
        out += divisors(p.b)
    if p.c > 1:
        out += divisors(p.c)
    return sorted(out)


def is_finite(p: VcrgParams) -> bool:
    return Fraction(1, p.k) + Fraction(1, p.b * p.n) + Fraction(1, p.c * p.m) > 1


# -- monomial reflection groups G(de, e, 2) ---------------------------------

# A 2x2 monomial matrix over the N-th roots of unity: (swap, a, b) stands for
# diag(z^a, z^b) times the permutation matrix (identity or swap).
Monomial = Tuple[bool, int, int]


def _monomial_mul(f: Monomial, g: Monomial, N: int) -> Monomial:
    fs, fa, fb = f
    gs, ga, gb = g
    # diag(fa, fb) P_f diag(ga, gb) P_g = diag(fa, fb) diag(P_f(ga, gb)) P_f P_g
    if fs:
        ga, gb = gb, ga
    return (fs != gs, (fa + ga) % N, (fb + gb) % N)


def monomial_generators(de: int, e: int) -> List[Monomial]:
    """Standard reflections generating ``G(de, e, 2)``."""
    if de % e:
        raise ValueError("e must divide de")
    gens: List[Monomial] = [(True, 0, 0), (True, 1 % de, (-1) % de)]
    if de // e > 1:
        gens.append((False, e % de, 0))
    return gens


def monomial_group_order(de: int, e: int) -> int:
    """``|G(de, e, 2)|`` by closing the generating reflections under multiplication."""
    gens = monomial_generators(de, e)
    identity: Monomial = (False, 0, 0)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = _monomial_mul(f, g, de)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def monomial_order_formula(de: int, e: int) -> int:
    return 2 * de * de // e


# -- Table 1 -----------------------------------------------------------------

EXCEPTIONAL_ORDERS: Dict[str, int] = {
    "G4": 24, "G5": 72, "G6": 48, "G7": 144, "G8": 96, "G9": 192, "G10": 288,
    "G11": 576, "G12": 48, "G13": 96, "G14": 144, "G15": 288, "G16": 600,
    "G17": 1200, "G18": 1800, "G19": 3600, "G20": 360, "G21": 720, "G22": 240,
}


@dataclass(frozen=True)
class Table1Instance:
    row: str
    name: str
    params: VcrgParams
    # (de, e) when the group is G(de, e, 2)
    monomial: Optional[Tuple[int, int]] = None

    @property
    def expected_order(self) -> int:
        if self.monomial is not None:
            return monomial_order_formula(*self.monomial)
        return EXCEPTIONAL_ORDERS[self.name]


@dataclass(frozen=True)
class Table1Row:
    """A row: ``recognize`` names parameters matching the row's pattern,
    ``enumerate(max_order)`` lists its instances up to an order bound."""

    label: str
    recognize: Callable[[VcrgParams], Optional[Table1Instance]]
    enumerate: Callable[[int], List[Table1Instance]]


def _fixed_row(label: str, items: Sequence[Tuple[str, Tuple[int, ...]]], monomial=None) -> Table1Row:
    monomial = monomial or {}
    table = {
        params: Table1Instance(label, name, VcrgParams(*params), monomial.get(name)) for name, params in items
    }

    def recognize(p: VcrgParams) -> Optional[Table1Instance]:
        return table.get(p.as_tuple())

    def enumerate_(max_order: int) -> List[Table1Instance]:
        return [inst for inst in table.values() if inst.expected_order <= max_order]

    return Table1Row(label, recognize, enumerate_)


_ODD_DIHEDRAL = "G(2l+1,2l+1,2) <-> W(2,2,2l+1)"
_IMPRIMITIVE_D = "G(d(2l+1),2l+1,2) <-> W_d(2,d(2l+1),2)"
_EVEN_DIHEDRAL = "G(2d,2d,2) <-> W_2(2,2,d)"
_TWO_C = "G(2cd,2c,2) <-> W_2^c(2,2,cd)"


def _odd_dihedral(N: int) -> Table1Instance:
    return Table1Instance(_ODD_DIHEDRAL, f"G({N},{N},2)", VcrgParams(2, 1, 2, 1, N), (N, N))


def _imprimitive_d(d: int, N: int) -> Table1Instance:
    return Table1Instance(_IMPRIMITIVE_D, f"G({d * N},{N},2)", VcrgParams(2, d, N, 1, 2), (d * N, N))


def _even_dihedral(d: int) -> Table1Instance:
    return Table1Instance(_EVEN_DIHEDRAL, f"G({2 * d},{2 * d},2)", VcrgParams(2, 2, 1, 1, d), (2 * d, 2 * d))


def _two_c(c: int, d: int) -> Table1Instance:
    return Table1Instance(_TWO_C, f"G({2 * c * d},{2 * c},2)", VcrgParams(2, 2, 1, c, d), (2 * c * d, 2 * c))


def _upto(make: Callable[[int], Table1Instance], start: int, step: int, max_order: int) -> List[Table1Instance]:
    # orders increase with the family parameter
    out = []
    v = start
    while True:
        inst = make(v)
        if inst.expected_order > max_order:
            return out
        out.append(inst)
        v += step


def _odd_dihedral_row() -> Table1Row:
    def recognize(p: VcrgParams) -> Optional[Table1Instance]:
        if (p.k, p.b, p.n, p.c) == (2, 1, 2, 1) and p.m % 2 == 1 and p.m >= 3:
            return _odd_dihedral(p.m)
        return None

    return Table1Row(_ODD_DIHEDRAL, recognize, lambda bound: _upto(_odd_dihedral, 3, 2, bound))


def _imprimitive_d_row() -> Table1Row:
    def recognize(p: VcrgParams) -> Optional[Table1Instance]:
        if (p.k, p.c, p.m) == (2, 1, 2) and p.b >= 2 and p.n % 2 == 1:
            return _imprimitive_d(p.b, p.n)
        return None

    def enumerate_(bound: int) -> List[Table1Instance]:
        out = []
        d = 2
        while _imprimitive_d(d, 1).expected_order <= bound:
            out += _upto(lambda N: _imprimitive_d(d, N), 1, 2, bound)
            d += 1
        return out

    return Table1Row(_IMPRIMITIVE_D, recognize, enumerate_)


def _even_dihedral_row() -> Table1Row:
    def recognize(p: VcrgParams) -> Optional[Table1Instance]:
        if (p.k, p.b, p.n, p.c) == (2, 2, 1, 1) and p.m >= 2:
            return _even_dihedral(p.m)
        return None

    return Table1Row(_EVEN_DIHEDRAL, recognize, lambda bound: _upto(_even_dihedral, 2, 1, bound))


def _two_c_row() -> Table1Row:
    # c = 1 is the G(2d,2d,2) row
    def recognize(p: VcrgParams) -> Optional[Table1Instance]:
        if (p.k, p.b, p.n) == (2, 2, 1) and p.c >= 2:
            return _two_c(p.c, p.m)
        return None

    def enumerate_(bound: int) -> List[Table1Instance]:
        out = []
        c = 2
        while _two_c(c, 1).expected_order <= bound:
            out += _upto(lambda d: _two_c(c, d), 1, 1, bound)
            c += 1
        return out

    return Table1Row(_TWO_C, recognize, enumerate_)


TABLE1_ROWS: Tuple[Table1Row, ...] = (
    _fixed_row(
        "G(3,3,2), G4, G8, G16 <-> W(k,2,3)",
        [("G(3,3,2)", (2, 1, 2, 1, 3)), ("G4", (3, 1, 2, 1, 3)), ("G8", (4, 1, 2, 1, 3)), ("G16", (5, 1, 2, 1, 3))],
        {"G(3,3,2)": (3, 3)},
    ),
    _fixed_row("G20 <-> W(3,2,5)", [("G20", (3, 1, 2, 1, 5))]),
    _odd_dihedral_row(),
    _fixed_row("G12 <-> W(2,3,4)", [("G12", (2, 1, 3, 1, 4))]),
    _fixed_row("G22 <-> W(2,3,5)", [("G22", (2, 1, 3, 1, 5))]),
    _fixed_row("G5, G10, G18 <-> W_3(k,3,2)", [("G5", (3, 3, 1, 1, 2)), ("G10", (4, 3, 1, 1, 2)), ("G18", (5, 3, 1, 1, 2))]),
    _imprimitive_d_row(),
    _fixed_row("G6, G9, G17 <-> W_2(k,2,3)", [("G6", (3, 2, 1, 1, 3)), ("G9", (4, 2, 1, 1, 3)), ("G17", (5, 2, 1, 1, 3))]),
    _fixed_row("G13 <-> W_2(2,4,3)", [("G13", (2, 2, 2, 1, 3))]),
    _fixed_row("G14 <-> W_3(2,3,4)", [("G14", (2, 3, 1, 1, 4))]),
    _fixed_row("G21 <-> W_3(2,3,5)", [("G21", (2, 3, 1, 1, 5))]),
    _even_dihedral_row(),
    _fixed_row("G7, G11, G19 <-> W_2^3(k,2,3)", [("G7", (3, 2, 1, 3, 1)), ("G11", (4, 2, 1, 3, 1)), ("G19", (5, 2, 1, 3, 1))]),
    _fixed_row("G15 <-> W_2^3(2,4,3)", [("G15", (2, 2, 2, 3, 1))]),
    _two_c_row(),
)


def table1_instances(max_order: int) -> List[Table1Instance]:
    """Every Table 1 instance whose expected order is at most ``max_order``."""
    return [inst for row in TABLE1_ROWS for inst in row.enumerate(max_order)]


def table1_match(p: VcrgParams) -> Optional[Table1Instance]:
    """The Table 1 instance whose parameters are a column permutation of ``p``."""
    readings = column_permutations(p)
    for row in TABLE1_ROWS:
        for q in readings:
            inst = row.recognize(q)
            if inst is not None:
                return inst
    return None


def shephard_todd_name(p: VcrgParams) -> Optional[str]:
    inst = table1_match(p)
    return None if inst is None else inst.name


# -- cross-checks in the regular representation -----------------------------

def reflection_class_data(p: VcrgParams, limits: Optional[EnumerationLimits] = None) -> Optional[dict]:
    """Conjugacy data of the cyclic subgroups generated by ``x1``, ``y``, ``z``.

    Returns the number of conjugacy classes they form and the multiset union,
    over those classes, of the set of element orders met in each; ``None`` if
    the group cannot be enumerated.
    """
    rep = RegularRepresentation.maybe(vcrg_presentation(p), limits)
    if rep is None:
        return None
    gens = [Word.letter(x(1))]
    if p.b > 1:
        gens.append(Word.letter(Y))
    if p.c > 1:
        gens.append(Word.letter(Z))
    classes: List[Tuple[set, int]] = []
    orders: Counter = Counter()
    for w in gens:
        order = rep.element_order(w)
        cls = rep.conjugacy_class(w)
        # the subgroups <g> and <h> are conjugate iff h is conjugate to a
        # generator g^j of <g>
        generators_of = {rep.element(w ** j) for j in range(1, order + 1) if gcd(j, order) == 1}
        merged = False
        for other_cls, other_order in classes:
            if other_order == order and other_cls & generators_of:
                merged = True
                break
        if not merged:
            classes.append((cls, order))
            # the set of orders met in the class: orders of the powers of w
            orders.update({order // gcd(j, order) for j in range(order)})
    return {"classes": len(classes), "orders": sorted(orders.elements())}
