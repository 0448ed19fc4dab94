"""Finite presentations and the constructors for the groups studied here.

Relators are stored as single reduced words.  Multi-sided equalities such as
``A = B = C`` are stored as the relator pair ``A B^-1, B C^-1`` together with
a :class:`Chain` annotation that is used only for display.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from .words import GenId, GenLike, Word, format_word, gen


class ParameterError(ValueError):
    """Raised when a parameter tuple violates one of its constraints."""


@dataclass(frozen=True)
class Chain:
    """Display annotation: ``relators`` are shown as ``sides[0] = sides[1] = ...``."""

    relators: Tuple[int, ...]
    sides: Tuple[Word, ...]


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[GenId, ...]
    relators: Tuple[Word, ...]
    chains: Tuple[Chain, ...] = ()
    # parent-group meaning of each generator, filled in by rewriting
    meaning: Optional[Mapping[GenId, Word]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(gen(g) for g in self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "chains", tuple(self.chains))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator in presentation")
        alphabet = set(self.generators)
        for r in self.relators:
            if not r:
                raise ValueError("empty relator")
            for g in r.generators():
                if g not in alphabet:
                    raise ValueError(f"relator {r} uses undeclared generator {g}")
        for chain in self.chains:
            for i in chain.relators:
                if not 0 <= i < len(self.relators):
                    raise ValueError(f"chain refers to missing relator {i}")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def gen(self, name: GenLike) -> GenId:
        g = gen(name)
        if g not in self.generators:
            raise KeyError(f"{g} is not a generator of this presentation")
        return g

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        """Same generators, extra relators appended (empty words dropped)."""
        extra = [w for w in extra if w]
        return Presentation(self.generators, self.relators + tuple(extra), self.chains)

    def rename(self, mapping: Mapping[GenId, GenLike]) -> "Presentation":
        table = {g: gen(mapping.get(g, g)) for g in self.generators}
        images = {g: Word.letter(h) for g, h in table.items()}

        def move(w: Word) -> Word:
            return w.substitute(images)

        chains = tuple(Chain(c.relators, tuple(move(s) for s in c.sides)) for c in self.chains)
        meaning = None
        if self.meaning is not None:
            meaning = {table[g]: w for g, w in self.meaning.items()}
        return Presentation(
            tuple(table[g] for g in self.generators),
            tuple(move(r) for r in self.relators),
            chains,
            meaning,
        )

    def to_json(self) -> dict:
        data = {
            "generators": [str(g) for g in self.generators],
            "relators": [r.to_json() for r in self.relators],
            "chains": [list(c.relators) for c in self.chains],
            "chain_sides": [[s.to_json() for s in c.sides] for c in self.chains],
        }
        if self.meaning is not None:
            data["meaning"] = {str(g): w.to_json() for g, w in self.meaning.items()}
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "Presentation":
        relators = [Word.from_json(r) for r in data["relators"]]
        chain_idx = data.get("chains", [])
        chain_sides = data.get("chain_sides")
        chains = []
        for pos, idx in enumerate(chain_idx):
            if chain_sides is not None:
                sides = tuple(Word.from_json(s) for s in chain_sides[pos])
            else:
                sides = tuple(relators[i] for i in idx) + (Word(),)
            chains.append(Chain(tuple(idx), sides))
        meaning = None
        if "meaning" in data:
            meaning = {GenId.parse(k): Word.from_json(v) for k, v in data["meaning"].items()}
        return cls(tuple(GenId.parse(g) for g in data["generators"]), tuple(relators), tuple(chains), meaning)


class _Builder:
    def __init__(self, generators: Sequence[GenId]):
        self.generators = tuple(generators)
        self.relators: List[Word] = []
        self.chains: List[Chain] = []

    def torsion(self, items: Sequence[Tuple[GenId, int]]) -> None:
        sides = []
        idx = []
        for g, order in items:
            w = Word.letter(g, order)
            sides.append(w)
            idx.append(self._add(w))
        sides.append(Word())
        self.chains.append(Chain(tuple(i for i in idx if i is not None), tuple(sides)))

    def equal(self, *sides: Word) -> None:
        idx = [self._add(a * ~b) for a, b in zip(sides, sides[1:])]
        self.chains.append(Chain(tuple(i for i in idx if i is not None), tuple(sides)))

    def _add(self, w: Word) -> Optional[int]:
        if not w:
            return None
        self.relators.append(w)
        return len(self.relators) - 1

    def build(self) -> Presentation:
        return Presentation(self.generators, tuple(self.relators), tuple(self.chains))


@dataclass(frozen=True)
class VcrgParams:
    """Parameters ``(k, b, n, c, m)`` of the group ``W_b^c(k, bn, cm)``."""

    k: int
    b: int
    n: int
    c: int
    m: int

    def __post_init__(self):
        for name in ("k", "b", "n", "c", "m"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be a positive integer")
        if self.k < 2:
            raise ParameterError("k >= 2 violated")
        if self.b * self.n < 2:
            raise ParameterError("b*n >= 2 violated")
        if self.c * self.m < 2:
            raise ParameterError("c*m >= 2 violated")
        if gcd(self.n, self.m) != 1:
            raise ParameterError("gcd(n, m) = 1 violated")

    @classmethod
    def parse(cls, text: str) -> "VcrgParams":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 5:
            raise ParameterError(f"expected k,b,n,c,m, got {text!r}")
        return cls(*(int(p) for p in parts))

    @property
    def q(self) -> int:
        return self.m // self.n

    @property
    def r(self) -> int:
        return self.m % self.n

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.k, self.b, self.n, self.c, self.m)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())


@dataclass(frozen=True)
class TriangleParams:
    k: int
    n: int
    m: int

    def __post_init__(self):
        for name in ("k", "n", "m"):
            if getattr(self, name) < 2:
                raise ParameterError(f"{name} >= 2 violated")


S, T, U = GenId("s"), GenId("t"), GenId("u")
Y, Z = GenId("y"), GenId("z")
A, B = GenId("a"), GenId("b")


def x(i: int) -> GenId:
    return GenId("x", i)


def j_group(k: int, n: int, m: int) -> Presentation:
    """``<s, t, u | s^k = t^n = u^m = 1, stu = tus = ust>``."""
    if min(k, n, m) < 1:
        raise ParameterError("k, n, m must be positive")
    builder = _Builder((S, T, U))
    builder.torsion([(S, k), (T, n), (U, m)])
    builder.equal(Word.product([S, T, U]), Word.product([T, U, S]), Word.product([U, S, T]))
    return builder.build()


def triangle_plus(params: TriangleParams) -> Presentation:
    """Rotation subgroup of the (k, n, m) triangle group: ``a^k = b^n = (ba^-1)^m = 1``."""
    builder = _Builder((A, B))
    rotation = Word([(B, 1), (A, -1)]) ** params.m
    builder.relators.extend([Word.letter(A, params.k), Word.letter(B, params.n), rotation])
    builder.chains.append(
        Chain((0, 1, 2), (Word.letter(A, params.k), Word.letter(B, params.n), rotation, Word()))
    )
    return builder.build()


def _run(lo: int, hi: int, y: Optional[GenId] = None) -> Word:
    # x_lo ... x_hi, empty when lo > hi, optionally followed by y
    w = Word.product(x(i) for i in range(lo, hi + 1))
    if y is not None:
        w = w * Word.letter(y)
    return w


def delta_word(p: VcrgParams) -> Word:
    return _run(1, p.n, Y if p.b > 1 else None)


def center_word(p: VcrgParams) -> Word:
    w = delta_word(p) ** p.m
    if p.c > 1:
        w = w * Word.letter(Z, p.n)
    return w


def vcrg_generators(p: VcrgParams) -> Tuple[GenId, ...]:
    gens = [x(i) for i in range(1, p.n + 1)]
    if p.b > 1:
        gens.append(Y)
    if p.c > 1:
        gens.append(Z)
    return tuple(gens)


def vcrg_relation_sides(p: VcrgParams) -> List[Tuple[int, Word, Word]]:
    """``(i, lhs, rhs)`` for every indexed relation ``lhs = rhs``, ascending in ``i``."""
    yz = Word.letter(Y) if p.b > 1 else Word()
    if p.c > 1:
        yz = yz * Word.letter(Z)
    delta = delta_word(p)
    q, r, n = p.q, p.r, p.n
    out = []
    for i in range(1, n + 1):
        if i <= n - r:
            middle = yz * delta ** (q - 1)
            lhs = _run(i + 1, n) * middle * _run(1, i + r)
            rhs = _run(i, n) * middle * _run(1, i + r - 1)
        else:
            middle = yz * delta ** q
            lhs = _run(i + 1, n) * middle * _run(1, i + r - n)
            rhs = _run(i, n) * middle * _run(1, i + r - n - 1)
        out.append((i, lhs, rhs))
    return out


def vcrg_presentation(p: VcrgParams) -> Presentation:
    """Presentation of ``W_b^c(k, bn, cm)`` on ``x_1..x_n`` (plus ``y`` if b > 1, ``z`` if c > 1).

    Relator order: torsion, commutation (c > 1 only), then the two indexed
    families in ascending ``i``.  Each family is displayed as one chain
    ``rhs_1 = lhs_1 = lhs_2 = ...``, which is valid because consecutive
    relations share a side.
    """
    builder = _Builder(vcrg_generators(p))
    torsion = [(x(i), p.k) for i in range(1, p.n + 1)]
    if p.b > 1:
        torsion.append((Y, p.b))
    if p.c > 1:
        torsion.append((Z, p.c))
    builder.torsion(torsion)
    delta = delta_word(p)
    if p.c > 1:
        builder.equal(delta * Word.letter(Z), Word.letter(Z) * delta)
    relations = vcrg_relation_sides(p)
    split = p.n - p.r
    for family in (relations[:split], relations[split:]):
        if family:
            sides = [family[0][2]] + [lhs for _, lhs, _ in family]
            builder.equal(*sides)
    return builder.build()


def toric_presentation(k: int, n: int, m: int) -> Presentation:
    """Presentation of ``W(k, n, m)`` by all equalities of cyclic m-blocks.

    ``x_i ... x_{i+m-1} = x_j ... x_{j+m-1}`` for ``1 <= i < j <= n``,
    indices modulo ``n``.  Displayed as the single chain ``P_1 = ... = P_n``.
    """
    builder = _Builder(tuple(x(i) for i in range(1, n + 1)))
    builder.torsion([(x(i), k) for i in range(1, n + 1)])
    blocks = [Word.product(x((i + j - 1) % n + 1) for j in range(m)) for i in range(1, n + 1)]
    start = len(builder.relators)
    for i in range(n):
        for j in range(i + 1, n):
            builder._add(blocks[i] * ~blocks[j])
    builder.chains.append(Chain(tuple(range(start, len(builder.relators))), tuple(blocks)))
    return builder.build()


def intermediate_presentation(k: int, bn: int, c: int, m: int) -> Presentation:
    """Presentation on ``s, t, z`` of the subgroup of index ``m`` in ``J(k, bn, cm)``.

    ``s^k = t^bn = z^c = 1, stz = zst, tz(st)^(m-1)s = z(st)^m`` with ``z = u^m``.
    """
    if k < 2 or bn < 2 or c * m < 2:
        raise ParameterError("k, bn, cm >= 2 violated")
    builder = _Builder((S, T, Z))
    builder.torsion([(S, k), (T, bn), (Z, c)])
    st = Word.product([S, T])
    z = Word.letter(Z)
    builder.equal(st * z, z * st)
    builder.equal(Word.letter(T) * z * st ** (m - 1) * Word.letter(S), z * st ** m)
    return builder.build()


def render(pres: Presentation, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(pres)
    if fmt == "gap":
        return render_gap(pres)
    if fmt == "json":
        return json.dumps(pres.to_json())
    raise ValueError(f"unknown format {fmt!r}")


def render_text(pres: Presentation) -> str:
    items: List[Tuple[int, str]] = []
    covered = set()
    for chain in pres.chains:
        if not chain.relators:
            continue
        covered.update(chain.relators)
        items.append((min(chain.relators), " = ".join(format_word(s) for s in chain.sides)))
    for i, r in enumerate(pres.relators):
        if i not in covered:
            items.append((i, f"{format_word(r)} = 1"))
    items.sort(key=lambda item: item[0])
    gens = ", ".join(str(g) for g in pres.generators)
    rels = ", ".join(text for _, text in items)
    if rels:
        return f"⟨ {gens} | {rels} ⟩"
    return f"⟨ {gens} | ⟩"


def render_gap(pres: Presentation) -> str:
    names = ", ".join(f'"{g}"' for g in pres.generators)
    rels = ", ".join(format_word(r, times="*") for r in pres.relators)
    return (
        f"F := FreeGroup({names});;\n"
        "AssignGeneratorVariables(F);;\n"
        f"G := F / [ {rels} ];\n"
    )


def parse_presentation(text: str) -> Presentation:
    return Presentation.from_json(json.loads(text))

