"""Homomorphism checks, the canonical maps between the groups, explicit
isomorphisms, central-extension verification and homomorphism counting."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial, gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .abelian import abelian_image_trivial
from .cosets import EnumerationLimits, RegularRepresentation, permutation_order
from .presentations import (
    A, B, S, T, U, Y, Z,
    Presentation,
    TriangleParams,
    VcrgParams,
    center_word,
    j_group,
    triangle_plus,
    vcrg_presentation,
    x,
)
from .words import GenId, GenLike, Word, gen


@dataclass(frozen=True)
class GenMap:
    """A map on generators, to be checked as a homomorphism ``source -> target``."""

    source: Presentation
    target: Presentation
    images: Mapping[GenId, Word]

    def __post_init__(self):
        images = {gen(g): w for g, w in self.images.items()}
        object.__setattr__(self, "images", images)
        target_gens = set(self.target.generators)
        for g in self.source.generators:
            if g not in images:
                raise ValueError(f"no image given for generator {g}")
            stray = images[g].generators() - target_gens
            if stray:
                raise ValueError(f"image of {g} uses non-target generators {sorted(map(str, stray))}")

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.images)

    def image(self, g: GenLike) -> Word:
        return self.images[gen(g)]


@dataclass(frozen=True)
class HomCheck:
    """Outcome of :func:`check_hom`: ``verified``, ``failed`` or ``unknown``."""

    status: str
    relator: Optional[Word] = None
    conclusive_by: str = ""

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def failed(self) -> bool:
        return self.status == "failed"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.relator is not None:
            out["relator"] = str(self.relator)
        if self.conclusive_by:
            out["by"] = self.conclusive_by
        return out


def check_hom(
    f: GenMap,
    limits: Optional[EnumerationLimits] = None,
    rep: Optional[RegularRepresentation] = None,
) -> HomCheck:
    """Does every source relator map to the identity of the target?

    Decided in the target's regular representation.  If the target cannot be
    enumerated, the images are tested in the abelianization instead: a
    nontrivial abelian image is a conclusive failure, otherwise the answer is
    unknown.
    """
    if rep is None:
        rep = RegularRepresentation.maybe(f.target, limits)
    if rep is not None:
        for r in f.source.relators:
            if not rep.is_identity(f(r)):
                return HomCheck("failed", r, "regular representation")
        return HomCheck("verified", None, "regular representation")
    for r in f.source.relators:
        if not abelian_image_trivial(f.target, f(r)):
            return HomCheck("failed", r, "abelianization")
    return HomCheck("unknown")


def canonical_phi(k: int, n: int, m: int) -> GenMap:
    """``J(k, n, m) -> W+_{k,n,m}``: ``s -> a``, ``t -> b^-1``, ``u -> b a^-1``."""
    a, b = Word.letter(A), Word.letter(B)
    images = {S: a, T: ~b, U: b * ~a}
    return GenMap(j_group(k, n, m), triangle_plus(TriangleParams(k, n, m)), images)


@dataclass(frozen=True)
class CanonicalPi:
    """``J(k, n, m) -> Z/n x Z/m``: ``s -> (0,0)``, ``t -> (1,0)``, ``u -> (0,1)``."""

    n: int
    m: int

    def __post_init__(self):
        if gcd(self.n, self.m) != 1:
            raise ValueError("gcd(n, m) = 1 violated")

    def images(self) -> Dict[GenId, Tuple[int, int]]:
        return {S: (0, 0), T: (1 % self.n, 0), U: (0, 1 % self.m)}

    def __call__(self, w: Word) -> Tuple[int, int]:
        return w.exponent_sum(T) % self.n, w.exponent_sum(U) % self.m

    def order(self, w: Word) -> int:
        """Order of the image in ``Z/n x Z/m`` (cyclic of order nm)."""
        i, j = self(w)
        return (self.n // gcd(i, self.n)) * (self.m // gcd(j, self.m))


def canonical_pi(k: int, n: int, m: int) -> CanonicalPi:
    return CanonicalPi(n, m)


def embedding_map(p: VcrgParams) -> GenMap:
    """``W_b^c(k, bn, cm) -> J(k, bn, cm)``: ``x_i -> t^(i-1) s t^(1-i)``,
    ``y -> t^n``, ``z -> u^m``."""
    s, t, u = Word.letter(S), Word.letter(T), Word.letter(U)
    images: Dict[GenId, Word] = {x(i): t ** (i - 1) * s * t ** (1 - i) for i in range(1, p.n + 1)}
    if p.b > 1:
        images[Y] = t ** p.n
    if p.c > 1:
        images[Z] = u ** p.m
    return GenMap(vcrg_presentation(p), j_group(p.k, p.b * p.n, p.c * p.m), images)


def column_swap_map(k: int, n: int, m: int) -> GenMap:
    """``J(k, m, n) -> J(k, n, m)``: ``s -> s^-1``, ``t -> u^-1``, ``u -> t^-1``."""
    images = {S: Word.letter(S, -1), T: Word.letter(U, -1), U: Word.letter(T, -1)}
    return GenMap(j_group(k, m, n), j_group(k, n, m), images)


def _a(i: int) -> GenId:
    return GenId("a", i)


P_GEN = GenId("p")
Q_GEN = GenId("q")


def swapped_params(p: VcrgParams) -> VcrgParams:
    """Parameters of ``W_c^b(k, cm, bn)``."""
    return VcrgParams(p.k, p.c, p.m, p.b, p.n)


def swapped_presentation(p: VcrgParams) -> Presentation:
    """``W_c^b(k, cm, bn)`` with its generators renamed ``a_i``, ``p``, ``q``."""
    target = vcrg_presentation(swapped_params(p))
    rename: Dict[GenId, GenId] = {x(i): _a(i) for i in range(1, p.m + 1)}
    rename[Y] = P_GEN
    rename[Z] = Q_GEN
    return target.rename({g: rename[g] for g in target.generators})


def conjugation_word(N: int, m: int, with_p: bool = True) -> Word:
    """``(a1...am p)^g a1...ah a_(h+1)^-1 ((a1...am p)^g a1...ah)^-1`` with ``N = gm + h``.

    This is the image of ``u^-N s^-1 u^N`` written in the generators of the
    target group; ``with_p=False`` drops the letter ``p`` (target with ``c = 1``).
    """
    if N < 0 or m < 1:
        raise ValueError("need N >= 0 and m >= 1")
    g, h = divmod(N, m)
    block = Word.product(_a(i) for i in range(1, m + 1))
    if with_p:
        block = block * Word.letter(P_GEN)
    conj = block ** g * Word.product(_a(i) for i in range(1, h + 1))
    return conj * Word.letter(_a(h + 1), -1) * ~conj


def nm_swap_images(p: VcrgParams) -> GenMap:
    """The isomorphism ``W_b^c(k, bn, cm) -> W_c^b(k, cm, bn)`` on generators."""
    target = swapped_presentation(p)
    images: Dict[GenId, Word] = {
        x(i): conjugation_word(i - 1, p.m, with_p=p.c > 1) for i in range(1, p.n + 1)
    }
    if p.b > 1:
        images[Y] = Word.letter(Q_GEN, -1)
    if p.c > 1:
        images[Z] = Word.letter(P_GEN, -1)
    return GenMap(vcrg_presentation(p), target, images)


def is_bijective(f: GenMap, limits: Optional[EnumerationLimits] = None) -> Optional[bool]:
    """For a verified homomorphism of finite groups: equal orders and the
    images generate the target."""
    src = RegularRepresentation.maybe(f.source, limits)
    dst = RegularRepresentation.maybe(f.target, limits)
    if src is None or dst is None:
        return None
    if src.order != dst.order:
        return False
    images = [f.image(g) for g in f.source.generators]
    return len(dst.generated_subgroup(images)) == dst.order


def phi_cokernel_presentation(n: int, m: int) -> Presentation:
    """``<a, b | a, b^-n, (b a^-1)^m>``: the quotient of ``W+`` by the image of
    the virtual subgroup, trivial exactly when ``gcd(n, m) = 1``."""
    a, b = Word.letter(A), Word.letter(B)
    return Presentation((A, B), (a, b ** -n, (b * ~a) ** m))


def center_size(rep: RegularRepresentation) -> int:
    gens = [Word.letter(g) for g in rep.presentation.generators]
    words = rep.coset_words()
    count = 0
    for c in range(rep.order):
        # c is central iff c.g = g.c for every generator g
        if all(rep.table.act(c, g) == rep.table.act(rep.element(g), words[c]) for g in gens):
            count += 1
    return count


def verify_central_extension(p: VcrgParams, limits: Optional[EnumerationLimits] = None) -> Optional[dict]:
    """Check, on a finite instance, that ``Delta`` is central, that
    ``phi(Delta) = 1`` and that ``ord(Delta) * |W+| = |W|``.  Also reports
    whether the whole center is ``<Delta>``.  ``None`` if anything overflows.
    """
    W = RegularRepresentation.maybe(vcrg_presentation(p), limits)
    if W is None:
        return None
    plus = RegularRepresentation.maybe(triangle_plus(TriangleParams(p.k, p.b * p.n, p.c * p.m)), limits)
    if plus is None:
        return None
    delta = center_word(p)
    phi = canonical_phi(p.k, p.b * p.n, p.c * p.m)
    emb = embedding_map(p)
    delta_order = W.element_order(delta)
    report = {
        "params": list(p.as_tuple()),
        "order": W.order,
        "triangle_order": plus.order,
        "delta": str(delta),
        "delta_order": delta_order,
        "delta_central": W.is_central(delta),
        "phi_kills_delta": plus.is_identity(phi(emb(delta))),
        "order_product_ok": delta_order * plus.order == W.order,
    }
    report["center_order"] = center_size(W)
    report["center_is_delta"] = report["delta_central"] and report["center_order"] == delta_order
    report["ok"] = report["delta_central"] and report["phi_kills_delta"] and report["order_product_ok"]
    return report


def verify_conjugacy(p: VcrgParams, limits: Optional[EnumerationLimits] = None) -> Optional[bool]:
    """Are all the ``x_i`` conjugate?  Checked in the regular representation."""
    if p.n == 1:
        return True
    W = RegularRepresentation.maybe(vcrg_presentation(p), limits)
    if W is None:
        return None
    cls = W.conjugacy_class(Word.letter(x(1)))
    return all(W.element(Word.letter(x(i))) in cls for i in range(2, p.n + 1))


DEFAULT_HOMCOUNT_BUDGET = 20_000_000


def hom_count(pres: Presentation, degree: int, budget: int = DEFAULT_HOMCOUNT_BUDGET) -> int:
    """Number of homomorphisms from the presented group to ``Sym(degree)``.

    Exhaustive search over generator images with each relator checked as soon
    as all of its generators are assigned.  Raises ``ValueError`` before
    starting if ``(degree!)^rank`` exceeds ``budget``.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rank = pres.rank
    space = factorial(degree) ** rank
    if space > budget:
        raise ValueError(f"search space ({degree}!)^{rank} = {space} exceeds the budget {budget}")
    if rank == 0:
        return 1
    perms = list(permutations(range(degree)))
    identity = tuple(range(degree))
    position = {g: i for i, g in enumerate(pres.generators)}
    # relators grouped by the last generator they mention
    by_level: List[List[List[Tuple[int, int]]]] = [[] for _ in range(rank)]
    for r in pres.relators:
        syl = [(position[g], e) for g, e in r]
        by_level[max(i for i, _ in syl)].append(syl)

    inverse = {q: _perm_inverse(q) for q in perms}

    def evaluate(syl: Sequence[Tuple[int, int]], images: List[tuple]) -> tuple:
        cur = identity
        for i, e in syl:
            q = images[i] if e > 0 else inverse[images[i]]
            for _ in range(abs(e)):
                cur = tuple(q[c] for c in cur)
        return cur

    images: List[tuple] = [identity] * rank

    def search(level: int) -> int:
        if level == rank:
            return 1
        total = 0
        for q in perms:
            images[level] = q
            if all(evaluate(r, images) == identity for r in by_level[level]):
                total += search(level + 1)
        return total

    return search(0)


def _perm_inverse(q: tuple) -> tuple:
    out = [0] * len(q)
    for i, j in enumerate(q):
        out[j] = i
    return tuple(out)


def image_order(rep: RegularRepresentation, w: Word) -> int:
    """Order of ``w`` computed from its permutation (independent of coset tracing)."""
    return permutation_order(rep.permutation(w))
