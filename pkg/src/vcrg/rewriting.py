"""Reidemeister-Schreier rewriting for normal subgroups with cyclic quotient,
and a small deterministic Tietze simplifier.

Setting: ``G = <S | R>``, a distinguished generator ``s`` and a modulus ``k``
such that ``H = <<S \\ {s}, s^k>>`` has ``G/H = {1, s, ..., s^(k-1)}`` cyclic of
order ``k``.  With the transversal ``1, s, ..., s^(k-1)`` the Schreier
generators are the letters ``t_j = s^j t s^-j`` (``0 <= j < k``), except that
``s_j`` is trivial for ``j < k-1`` and ``s_(k-1) = s^k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .cosets import EnumerationLimits, group_order
from .presentations import Presentation
from .words import GenId, GenLike, Word, gen


@dataclass(frozen=True)
class RsSetup:
    pres: Presentation
    distinguished: GenId
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "distinguished", gen(self.distinguished))
        if self.distinguished not in self.pres.generators:
            raise ValueError(f"{self.distinguished} is not a generator of the presentation")
        if self.modulus < 1:
            raise ValueError("modulus must be at least 1")

    def letter(self, g: GenId, j: int) -> GenId:
        """The indexed letter ``g_j`` (index taken mod k)."""
        return GenId(str(g), j % self.modulus)

    def alphabet(self) -> Tuple[GenId, ...]:
        return tuple(self.letter(g, j) for g in self.pres.generators for j in range(self.modulus))


class RewritingError(ValueError):
    """Reidemeister-Schreier precondition failure."""

    def __init__(self, message: str, verdict: Optional[bool] = None):
        super().__init__(message)
        self.verdict = verdict


def cyclic_quotient_check(setup: RsSetup, limits: Optional[EnumerationLimits] = None) -> Optional[bool]:
    """Is ``G / <<S \\ {s}, s^k>>`` of order exactly ``k``?  ``None`` if unknown."""
    s = setup.distinguished
    killers = [Word.letter(g) for g in setup.pres.generators if g != s]
    killers.append(Word.letter(s, setup.modulus))
    order = group_order(setup.pres.with_relators(killers), limits)
    if order is None:
        return None
    return order == setup.modulus


def _rewrite_from(w: Word, setup: RsSetup, coset: int) -> Tuple[Word, int]:
    """Rewrite ``w`` read from the given coset; returns the word and the final coset."""
    s = setup.distinguished
    k = setup.modulus
    out: List[Tuple[GenId, int]] = []
    for g, e in w.letters():
        if e > 0:
            out.append((setup.letter(g, coset), 1))
            if g == s:
                coset = (coset + 1) % k
        else:
            if g == s:
                coset = (coset - 1) % k
            out.append((setup.letter(g, coset), -1))
    return Word(out), coset


def tau_rewrite(relator: Word, setup: RsSetup, shift: int = 0) -> Word:
    """Rewrite ``s^shift . relator . s^-shift`` over the indexed letters."""
    s = Word.letter(setup.distinguished)
    # rewriting commutes with free cancellation, so the reduced conjugate will do
    return _rewrite_from((s ** shift) * relator * (s ** -shift), setup, 0)[0]


def balanced_rewrite(lhs: Word, rhs: Word, setup: RsSetup, shift: int = 0) -> Tuple[Word, Word]:
    """Rewrite the relation ``lhs = rhs`` conjugated by ``s^shift``.

    Both sides must be positive words with the same number of occurrences of
    ``s``; the transversal prefix and suffix then cancel and the relation is
    equivalent to the returned pair read from coset ``shift``.
    """
    if not (lhs.is_positive() and rhs.is_positive()):
        raise ValueError("balanced rewriting needs positive words")
    s = setup.distinguished
    if lhs.exponent_sum(s) != rhs.exponent_sum(s):
        raise ValueError(
            f"unbalanced relation: {s} occurs {lhs.exponent_sum(s)} times on the left "
            f"and {rhs.exponent_sum(s)} times on the right"
        )
    start = shift % setup.modulus
    return _rewrite_from(lhs, setup, start)[0], _rewrite_from(rhs, setup, start)[0]


def letter_meaning(setup: RsSetup) -> Dict[GenId, Word]:
    """Parent-group word for each indexed letter: ``t_j = s^j t s^-j``."""
    s = Word.letter(setup.distinguished)
    k = setup.modulus
    out: Dict[GenId, Word] = {}
    for g in setup.pres.generators:
        for j in range(k):
            if g == setup.distinguished:
                out[setup.letter(g, j)] = s ** k if j == k - 1 else Word()
            else:
                out[setup.letter(g, j)] = (s ** j) * Word.letter(g) * (s ** -j)
    return out


def subgroup_presentation(
    setup: RsSetup, limits: Optional[EnumerationLimits] = None, check: bool = True
) -> Presentation:
    """Presentation of ``H = <<S \\ {s}, s^k>>`` on the indexed letters."""
    if check:
        verdict = cyclic_quotient_check(setup, limits)
        if verdict is not True:
            raise RewritingError(
                f"quotient by <<{setup.distinguished}^{setup.modulus}, other generators>> "
                f"is not cyclic of order {setup.modulus} (verdict: {verdict})",
                verdict,
            )
    k = setup.modulus
    s = setup.distinguished
    relators: List[Word] = [Word.letter(setup.letter(s, i)) for i in range(k - 1)]
    seen = set(relators)
    for r in setup.pres.relators:
        for j in range(k):
            w = tau_rewrite(r, setup, j)
            if w and w not in seen:
                seen.add(w)
                relators.append(w)
    return Presentation(setup.alphabet(), tuple(relators), (), letter_meaning(setup))


class Simplified(NamedTuple):
    presentation: Presentation
    complete: bool  # False when the budget ran out before a fixpoint


def _cyclic_key(w: Word) -> Tuple:
    """Canonical key of ``w`` up to cyclic permutation and inversion."""
    w = w.cyclic_reduce()
    letters = list(w.letters())
    if not letters:
        return ()
    best = None
    for cand in (letters, [(g, -e) for g, e in reversed(letters)]):
        n = len(cand)
        for i in range(n):
            rot = tuple((str(g), g.index is None, e) for g, e in cand[i:] + cand[:i])
            if best is None or rot < best:
                best = rot
    return best


def _dedupe(relators: Sequence[Word]) -> List[Word]:
    out = []
    keys = set()
    for r in relators:
        if not r:
            continue
        key = _cyclic_key(r)
        if key and key not in keys:
            keys.add(key)
            out.append(r)
    return out


def _find_elimination(
    gens: Sequence[GenId], relators: Sequence[Word], protect: Set[GenId]
) -> Optional[Tuple[GenId, int, Word]]:
    """First ``(g, relator index, image)`` with ``g`` eliminable.

    The preferred move uses a relator ``g^e w`` with ``g`` absent from ``w``
    (then ``g = w^-e``); failing that, any relator in which ``g`` occurs once
    is rotated so that it starts with ``g``.
    """
    for literal in (True, False):
        for g in gens:
            if g in protect:
                continue
            for idx, r in enumerate(relators):
                syl = r.syllables
                if literal:
                    if abs(syl[0][1]) == 1 and syl[0][0] == g:
                        rest = Word._raw(syl[1:])
                        if g not in rest.generators():
                            return g, idx, rest ** (-syl[0][1])
                else:
                    places = [i for i, (h, _) in enumerate(syl) if h == g]
                    if len(places) == 1 and abs(syl[places[0]][1]) == 1:
                        i = places[0]
                        e = syl[i][1]
                        rest = Word._raw(syl[i + 1:]) * Word._raw(syl[:i])
                        return g, idx, rest ** (-e)
    return None


def tietze_simplify(
    pres: Presentation, budget: int = 10_000, protect: Iterable[GenLike] = ()
) -> Simplified:
    """Simplify by free reduction, deletion of trivial and repeated relators,
    and elimination of generators, until nothing applies or ``budget`` moves
    have been made.  Generators in ``protect`` are never eliminated.
    """
    protected = {gen(g) for g in protect}
    gens = list(pres.generators)
    relators = _dedupe(pres.relators)
    meaning = dict(pres.meaning) if pres.meaning is not None else None
    moves = 0
    complete = True
    while True:
        found = _find_elimination(gens, relators, protected)
        if found is None:
            break
        if moves >= budget:
            complete = False
            break
        moves += 1
        g, idx, image = found
        images = {h: Word.letter(h) for h in gens}
        images[g] = image
        relators = _dedupe(r.substitute(images) for i, r in enumerate(relators) if i != idx)
        gens.remove(g)
        if meaning is not None:
            meaning.pop(g, None)
    result = Presentation(tuple(gens), tuple(relators), (), meaning)
    return Simplified(result, complete)


def rederive_vcrg(
    k: int, b: int, n: int, c: int, m: int, limits: Optional[EnumerationLimits] = None
) -> Presentation:
    """Two-stage Reidemeister-Schreier descent from ``j_group(k, bn, cm)``.

    First rewrite over ``u`` with modulus ``m`` and simplify (keeping ``s_0``
    and ``t_0``), then rewrite the result over ``t_0`` with modulus ``n`` and
    simplify again.  The group presented is ``W_b^c(k, bn, cm)``.
    """
    from .presentations import S, T, U, j_group

    parent = j_group(k, b * n, c * m)
    first = subgroup_presentation(RsSetup(parent, U, m), limits)
    s0, t0 = GenId(str(S), 0), GenId(str(T), 0)
    first = tietze_simplify(first, protect=(s0, t0)).presentation
    second = subgroup_presentation(RsSetup(first, t0, n), limits)
    return tietze_simplify(second).presentation
