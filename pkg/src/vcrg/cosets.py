"""Todd-Coxeter coset enumeration and the regular representation.

Two strategies share one table and one coincidence routine (a union-find over
coset labels).  HLT processes cosets in order, scanning-and-filling every
relator from each live coset and then filling the rest of its row.  Felsch
defines one entry at a time and pushes each new entry through the cyclic
conjugates of the relators, so it rarely defines more cosets than the index;
it is slower per coset but far leaner on presentations with many generators,
where an HLT row alone defines hundreds of cosets.  Both are deterministic.

Overflow is always reported as "unknown" (``None`` from the query helpers,
:class:`EnumerationOverflow` from :func:`todd_coxeter`); it never means
"infinite".
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .presentations import Presentation
from .words import GenId, Word

DEFAULT_MAX_COSETS = 200_000
STRATEGIES = ("auto", "hlt", "felsch")
# "auto" switches to Felsch above this many generators
FELSCH_RANK = 16


class EnumerationOverflow(Exception):
    """The enumeration exceeded its coset or step limit."""


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_steps: int = 50_000_000
    strategy: str = "auto"

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_steps < 1:
            raise ValueError("enumeration limits must be positive")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {', '.join(STRATEGIES)}")

    def strategy_for(self, rank: int) -> str:
        if self.strategy == "auto":
            return "felsch" if rank > FELSCH_RANK else "hlt"
        return self.strategy

    @classmethod
    def from_env(cls) -> "EnumerationLimits":
        value = os.environ.get("VCRG_MAX_COSETS")
        if value:
            return cls(max_cosets=int(value))
        return cls()


@dataclass
class CosetTable:
    """Complete coset table.  Cosets are ``0 .. size-1``; coset 0 is the subgroup.

    Column ``2*i`` is generator ``i`` and column ``2*i + 1`` its inverse.
    """

    generators: Tuple[GenId, ...]
    rows: List[List[int]]
    subgroup: Tuple[Word, ...] = ()
    complete: bool = True
    _columns: Dict[GenId, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._columns = {g: 2 * i for i, g in enumerate(self.generators)}

    @property
    def size(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def act(self, coset: int, w: Word) -> int:
        """Image of ``coset`` under right multiplication by ``w``."""
        rows = self.rows
        for g, e in w:
            col = self._columns[g]
            if e < 0:
                col += 1
                e = -e
            for _ in range(e):
                coset = rows[coset][col]
        return coset

    def to_json(self) -> dict:
        # exported 1-based to match the usual printed convention
        return {
            "generators": [str(g) for g in self.generators],
            "table": [[c + 1 for c in row] for row in self.rows],
        }


def _columns_of(w: Word, column: Dict[GenId, int]) -> List[int]:
    out = []
    for g, e in w:
        col = column[g]
        if e > 0:
            out.extend([col] * e)
        else:
            out.extend([col ^ 1] * (-e))
    return out


class _Enumerator:
    def __init__(self, ncols: int, limits: EnumerationLimits):
        self.ncols = ncols
        self.limits = limits
        self.table: List[List[int]] = [[-1] * ncols]
        self.parent: List[int] = [0]
        self.live = 1
        self.steps = 0
        # pending (coset, column) entries to propagate; only the Felsch
        # strategy reads it, HLT leaves it as None
        self.deductions: Optional[List[Tuple[int, int]]] = None

    def find(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c: int, col: int) -> None:
        if len(self.table) >= self.limits.max_cosets:
            raise EnumerationOverflow(f"more than {self.limits.max_cosets} cosets")
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.table[c][col] = new
        self.table[new][col ^ 1] = c
        if self.deductions is not None:
            self.deductions.append((c, col))

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        table = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            self.steps += 1
            if self.steps > self.limits.max_steps:
                raise EnumerationOverflow(f"more than {self.limits.max_steps} steps")
            while i <= j:
                nxt = table[f][word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][word[j] ^ 1]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, word[i]))
                return
            self.define(f, word[i])

    def scan_and_deduce(self, c: int, word: Sequence[int]) -> None:
        """Scan without defining: close a one-letter gap or record a coincidence."""
        table = self.table
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise EnumerationOverflow(f"more than {self.limits.max_steps} steps")
        f = b = c
        i, j = 0, len(word) - 1
        while i <= j:
            nxt = table[f][word[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            nxt = table[b][word[j] ^ 1]
            if nxt < 0:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            self.deductions.append((f, word[i]))

    def _merge(self, a: int, b: int, queue: List[int]) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: List[int] = []
        self._merge(a, b, queue)
        pos = 0
        while pos < len(queue):
            dead = queue[pos]
            pos += 1
            row = table[dead]
            for col in range(self.ncols):
                d = row[col]
                if d < 0:
                    continue
                inv = col ^ 1
                if table[d][inv] == dead:
                    table[d][inv] = -1
                mu = self.find(dead)
                nu = self.find(d)
                if table[mu][col] >= 0:
                    self._merge(nu, table[mu][col], queue)
                elif table[nu][inv] >= 0:
                    self._merge(mu, table[nu][inv], queue)
                else:
                    table[mu][col] = nu
                    table[nu][inv] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, col))

    def run(self, relators: List[List[int]], subgroup: List[List[int]]) -> None:
        for w in subgroup:
            self.scan_and_fill(0, w)
        parent = self.parent
        c = 0
        while c < len(self.table):
            if parent[c] == c:
                for rel in relators:
                    self.scan_and_fill(c, rel)
                    if parent[c] != c:
                        break
                else:
                    row = self.table[c]
                    for col in range(self.ncols):
                        if row[col] < 0:
                            self.define(c, col)
            c += 1

    def run_felsch(self, relators: List[List[int]], subgroup: List[List[int]]) -> None:
        # every cyclic conjugate of every relator and its inverse, filed
        # under its first letter
        starting: List[List[Tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for rel in relators:
            inverse = [col ^ 1 for col in reversed(rel)]
            for w in (rel, inverse):
                for r in range(len(w)):
                    conj = tuple(w[r:] + w[:r])
                    if conj not in seen:
                        seen.add(conj)
                        starting[conj[0]].append(conj)
        self.deductions = []
        for w in subgroup:
            self.scan_and_fill(0, w)
        parent, table = self.parent, self.table
        c = 0
        while True:
            self._process_deductions(starting)
            # first live coset with an undefined entry
            while c < len(table) and (parent[c] != c or -1 not in table[c]):
                c += 1
            if c == len(table):
                # coincidences may have reopened entries behind the cursor
                c = next((d for d in range(len(table)) if parent[d] == d and -1 in table[d]), len(table))
                if c == len(table):
                    if self._closed(relators, subgroup):
                        return
                    c = 0
                    continue
            self.define(c, table[c].index(-1))

    def _closed(self, relators: List[List[int]], subgroup: List[List[int]]) -> bool:
        """Final sweep: every relator closes at every live coset and every
        subgroup word at coset 0.  Anything it deduces is left queued."""
        live = self.live
        for w in subgroup:
            self.scan_and_deduce(self.find(0), w)
        for d in range(len(self.table)):
            for rel in relators:
                if self.parent[d] != d:
                    break
                self.scan_and_deduce(d, rel)
        return not self.deductions and live == self.live

    def _process_deductions(self, starting: List[List[Tuple[int, ...]]]) -> None:
        queue = self.deductions
        while queue:
            c, col = queue.pop()
            if self.parent[c] != c:
                continue
            # the conjugates starting with col ^ 1 at the other end are the
            # inverses of these, so one side suffices
            for conj in starting[col]:
                self.scan_and_deduce(c, conj)
                if self.parent[c] != c:
                    break

    def compact(self) -> List[List[int]]:
        live = [c for c in range(len(self.table)) if self.parent[c] == c]
        index = {c: i for i, c in enumerate(live)}
        rows = []
        for c in live:
            row = []
            for d in self.table[c]:
                if d < 0:
                    raise RuntimeError("enumeration finished with an undefined entry")
                row.append(index[self.find(d)])
            rows.append(row)
        return rows


def todd_coxeter(
    pres: Presentation,
    subgroup_gens: Iterable[Word] = (),
    limits: Optional[EnumerationLimits] = None,
) -> CosetTable:
    """Enumerate the right cosets of ``<subgroup_gens>`` in the presented group.

    Raises :class:`EnumerationOverflow` when the limits are exceeded.
    """
    limits = limits or EnumerationLimits()
    column = {g: 2 * i for i, g in enumerate(pres.generators)}
    subgroup = tuple(subgroup_gens)
    for w in subgroup:
        for g in w.generators():
            if g not in column:
                raise ValueError(f"subgroup word {w} uses unknown generator {g}")
    relators = [_columns_of(r.cyclic_reduce() or r, column) for r in pres.relators]
    relators = [r for r in relators if r]
    engine = _Enumerator(2 * len(pres.generators), limits)
    words = [_columns_of(w, column) for w in subgroup if w]
    if limits.strategy_for(len(pres.generators)) == "felsch":
        engine.run_felsch(relators, words)
    else:
        engine.run(relators, words)
    return CosetTable(tuple(pres.generators), engine.compact(), subgroup)


def group_order(pres: Presentation, limits: Optional[EnumerationLimits] = None) -> Optional[int]:
    """Order of the group, or ``None`` when the enumeration overflows."""
    try:
        return todd_coxeter(pres, (), limits).size
    except EnumerationOverflow:
        return None


def normal_closure_index(
    pres: Presentation, words: Iterable[Word], limits: Optional[EnumerationLimits] = None
) -> Optional[int]:
    """Index of the normal closure of ``words``: the order of the quotient group."""
    return group_order(pres.with_relators(words), limits)


Permutation = Tuple[int, ...]


def regular_rep(table: CosetTable) -> Dict[GenId, Permutation]:
    """Right-multiplication permutation of each generator on the elements."""
    if not table.complete:
        raise ValueError("coset table is incomplete")
    if any(table.subgroup):
        raise ValueError("regular representation needs the table over the trivial subgroup")
    return {
        g: tuple(row[2 * i] for row in table.rows) for i, g in enumerate(table.generators)
    }


class RegularRepresentation:
    """A finite presented group realised through its coset table over the trivial subgroup.

    Group elements are identified with cosets: the element ``w`` is the coset
    ``0 . w``.
    """

    def __init__(self, pres: Presentation, limits: Optional[EnumerationLimits] = None):
        self.presentation = pres
        self.table = todd_coxeter(pres, (), limits)
        self._words: Optional[List[Word]] = None

    @classmethod
    def maybe(cls, pres: Presentation, limits: Optional[EnumerationLimits] = None):
        try:
            return cls(pres, limits)
        except EnumerationOverflow:
            return None

    @property
    def order(self) -> int:
        return self.table.size

    def element(self, w: Word) -> int:
        return self.table.act(0, w)

    def is_identity(self, w: Word) -> bool:
        return self.element(w) == 0

    def equal(self, w1: Word, w2: Word) -> bool:
        return self.element(w1) == self.element(w2)

    def permutation(self, w: Word) -> Permutation:
        return tuple(self.table.act(c, w) for c in range(self.order))

    def element_order(self, w: Word) -> int:
        # 0 . w^e == 0 first happens at e = order of w
        c = self.element(w)
        e = 1
        while c != 0:
            c = self.table.act(c, w)
            e += 1
        return e

    def is_central(self, w: Word) -> bool:
        for g in self.presentation.generators:
            gw = Word.letter(g)
            if self.element(w * gw) != self.element(gw * w):
                return False
        return True

    def coset_words(self) -> List[Word]:
        """A word for every element, read off a breadth-first spanning tree."""
        if self._words is None:
            words: List[Optional[Word]] = [None] * self.order
            words[0] = Word()
            frontier = [0]
            gens = self.presentation.generators
            while frontier:
                nxt = []
                for c in frontier:
                    row = self.table.rows[c]
                    for i, g in enumerate(gens):
                        for col, e in ((2 * i, 1), (2 * i + 1, -1)):
                            d = row[col]
                            if words[d] is None:
                                words[d] = words[c] * Word.letter(g, e)
                                nxt.append(d)
                frontier = nxt
            self._words = words  # type: ignore[assignment]
        return self._words  # type: ignore[return-value]

    def multiply(self, a: int, b: int) -> int:
        return self.table.act(a, self.coset_words()[b])

    def inverse(self, a: int) -> int:
        return self.element(~self.coset_words()[a])

    def conjugacy_class(self, w: Word) -> set:
        """Conjugacy class of ``w`` as a set of element labels."""
        words = self.coset_words()
        start = self.element(w)
        seen = {start}
        frontier = [start]
        gens = [Word.letter(g) for g in self.presentation.generators]
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens:
                    c = self.table.act(self.element(~g), words[e])
                    c = self.table.act(c, g)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return seen

    def generated_subgroup(self, words: Sequence[Word]) -> set:
        """Elements of the subgroup generated by ``words``."""
        gens = [w for w in words if w]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for c in frontier:
                for w in gens:
                    d = self.table.act(c, w)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return seen


def element_order(pres: Presentation, w: Word, limits: Optional[EnumerationLimits] = None) -> Optional[int]:
    rep = RegularRepresentation.maybe(pres, limits)
    return None if rep is None else rep.element_order(w)


def is_central(pres: Presentation, w: Word, limits: Optional[EnumerationLimits] = None) -> Optional[bool]:
    rep = RegularRepresentation.maybe(pres, limits)
    return None if rep is None else rep.is_central(w)


def permutation_order(perm: Permutation) -> int:
    seen = [False] * len(perm)
    out = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        c = start
        while not seen[c]:
            seen[c] = True
            c = perm[c]
            length += 1
        out = lcm(out, length)
    return out
