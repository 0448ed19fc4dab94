"""Free-group words over symbolic (optionally indexed) generators.

A :class:`Word` is always stored freely reduced, with adjacent powers of the
same generator merged, so equality of words is plain structural equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

_NAME_RE = re.compile(r"^(?P<base>[A-Za-z][A-Za-z0-9_]*?)_?(?P<index>\d+)?$")


@dataclass(frozen=True)
class GenId:
    """A generator symbol such as ``s``, ``x3`` or the indexed letter ``t0``.

    ``base`` may itself end in a digit (letters produced by rewriting an
    already indexed generator); the string form then inserts an underscore
    so that :meth:`parse` stays unambiguous: ``GenId("x1", 2)`` is ``x1_2``.
    """

    base: str
    index: Optional[int] = None

    def __post_init__(self):
        if not self.base:
            raise ValueError("generator base name must be nonempty")
        if self.index is not None and self.index < 0:
            raise ValueError(f"negative generator index {self.index}")

    def __str__(self) -> str:
        if self.index is None:
            return self.base
        sep = "_" if self.base[-1].isdigit() else ""
        return f"{self.base}{sep}{self.index}"

    def __repr__(self) -> str:
        return f"GenId({str(self)!r})"

    @classmethod
    def parse(cls, name: str) -> "GenId":
        match = _NAME_RE.match(name)
        if match is None:
            raise ValueError(f"not a generator name: {name!r}")
        index = match.group("index")
        return cls(match.group("base"), None if index is None else int(index))


GenLike = Union[GenId, str]


def gen(name: GenLike, index: Optional[int] = None) -> GenId:
    if isinstance(name, GenId):
        if index is not None:
            raise ValueError("cannot re-index a GenId")
        return name
    if index is not None:
        return GenId(name, index)
    return GenId.parse(name)


Syllable = Tuple[GenId, int]


class Word:
    """Freely reduced word: a tuple of ``(generator, nonzero exponent)`` syllables."""

    __slots__ = ("_syllables", "_hash")

    def __init__(self, syllables: Iterable[Tuple[GenLike, int]] = ()):
        out: list = []
        for g, e in syllables:
            _push(out, gen(g), int(e))
        self._syllables: Tuple[Syllable, ...] = tuple(out)
        self._hash = None

    @classmethod
    def _raw(cls, syllables: Tuple[Syllable, ...]) -> "Word":
        w = cls.__new__(cls)
        w._syllables = syllables
        w._hash = None
        return w

    @classmethod
    def letter(cls, g: GenLike, e: int = 1) -> "Word":
        return cls([(g, e)])

    @classmethod
    def product(cls, items: Iterable[GenLike]) -> "Word":
        """Positive word spelling the given generators in order."""
        return cls((g, 1) for g in items)

    @property
    def syllables(self) -> Tuple[Syllable, ...]:
        return self._syllables

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self._syllables)

    def letters(self) -> Iterator[Syllable]:
        """Yield the word one letter at a time as ``(generator, +-1)``."""
        for g, e in self._syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self._syllables)

    def __bool__(self) -> bool:
        return bool(self._syllables)

    def generators(self) -> set:
        return {g for g, _ in self._syllables}

    def exponent_sum(self, g: GenId) -> int:
        return sum(e for h, e in self._syllables if h == g)

    def __mul__(self, other: "Word") -> "Word":
        return reduce_concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        out = Word()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self._syllables == other._syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._syllables)
        return self._hash

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self._syllables)

    def cyclic_reduce(self) -> "Word":
        syl = list(self._syllables)
        while len(syl) > 1 and syl[0][0] == syl[-1][0]:
            g, e = syl[0]
            total = e + syl[-1][1]
            syl = syl[1:-1]
            if total:
                return Word._raw(tuple([(g, total)] + syl))
        return Word._raw(tuple(syl))

    def substitute(self, images: Mapping[GenId, "Word"]) -> "Word":
        return substitute(self, images)

    def to_json(self) -> list:
        return [[str(g), e] for g, e in self._syllables]

    @classmethod
    def from_json(cls, data: Sequence) -> "Word":
        return cls((GenId.parse(name), e) for name, e in data)


def _push(out: list, g: GenId, e: int) -> None:
    if e == 0:
        return
    if out and out[-1][0] == g:
        total = out[-1][1] + e
        out.pop()
        if total:
            out.append((g, total))
    else:
        out.append((g, e))


def reduce_concat(w1: Word, w2: Word) -> Word:
    if not w1._syllables:
        return w2
    if not w2._syllables:
        return w1
    out = list(w1._syllables)
    syl = w2._syllables
    i = 0
    # cancel across the seam, then copy the remainder verbatim
    while i < len(syl) and out and out[-1][0] == syl[i][0]:
        g, e = syl[i]
        total = out[-1][1] + e
        out.pop()
        i += 1
        if total:
            out.append((g, total))
            break
    out.extend(syl[i:])
    return Word._raw(tuple(out))


def invert(w: Word) -> Word:
    return Word._raw(tuple((g, -e) for g, e in reversed(w._syllables)))


def substitute(w: Word, images: Mapping[GenId, Word]) -> Word:
    out = Word()
    for g, e in w._syllables:
        try:
            image = images[g]
        except KeyError:
            raise KeyError(f"no image given for generator {g}") from None
        out = out * (image ** e)
    return out


def pi_word(k: int, g0: GenLike, g1: GenLike) -> Word:
    """Alternating positive word ``g0 g1 g0 ...`` of length ``k``."""
    g0, g1 = gen(g0), gen(g1)
    if g0 == g1:
        raise ValueError("pi_word needs two distinct generators")
    if k < 0:
        raise ValueError("length must be nonnegative")
    return Word.product(g0 if i % 2 == 0 else g1 for i in range(k))


def format_word(w: Word, times: str = "") -> str:
    """Compact display such as ``x1x2^-1y^3``; the empty word prints as ``1``."""
    if not w:
        return "1"
    parts = []
    for g, e in w:
        parts.append(str(g) if e == 1 else f"{g}^{e}")
    return times.join(parts)


_TOKEN_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*")


def parse_word(text: str, alphabet: Optional[Iterable[GenLike]] = None) -> Word:
    """Parse ``"s t^2 u^-1"`` (or ``"s*t^2*u^-1"``) into a word.

    Tokens are separated by whitespace, ``*`` or ``.``.  When an alphabet is
    supplied, a token that is not itself a generator name is split greedily
    into known names, so ``"stu"`` parses over ``{s, t, u}``.
    """
    text = text.strip()
    if text in ("", "1"):
        return Word()
    names = None
    if alphabet is not None:
        names = sorted((str(gen(g)) for g in alphabet), key=len, reverse=True)
    syllables = []
    for chunk in re.split(r"[\s*.]+", text):
        if not chunk:
            continue
        pos = 0
        while pos < len(chunk):
            match = _TOKEN_RE.match(chunk, pos)
            if match is None:
                raise ValueError(f"cannot parse word {text!r} near {chunk[pos:]!r}")
            name, exp = match.group(1), match.group(2)
            if names is not None and name not in names:
                pieces = _split_greedy(name, names)
                if pieces is None:
                    raise ValueError(f"unknown generator in {name!r}")
                for piece in pieces[:-1]:
                    syllables.append((GenId.parse(piece), 1))
                name = pieces[-1]
            syllables.append((GenId.parse(name), int(exp) if exp is not None else 1))
            pos = match.end()
    return Word(syllables)


def _split_greedy(token: str, names: Sequence[str]) -> Optional[list]:
    if not token:
        return []
    for name in names:
        if token.startswith(name):
            rest = _split_greedy(token[len(name):], names)
            if rest is not None:
                return [name] + rest
    return None
