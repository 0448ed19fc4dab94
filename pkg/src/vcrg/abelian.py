"""Smith normal form over the integers and abelianization of presentations."""

from __future__ import annotations

from typing import List, Sequence

from .presentations import Presentation
from .words import Word

IntMatrix = List[List[int]]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith normal form: ``min(rows, cols)`` entries
    ``d1 | d2 | ...``, zeros last.

    Pivots are chosen with the smallest nonzero absolute value (first in
    row-major order on ties).  Python integers keep everything exact.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    diag: List[int] = []
    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    v = a[i][j]
                    if v and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                diag.extend([0] * (min(rows, cols) - t))
                return diag
            pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                f = a[i][t] // p
                if f:
                    ai, at = a[i], a[t]
                    for j in range(t, cols):
                        ai[j] -= f * at[j]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                f = a[t][j] // p
                if f:
                    for i in range(t, rows):
                        a[i][j] -= f * a[i][t]
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            # the pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                diag.append(abs(p))
                break
            for j in range(t, cols):
                a[t][j] += a[bad][j]
    return diag


def exponent_matrix(pres: Presentation) -> IntMatrix:
    """Relator-by-generator exponent-sum matrix."""
    return [[r.exponent_sum(g) for g in pres.generators] for r in pres.relators]


def abelianize(pres: Presentation) -> List[int]:
    """Invariant factors of the abelianization, 1s dropped, zeros for free rank.

    ``Z/6 + Z`` is ``[6, 0]``; the trivial group is ``[]``.
    """
    gens = pres.rank
    diag = smith_normal_form(exponent_matrix(pres)) if pres.relators else []
    diag = diag + [0] * (gens - len(diag))
    return [d for d in diag if d != 1]


def abelian_order(pres: Presentation):
    """Order of the abelianization, or ``None`` when it is infinite."""
    out = 1
    for d in abelianize(pres):
        if d == 0:
            return None
        out *= d
    return out


def abelian_image_trivial(pres: Presentation, w: Word) -> bool:
    """Is the image of ``w`` trivial in the abelianization of ``pres``?

    ``w`` is trivial iff its exponent vector lies in the relator lattice,
    which holds iff appending it as a relator leaves the invariants unchanged.
    """
    return abelianize(pres) == abelianize(pres.with_relators([w]))
