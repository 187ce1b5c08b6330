"""Exact linear algebra over the rationals for integral constraint systems.

Elimination is fraction-free (Bareiss); rationals only appear during the
final back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

IntVector = Sequence[int]


def bareiss_echelon(rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Fraction-free row echelon form.

    Returns ``(matrix, pivots)`` where ``pivots[k]`` is the pivot column of
    row ``k``. Only the first ``ncols`` columns are eligible as pivots.
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return m, []
    width = len(m[0])
    if ncols is None:
        ncols = width
    pivots: list[int] = []
    prev = 1
    k = 0
    for c in range(ncols):
        if k == len(m):
            break
        p = next((i for i in range(k, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[k], m[p] = m[p], m[k]
        piv = m[k][c]
        for i in range(k + 1, len(m)):
            mic = m[i][c]
            row_i, row_k = m[i], m[k]
            for j in range(c, width):
                row_i[j] = (piv * row_i[j] - mic * row_k[j]) // prev
            # entries left of c are already zero in rows below k
        prev = piv
        pivots.append(c)
        k += 1
    return m, pivots


def rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return len(bareiss_echelon(rows)[1])


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set ``basepoint + span(directions)``.

    ``free`` lists the coordinates used as parameters: direction ``k`` has a
    1 in coordinate ``free[k]`` and 0 in the other free coordinates, so the
    projection onto the free coordinates is a bijection onto the subspace.
    """

    n: int
    basepoint: tuple
    directions: tuple
    free: tuple

    @property
    def dim(self) -> int:
        return len(self.directions)

    def lies_in(self, a: IntVector, b: int) -> bool:
        """True iff the whole subspace lies in the hyperplane ``a.x = b``."""
        if sum(ai * pi for ai, pi in zip(a, self.basepoint)) != b:
            return False
        return all(sum(ai * di for ai, di in zip(a, d)) == 0 for d in self.directions)

    def meets(self, a: IntVector, b: int) -> bool:
        return self.lies_in(a, b) or any(
            sum(ai * di for ai, di in zip(a, d)) != 0 for d in self.directions
        )

    def point(self, params: Sequence) -> tuple:
        out = list(self.basepoint)
        for u, d in zip(params, self.directions):
            for i, di in enumerate(d):
                out[i] += u * di
        return tuple(out)


def intersect_affine(n: int, constraints: Sequence[tuple[IntVector, int]]) -> AffineSubspace | None:
    """Solve ``{a.x = b}`` exactly; return ``None`` when infeasible."""
    rows = []
    for a, b in constraints:
        if len(a) != n:
            raise ValueError(f"normal {list(a)} has length {len(a)}, expected {n}")
        if not any(a):
            raise ValueError("zero normal vector")
        rows.append(list(a) + [b])
    ech, pivots = bareiss_echelon(rows, ncols=n)
    for row in ech[len(pivots):]:
        if row[n]:
            return None
    free = [j for j in range(n) if j not in pivots]
    # back-substitution: x_pivot = (rhs - sum row[j] x_j) / row[pivot]
    base = [Fraction(0)] * n
    for k in reversed(range(len(pivots))):
        c = pivots[k]
        row = ech[k]
        s = Fraction(row[n]) - sum(row[j] * base[j] for j in range(c + 1, n))
        base[c] = s / row[c]
    directions = []
    for f in free:
        d = [Fraction(0)] * n
        d[f] = Fraction(1)
        for k in reversed(range(len(pivots))):
            c = pivots[k]
            row = ech[k]
            s = -sum(row[j] * d[j] for j in range(c + 1, n))
            d[c] = Fraction(s) / row[c]
        directions.append(tuple(d))
    return AffineSubspace(n, tuple(base), tuple(directions), tuple(free))
