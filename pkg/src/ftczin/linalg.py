"""Exact dense linear algebra over a coefficient ring.

Pivots must be units of the ring, so over ℤ or ℤ/m the solver reports a
non-invertible pivot instead of silently leaving the ring.
"""

from __future__ import annotations

from itertools import permutations

from .rings import NotInvertibleError, Ring


class SingularMatrixError(NotInvertibleError):
    def __init__(self, matrix, ring: Ring, column: int, pivot=None):
        self.matrix = matrix
        self.column = column
        detail = f"no invertible pivot in column {column}"
        super().__init__(pivot if pivot is not None else ring.zero(), ring, f"{detail} over {ring}")


# permutation-expansion fallback is only used up to this size
ADJUGATE_LIMIT = 7


def identity(n: int, ring: Ring):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def matmul(a, b, ring: Ring):
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), ring.zero()) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def inverse(matrix, ring: Ring):
    """Gauss-Jordan inverse with unit pivots, falling back to the adjugate when
    no unit pivot exists but the determinant is a unit."""
    n = len(matrix)
    work = [list(row) + e for row, e in zip(matrix, identity(n, ring))]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if ring.is_invertible(work[r][col])), None)
        if pivot_row is None:
            # over a non-local ring (e.g. Z/12) a unit determinant need not give a unit pivot
            if n <= ADJUGATE_LIMIT and ring.is_invertible(determinant(matrix, ring)):
                return adjugate_inverse(matrix, ring)
            nonzero = next((work[r][col] for r in range(col, n) if work[r][col] != 0), None)
            raise SingularMatrixError(matrix, ring, col, nonzero)
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv = ring.invert(work[col][col])
        work[col] = [inv * v for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [v - f * p for v, p in zip(work[r], work[col])]
    return [row[n:] for row in work]


def rank(matrix, ring: Ring) -> int:
    """Rank over a field (rationals or prime modulus); pivots are any invertible entry."""
    rows = [list(r) for r in matrix if r]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if ring.is_invertible(rows[i][col])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ring.invert(rows[r][col])
        rows[r] = [inv * v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * p for v, p in zip(rows[i], rows[r])]
        r += 1
    return r


def _sign(perm) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        j, length = start, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(matrix, ring: Ring):
    """Leibniz-formula determinant (small matrices only)."""
    n = len(matrix)
    total = ring.zero()
    for perm in permutations(range(n)):
        term = ring.from_int(_sign(perm))
        for i in range(n):
            term = term * matrix[i][perm[i]]
        total = total + term
    return total


def adjugate_inverse(matrix, ring: Ring):
    """Inverse by the adjugate formula; an independent oracle for :func:`inverse`."""
    n = len(matrix)
    det = determinant(matrix, ring)
    inv_det = ring.invert(det)
    if n == 1:
        return [[inv_det]]
    adj = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(matrix) if k != i]
            cof = determinant(minor, ring)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return [[inv_det * v for v in row] for row in adj]
