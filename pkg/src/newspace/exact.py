"""Small exact linear algebra over Q.

Matrices are lists of rows (or 2-d numpy arrays) holding ints or Fractions.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    """Scale each row of a rational matrix to integers (rank preserving)."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank(matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    rows = _integer_rows([list(r) for r in matrix])
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        piv = pr[col]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[col]
            if f == 0:
                # Bareiss step with f = 0 is just scaling by piv / prev (exact).
                rows[i] = [(piv * x) // prev for x in ri]
            else:
                rows[i] = [(piv * x - f * y) // prev for x, y in zip(ri, pr)]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def solve(a, b):
    """Solve ``a x = b`` for square nonsingular ``a`` (Fractions in and out).

    ``b`` is a vector.  Raises ``ZeroDivisionError`` on a singular system.
    """
    n = len(a)
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
