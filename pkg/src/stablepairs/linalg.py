"""Small dense linear algebra over the rationals.

Everything here works on lists of lists of ``Fraction`` (or ``int``) and never
touches floating point.  Matrices in scope are tiny (rank at most a dozen for
lattices, a few hundred for long Hirzebruch-Jung chains) so plain Gaussian
elimination is the right tool.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrixError(ArithmeticError):
    pass


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination with row swaps.

    Rows are kept as maps of their nonzero entries, so banded matrices such
    as long Hirzebruch-Jung chains cost O(n^2) rather than O(n^3).
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    integral = all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
                   for row in rows for x in row)
    if integral:
        a = [{j: int(x) for j, x in enumerate(row) if x} for row in rows]
    else:
        a = [{j: Fraction(x) for j, x in enumerate(row) if x} for row in rows]
    sign = 1
    result = Fraction(1)
    scale = 1  # integer path: rows were multiplied by this much in total
    for i in range(n):
        pivot = next((k for k in range(i, n) if i in a[k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            a[i], a[pivot] = a[pivot], a[i]
            sign = -sign
        row_i = a[i]
        p = row_i[i]
        result *= p
        for k in range(i + 1, n):
            row_k = a[k]
            factor = row_k.get(i)
            if factor is None:
                continue
            if integral:
                g = gcd(p, factor)
                mult, factor = p // g, factor // g
                if mult != 1:
                    scale *= mult
                    for j in row_k:
                        row_k[j] *= mult
            else:
                factor /= p
            for j, v in row_i.items():
                x = row_k.get(j, 0) - factor * v
                if x:
                    row_k[j] = x
                else:
                    row_k.pop(j, None)
            row_k.pop(i, None)
    return sign * result / scale


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` for a square, invertible ``A``."""
    n = len(rows)
    if len(rhs) != n or any(len(row) != n for row in rows):
        raise ValueError("solve expects a square system")
    return solve_rectangular(rows, rhs)


def solve_rectangular(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` where ``A`` is m x k with independent columns.

    Raises ``SingularMatrixError`` when the columns are dependent and
    ``ValueError`` when the system is inconsistent.
    """
    m = len(rows)
    if len(rhs) != m:
        raise ValueError("right-hand side length does not match the matrix")
    k = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    r = 0
    pivots: list[int] = []
    for c in range(k):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix columns are linearly dependent")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        p = aug[r][c]
        aug[r] = [x / p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][k] != 0:
            raise ValueError("inconsistent linear system")
    return [aug[i][k] for i in range(k)]


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(rows, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def inertia(rows: Sequence[Sequence]) -> tuple[int, int, int]:
    """Return ``(n_plus, n_minus, n_zero)`` of a symmetric matrix.

    Uses congruence diagonalisation (Sylvester's law of inertia), so the
    answer is exact.
    """
    a = to_fraction_matrix(rows)
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("inertia requires a symmetric matrix")
    diag: list[Fraction] = []
    size = n
    while size:
        if a[0][0] == 0:
            k = next((i for i in range(1, size) if a[i][i] != 0), None)
            if k is not None:
                _swap(a, 0, k)
            else:
                k = next((i for i in range(1, size) if a[0][i] != 0), None)
                if k is None:
                    diag.append(Fraction(0))
                    a = [row[1:] for row in a[1:]]
                    size -= 1
                    continue
                # replace e_0 by e_0 + e_k; new a00 = 2 a0k != 0
                for j in range(size):
                    a[0][j] += a[k][j]
                for j in range(size):
                    a[j][0] += a[j][k]
        p = a[0][0]
        diag.append(p)
        b = [[a[i][j] - a[i][0] * a[0][j] / p for j in range(1, size)] for i in range(1, size)]
        a = b
        size -= 1
    return (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0), sum(1 for d in diag if d == 0))


def _swap(a: Matrix, i: int, k: int) -> None:
    a[i], a[k] = a[k], a[i]
    for row in a:
        row[i], row[k] = row[k], row[i]


def is_negative_definite(rows: Sequence[Sequence]) -> bool:
    n = len(rows)
    return n > 0 and inertia(rows) == (0, n, 0)
