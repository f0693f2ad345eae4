from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from stablepairs import linalg

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_sympy(m):
    assert linalg.det(m) == Fraction(int(sympy.Matrix(m).det()))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.lists(small, min_size=n, max_size=n))))
def test_solve_matches_sympy(data):
    m, rhs = data
    M = sympy.Matrix(m)
    if M.det() == 0:
        with pytest.raises(linalg.SingularMatrixError):
            linalg.solve(m, rhs)
        return
    expected = M.LUsolve(sympy.Matrix(rhs))
    got = linalg.solve(m, rhs)
    assert got == [Fraction(int(x.p), int(x.q)) for x in expected]


@given(st.integers(1, 4).flatmap(square))
def test_inverse_times_matrix_is_identity(m):
    if sympy.Matrix(m).det() == 0:
        return
    inv = linalg.inverse(m)
    n = len(m)
    prod = [[sum(Fraction(m[i][k]) * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(square))
def test_inertia_matches_eigenvalue_signs(m):
    sym = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    eig = np.linalg.eigvalsh(np.array(sym, dtype=float))
    tol = 1e-7
    expected = (int((eig > tol).sum()), int((eig < -tol).sum()), int((abs(eig) <= tol).sum()))
    assert linalg.inertia(sym) == expected


def test_negative_definite_chain():
    assert linalg.is_negative_definite([[-3, 1], [1, -3]])
    assert not linalg.is_negative_definite([[-1, 1], [1, -1]])
    assert not linalg.is_negative_definite([[1]])


def test_rectangular_solve_unique_and_inconsistent():
    rows = [[1, 0], [0, 1], [1, 1]]
    assert linalg.solve_rectangular(rows, [2, 3, 5]) == [2, 3]
    with pytest.raises(ValueError):
        linalg.solve_rectangular(rows, [2, 3, 6])
    with pytest.raises(linalg.SingularMatrixError):
        linalg.solve_rectangular([[1, 2], [2, 4]], [1, 2])


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        linalg.det([[1, 2]])


@given(st.integers(1, 4).flatmap(square), st.integers(1, 5))
def test_det_of_rational_matrix_matches_sympy(m, den):
    frac = [[Fraction(x, den) for x in row] for row in m]
    expected = sympy.Matrix(m).det() / sympy.Integer(den) ** len(m)
    assert linalg.det(frac) == Fraction(int(expected.p), int(expected.q))
    assert linalg.det([[Fraction(x) for x in row] for row in m]) == linalg.det(m)
