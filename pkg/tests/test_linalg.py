from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from metricgroup import linalg


def matrices(max_dim=4, bound=12):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def square(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=n, max_size=n))


@given(matrices())
def test_snf_is_a_unimodular_diagonalization(m):
    s, u, v = linalg.smith_normal_form(m)
    assert linalg.matmul(linalg.matmul(u, m), v) == s
    assert abs(linalg.determinant(u)) == 1
    assert abs(linalg.determinant(v)) == 1
    r, c = linalg.shape(s)
    assert all(s[i][j] == 0 for i in range(r) for j in range(c) if i != j)
    d = linalg.diagonal(s)
    assert all(x >= 0 for x in d)
    nonzero = [x for x in d if x]
    assert d[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(matrices())
def test_snf_diagonal_matches_sympy(m):
    ours = [x for x in linalg.diagonal(linalg.smith_normal_form(m)[0]) if x]
    ref = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    theirs = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i])
    assert sorted(ours) == theirs


@given(square())
def test_determinant_matches_sympy(m):
    assert linalg.determinant(m) == int(sympy.Matrix(m).det())


@given(square())
def test_inverse_is_exact(m):
    if linalg.determinant(m) == 0:
        return
    inv = linalg.inverse(m)
    prod = linalg.matmul(m, inv)
    assert prod == linalg.identity(len(m))
    assert all(isinstance(x, (int, Fraction)) for row in inv for x in row)


@given(square())
def test_cokernel_order_is_determinant(m):
    det = linalg.determinant(m)
    if det == 0:
        with pytest.raises(ValueError):
            linalg.cokernel(m, len(m))
        return
    factors, proj, lifts = linalg.cokernel(m, len(m))
    assert np.prod(factors, dtype=object) == abs(det)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    for row in m:
        image = [sum(row[i] * proj[i][j] for i in range(len(m))) % f
                 for j, f in enumerate(factors)]
        assert image == [0] * len(factors)
    for j, lift in enumerate(lifts):
        image = [sum(lift[i] * proj[i][k] for i in range(len(m))) % f
                 for k, f in enumerate(factors)]
        assert image == [int(k == j) for k in range(len(factors))]


def test_row_basis_of_rational_rows():
    rows = [[Fraction(1, 2), 0], [0, Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]]
    basis = linalg.row_basis(rows)
    assert len(basis) == 2
    assert abs(linalg.determinant([[int(4 * x) for x in r] for r in basis])) == 4


@given(st.lists(st.lists(st.integers(0, 35), min_size=3, max_size=3), min_size=2, max_size=5),
       st.lists(st.integers(0, 35), min_size=3, max_size=3),
       st.sampled_from([4, 6, 8, 12, 36]))
def test_solve_mod_recovers_planted_solutions(a, x, m):
    a = np.array(a, dtype=np.int64) % m
    b = (a @ np.array(x)) % m
    sol = linalg.solve_mod(a, b, m)
    assert sol is not None
    assert np.array_equal((a @ np.asarray(sol)) % m, b)


def test_solve_mod_reports_inconsistency():
    a = np.array([[2], [0]])
    assert linalg.solve_mod(a, np.array([1, 0]), 4) is None


@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=2, max_size=2),
       st.sampled_from([2, 3, 4, 6]))
def test_kernel_mod_spans_the_solution_lattice(a, m):
    basis = linalg.kernel_mod(a, [m, m])
    for row in basis:
        assert all(sum(row[i] * a[i][j] for i in range(2)) % m == 0 for j in range(2))
    # brute force: every solution in a box lies in the span
    span = {tuple((s * np.array(basis[0]) + t * np.array(basis[1])) % m)
            for s in range(m) for t in range(m)} if len(basis) == 2 else None
    for x in range(m):
        for y in range(m):
            if all((x * a[0][j] + y * a[1][j]) % m == 0 for j in range(2)):
                assert span is None or (x, y) in span
