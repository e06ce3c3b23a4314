from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix

from qha.exactlin import (Field, NoSolution, block_diag, complement_rows, default_field, in_row_space, inverse,
                          kernel_basis, left_kernel, rank, row_basis, rref, solve, solve_left)

Q = Field(0)
F5 = Field(5)
F7 = Field(7)


def matrices(p, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(r, c))))


def test_rref_identity():
    r, piv, k = rref(np.eye(2, dtype=np.int64), F5)
    assert r.tolist() == [[1, 0], [0, 1]] and piv == [0, 1] and k == 2


def test_rref_zero():
    r, piv, k = rref(np.zeros((3, 3), dtype=np.int64), F5)
    assert not r.any() and piv == [] and k == 0


def test_rref_gf5_hand_reduction():
    r, piv, k = rref(np.array([[1, 2], [2, 4]]), F5)
    assert r.tolist() == [[1, 2], [0, 0]] and k == 1


def test_kernel_of_identity_and_zero():
    assert kernel_basis(F7.eye(4), F7).shape == (0, 4)
    assert kernel_basis(F7.zeros(3, 3), F7).shape[0] == 3


def test_kernel_gf2():
    k = kernel_basis(np.array([[1, 1]]), Field(2))
    assert k.tolist() == [[1, 1]]


def test_solve_gf7():
    x = solve(np.array([[1, 1], [1, 6]]), np.array([[6], [5]]), F7)
    assert x.tolist() == [[2], [4]]


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(np.array([[1, 1], [1, 1]]), np.array([[0], [1]]), F7)


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        solve(np.eye(2, dtype=np.int64), np.zeros((3, 1), dtype=np.int64), F7)


def test_rational_arithmetic():
    m = Q.array([[1, 2], [3, 4]])
    inv = inverse(m, Q)
    assert (Q.matmul(m, inv) == Q.eye(2)).all()
    assert inv[0, 0] == Fraction(-2)


def test_field_validation():
    with pytest.raises(ValueError):
        Field(4)
    assert Field(0).is_rational and str(Field(0)) == "Q"


def test_default_field_env(monkeypatch):
    monkeypatch.delenv("QHA_FIELD", raising=False)
    assert default_field() == Field(101)
    monkeypatch.setenv("QHA_FIELD", "Q")
    assert default_field().is_rational
    monkeypatch.setenv("QHA_FIELD", "7")
    assert default_field() == F7


@given(matrices(7))
def test_rank_matches_sympy_gf(m):
    expected = DomainMatrix([[GF(7)(int(x)) for x in row] for row in m], m.shape, GF(7)).rank()
    assert rank(m, F7) == expected


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_rank_matches_sympy_rationals(xs):
    m = Q.array(xs).reshape(2, 3)
    assert rank(m, Q) == Matrix(2, 3, xs).rank()


@given(matrices(5))
def test_rref_is_idempotent_and_rank_nullity(m):
    r, piv, k = rref(m, F5)
    again, _, _ = rref(r, F5)
    assert (again == r).all()
    ker = kernel_basis(m, F5)
    assert ker.shape[0] == m.shape[1] - k
    assert not F5.matmul(m, ker.T).any()


@given(matrices(7))
def test_left_kernel_annihilates(m):
    lk = left_kernel(m, F7)
    assert lk.shape[0] == m.shape[0] - rank(m, F7)
    assert not F7.matmul(lk, m).any()


@given(matrices(7), st.integers(0, 2 ** 16))
def test_solve_recovers_consistent_systems(m, seed):
    rng = np.random.default_rng(seed)
    x0 = F7.random(rng, m.shape[1], 2)
    rhs = F7.matmul(m, x0)
    x = solve(m, rhs, F7)
    assert (F7.matmul(m, x) == rhs).all()
    y = solve_left(m.T, rhs.T, F7)
    assert (F7.matmul(y, m.T) == rhs.T).all()


@given(matrices(5))
def test_row_space_helpers(m):
    rb = row_basis(m, F5)
    assert in_row_space(m, rb, F5)
    comp = complement_rows(rb, m.shape[1], F5)
    assert rank(np.concatenate([rb, comp]), F5) == m.shape[1]


def test_block_diag():
    b = block_diag([F5.eye(1), F5.array([[1, 2]])], F5)
    assert b.tolist() == [[1, 0, 0], [0, 1, 2]]
