from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootlattice.rootsys import build
from rootlattice.zlinalg import (
    DimensionError,
    IntMatrix,
    RatMatrix,
    SingularMatrixError,
    det,
    hnf,
    integer_kernel,
    invert_rational,
    snf,
    solve_in_lattice,
)

from .oracles import gauss_det, minor_gcd_diagonal

A2 = IntMatrix.from_rows([[2, -1], [-1, 2]])


def small_matrices(max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.integers(-5, 5), min_size=m * n, max_size=m * n).map(
                lambda xs: IntMatrix(m, n, xs))))


def is_row_hnf(H):
    last = -1
    zero_seen = False
    for i in range(H.rows):
        row = H.row(i)
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        if zero_seen:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(H[k, p] for k in range(i + 1, H.rows)):
            return False
        if not all(0 <= H[k, p] < row[p] for k in range(i)):
            return False
        last = p
    return True


def test_matrix_basics():
    M = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert M.shape == (2, 3)
    assert M.T.shape == (3, 2)
    assert M[1, 2] == 6
    assert M.column(1) == (2, 5)
    assert M @ (1, 0, -1) == (-2, -2)
    with pytest.raises(DimensionError):
        IntMatrix(2, 2, [1, 2, 3])
    with pytest.raises(DimensionError):
        M @ M
    with pytest.raises(AttributeError):
        M.rows = 3


def test_ratmatrix_is_reduced():
    R = RatMatrix.from_rows([[Fraction(2, 4), Fraction(-3, -6)]])
    assert R[0, 0] == Fraction(1, 2)
    assert R[0, 0].denominator > 0
    with pytest.raises(ValueError):
        R.to_integer()


def test_no_overflow():
    big = IntMatrix.from_rows([[2 ** 70, 1], [1, 2 ** 70]])
    assert det(big) == 2 ** 140 - 1
    assert snf(big).diagonal == (1, 2 ** 140 - 1)


@pytest.mark.parametrize("M", [IntMatrix.identity(2), IntMatrix.zeros(2, 2)])
def test_hnf_trivial(M):
    H, U = hnf(M)
    assert H == M
    assert U == IntMatrix.identity(2)


def test_hnf_a2():
    H, U = hnf(A2)
    assert U @ A2 == H
    assert abs(det(U)) == 1
    assert H == IntMatrix.from_rows([[1, 1], [0, 3]])


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_hnf_properties(M):
    H, U = hnf(M)
    assert U @ M == H
    assert abs(gauss_det(U.tolist())) == 1
    assert is_row_hnf(H)


def test_snf_a2():
    assert snf(A2).diagonal == (1, 3)


def test_snf_d4():
    dec = snf(build("D4").cartan)
    assert dec.diagonal == (1, 1, 2, 2)
    assert minor_gcd_diagonal(build("D4").cartan.tolist()) == [1, 1, 2, 2]


@pytest.mark.parametrize("n", [1, 3, 5])
def test_snf_identity(n):
    assert snf(IntMatrix.identity(n)).diagonal == (1,) * n


def test_snf_zero_1x1():
    assert snf(IntMatrix.from_rows([[0]])).S == IntMatrix.from_rows([[0]])


@settings(max_examples=200, deadline=None)
@given(small_matrices())
def test_snf_properties(M):
    dec = snf(M)
    assert dec.U @ M @ dec.V == dec.S
    assert dec.S.is_diagonal()
    assert abs(det(dec.U)) == 1 and abs(det(dec.V)) == 1
    diag = dec.diagonal
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert list(diag[:len(nz)]) == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100, deadline=None)
@given(small_matrices(4))
def test_snf_matches_minor_oracle(M):
    assert list(snf(M).diagonal) == minor_gcd_diagonal(M.tolist())


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
        lambda xs: IntMatrix(n, n, xs))))
def test_snf_product_is_det(M):
    d = det(M)
    if d:
        prod = 1
        for x in snf(M).diagonal:
            prod *= x
        assert prod == abs(d)


def test_solve_identity():
    assert solve_in_lattice(IntMatrix.identity(3), [4, -1, 0]) == (4, -1, 0)


def test_solve_b3_membership():
    # simple roots of B3 in fundamental-weight coordinates are the columns of C^T
    M = build("B3").cartan.T
    assert solve_in_lattice(M, [1, 0, 0]) is not None
    assert solve_in_lattice(M, [0, 0, 1]) is None
    x = solve_in_lattice(M, [1, 0, 0])
    assert M @ x == (1, 0, 0)


def test_solve_rational_rhs_and_mismatch():
    assert solve_in_lattice(IntMatrix.identity(2), [Fraction(1, 2), 0]) is None
    with pytest.raises(DimensionError):
        solve_in_lattice(IntMatrix.identity(2), [1, 2, 3])


@settings(max_examples=150, deadline=None)
@given(small_matrices(5), st.data())
def test_solve_recovers_solution(M, data):
    x = data.draw(st.lists(st.integers(-6, 6), min_size=M.cols, max_size=M.cols))
    b = M @ x
    y = solve_in_lattice(M, b)
    assert y is not None
    assert M @ y == b


def test_invert_examples():
    assert invert_rational(IntMatrix.identity(3)) == IntMatrix.identity(3).to_rational()
    inv = invert_rational(A2)
    assert inv == RatMatrix.from_rows([[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]])
    assert A2 @ inv == IntMatrix.identity(2).to_rational()
    assert invert_rational(IntMatrix.from_rows([[2]])) == RatMatrix.from_rows([[Fraction(1, 2)]])


def test_invert_singular():
    with pytest.raises(SingularMatrixError):
        invert_rational(IntMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(DimensionError):
        invert_rational(IntMatrix.from_rows([[1, 2]]))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
        lambda xs: IntMatrix(n, n, xs))))
def test_invert_round_trip(M):
    if det(M) == 0:
        with pytest.raises(SingularMatrixError):
            invert_rational(M)
        return
    assert M @ invert_rational(M) == IntMatrix.identity(M.rows).to_rational()
    assert det(M) == gauss_det(M.tolist())


def test_integer_kernel():
    M = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    K = integer_kernel(M)
    assert K.cols == 2
    for j in range(K.cols):
        assert M @ K.column(j) == (0, 0)
