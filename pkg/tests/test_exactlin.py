from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from transtoric import exactlin as el
from oracles import invariant_factors, leibniz_det
from strategies import int_matrices, int_matrix, rat_matrices, rationals, unimodular


def is_zero(M):
    return all(x == 0 for row in M for x in row)


@pytest.mark.parametrize("M, r", [
    ([[1, 0], [0, 1]], 2),
    ([[0, 0, 0]] * 3, 0),
    ([[1, 2], [2, 4]], 1),
])
def test_rank_examples(M, r):
    assert el.rank(M) == r


@given(int_matrices(5, 5))
def test_rank_matches_float_rank(M):
    # small integer data: numpy's SVD rank is reliable here
    assert el.rank(M) == np.linalg.matrix_rank(np.array(M, dtype=float))


@given(rat_matrices())
def test_kernel_is_annihilated_and_complementary(M):
    K = el.kernel_basis(M)
    for v in K:
        assert el.matvec(M, v) == [0] * len(M)
    assert el.rank(M) + len(K) == len(M[0])
    if K:
        assert el.rank(K) == len(K)


def test_kernel_examples():
    assert el.kernel_basis([[1, 0], [0, 1]]) == []
    (k,) = el.kernel_basis([[1, 1]])
    assert k[0] == -k[1] != 0
    psi = [[1, -1, 1]]
    K = el.kernel_basis(psi)
    assert len(K) == 2 and all(el.matvec(psi, v) == [0] for v in K)


@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n, n, rationals)))
def test_det_matches_leibniz(M):
    assert el.det(M) == leibniz_det([[Fraction(x) for x in row] for row in M])


@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n, n, rationals)))
def test_inverse(M):
    assume(el.det(M) != 0)
    assert el.matmul(M, el.inverse(M)) == el.identity(len(M))


def test_inverse_singular_raises():
    with pytest.raises(ZeroDivisionError):
        el.inverse([[1, 2], [2, 4]])


def test_solve_examples():
    assert el.solve([[1, 0], [0, 1]], [3, -4]) == [3, -4]
    assert el.solve([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    assert el.solve([[1, 1], [2, 2]], [1, 3]) is None


@given(rat_matrices(), st.lists(rationals, min_size=4, max_size=4))
def test_solve_recovers_image(M, x):
    x = x[:len(M[0])]
    rhs = el.matvec(M, x)
    sol = el.solve(M, rhs)
    assert sol is not None and el.matvec(M, sol) == rhs


def check_hnf_shape(H):
    rows, cols = len(H), len(H[0])
    last = -1
    zero_tail = False
    for j in range(cols):
        col = [H[i][j] for i in range(rows)]
        if not any(col):
            zero_tail = True
            continue
        assert not zero_tail, "zero columns must come last"
        p = next(i for i in range(rows) if col[i])
        assert p > last and col[p] > 0
        for k in range(j):
            assert 0 <= H[p][k] < col[p]
        last = p


def test_hnf_examples():
    H, U = el.hnf([[2, 1], [0, 1]])
    assert H == [[1, 0], [1, 2]]
    assert el.matmul([[2, 1], [0, 1]], U) == H and abs(el.det(U)) == 1
    assert el.hnf([[1, 0], [0, 1]]) == ([[1, 0], [0, 1]], [[1, 0], [0, 1]])
    H, _ = el.hnf([[4], [6]])
    assert H == [[4], [6]]     # a single primitive-direction column: 2 * (2, 3)


@given(int_matrices(4, 5))
def test_hnf_factorization_and_shape(M):
    H, U = el.hnf(M)
    assert el.matmul(M, U) == H
    assert abs(el.det(U)) == 1
    check_hnf_shape(H)


@given(st.integers(1, 4).flatmap(
    lambda c: st.tuples(int_matrix(3, c), unimodular(c))))
def test_hnf_depends_only_on_column_lattice(data):
    M, V = data
    assert el.hnf(M)[0] == el.hnf(el.matmul(M, V))[0]


@pytest.mark.parametrize("M, d", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 0], [0, 0]], [1, 0]),
])
def test_snf_examples(M, d):
    assert el.snf_diag(M) == d


@given(int_matrices(4, 4))
def test_snf_matches_determinantal_divisors(M):
    assert el.snf_diag(M) == invariant_factors(M)


@given(st.tuples(int_matrix(3, 3), unimodular(3), unimodular(3)))
def test_snf_unimodular_invariance(data):
    M, A, B = data
    assert el.snf_diag(el.matmul(el.matmul(A, M), B)) == el.snf_diag(M)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2), min_size=2, max_size=2),
       st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 4))
def test_in_lattice_against_coordinates(cols, a, b, d):
    # for a basis, v is in the lattice iff its coordinates are integers
    B = el.columns_to_matrix(cols, 2)
    assume(el.det(B) != 0)
    v = [Fraction(a * cols[0][i] + b * cols[1][i], d) for i in range(2)]
    coords = el.matvec(el.inverse(B), v)
    assert el.in_lattice(cols, v) == all(c.denominator == 1 for c in coords)


def test_rational_group_membership():
    gens = [[1], [Fraction(5, 7)]]
    assert el.in_lattice(gens, [Fraction(1, 7)])
    assert not el.in_lattice(gens, [Fraction(1, 14)])
    assert el.lattices_equal(gens, [[Fraction(1, 7)]], 1)
    assert not el.lattices_equal([[1]], [[2]], 1)


def test_primitive():
    assert el.primitive([Fraction(2, 3), Fraction(-4, 3)]) == [1, -2]
    assert el.is_primitive([3, 5]) and not el.is_primitive([2, 4])
    with pytest.raises(ValueError):
        el.primitive([0, 0])
