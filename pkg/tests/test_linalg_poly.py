from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfexp.fields import make_field
from hopfexp.linalg import (
    NoSolution,
    Singular,
    inverse,
    kernel_basis,
    matrix_multiplicative_order,
    minimal_polynomial,
    rank,
    relative_min_poly,
    solve_linear,
)
from hopfexp.poly import (
    INFINITE,
    CyclotomicCertificate,
    FiniteFieldOrder,
    NonCyclotomicFactor,
    NonSquarefree,
    Polynomial,
    factor,
    factor_prime_field,
    root_of_unity_order,
)

from oracles import order_of_x_mod, sympy_factor_mod

Q = make_field("rational")
F2 = make_field("prime", 2)
F3 = make_field("prime", 3)
F7 = make_field("prime", 7)


def P(F, *coeffs):
    return Polynomial(F, coeffs)


# -- solving ------------------------------------------------------------------


def test_solve_identity():
    x = solve_linear(Q, Q.eye(2), Q.asarray([1, 2]))
    assert list(x) == [1, 2]


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve_linear(Q, Q.zeros((2, 2)), Q.asarray([1, 0]))


def test_solve_mod_seven():
    assert list(solve_linear(F7, F7.asarray([[2]]), F7.asarray([1]))) == [4]


def test_kernels():
    assert kernel_basis(Q, Q.eye(3)).shape == (3, 0)
    K = kernel_basis(Q, Q.zeros((2, 2)))
    assert K.shape == (2, 2) and rank(Q, K) == 2
    K = kernel_basis(F2, F2.asarray([[1, 1]]))
    assert K.shape == (2, 1) and list(K[:, 0]) == [1, 1]


small = st.integers(-4, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_and_kernel_match_sympy(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    A = Q.asarray(rows)
    M = sympy.Matrix(rows)
    assert rank(Q, A) == M.rank()
    K = kernel_basis(Q, A)
    assert K.shape[1] == len(M.nullspace())
    assert Q.array_is_zero(Q.dot(A, K))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_inverse_matches_sympy(n, data):
    rows = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    M = sympy.Matrix(rows)
    if M.det() == 0:
        with pytest.raises(Singular):
            inverse(Q, Q.asarray(rows))
        return
    ref = M.inv()
    got = inverse(Q, Q.asarray(rows))
    assert all(got[i, j] == Fraction(str(ref[i, j])) for i in range(n) for j in range(n))


# -- minimal polynomials and orders ---------------------------------------------


def test_relative_min_polys():
    assert relative_min_poly(Q, Q.eye(2), Q.asarray([1, 0])) == P(Q, -1, 1)
    rot = Q.asarray([[0, -1], [1, 0]])
    assert relative_min_poly(Q, rot, Q.asarray([1, 0])) == P(Q, 1, 0, 1)
    jordan = Q.asarray([[1, 1], [0, 1]])
    assert relative_min_poly(Q, jordan, Q.asarray([0, 1])) == P(Q, 1, -2, 1)


def test_root_of_unity_orders():
    r = root_of_unity_order(P(Q, -1, 1))
    assert r.value == 1 and isinstance(r.evidence, CyclotomicCertificate)
    assert root_of_unity_order(P(Q, 1, -1, 1)).value == 6
    r = root_of_unity_order(P(Q, 1, -2, 1))
    assert r.value is INFINITE and isinstance(r.evidence, NonSquarefree)
    r = root_of_unity_order(P(F2, 1, -2 % 2, 1))
    assert r.value == 2 and isinstance(r.evidence, FiniteFieldOrder)
    r = root_of_unity_order(P(Q, -2, 1))
    assert r.value is INFINITE and isinstance(r.evidence, NonCyclotomicFactor)


@pytest.mark.parametrize("coeffs", [[1, 1, 1], [1, 0, 0, 1], [1, -1, 1, -1, 1], [1, 1, 1, 1], [-1, 0, 0, 0, 1],
                                    [2, 1], [1, 0, 1, 0, 1]])
def test_order_over_q_matches_direct_powering(coeffs):
    r = root_of_unity_order(Polynomial(Q, coeffs))
    want = order_of_x_mod(coeffs, 60)
    assert (r.value if r.finite else None) == want


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_order_over_f7_matches_direct_powering(tail):
    coeffs = [c % 7 for c in tail] + [1]
    if coeffs[0] == 0:
        coeffs[0] = 1
    r = root_of_unity_order(Polynomial(F7, coeffs))
    assert r.finite
    assert r.value == order_of_x_mod(coeffs, 7**7, p=7)


def test_matrix_orders():
    assert matrix_multiplicative_order(Q, Q.eye(3)).value == 1
    assert matrix_multiplicative_order(Q, Q.asarray([[0, -1], [1, 0]])).value == 4
    assert matrix_multiplicative_order(Q, Q.asarray([[1, 1], [0, 1]])).value is INFINITE
    assert minimal_polynomial(F3, F3.asarray([[1, 1], [0, 1]])) == P(F3, 1, 1, 1)


# -- factoring -----------------------------------------------------------------


def _as_tuple(fm):
    return sorted((tuple(int(c) for c in f.coeffs), m) for f, m in fm)


def test_factor_examples_mod_three():
    assert _as_tuple(factor_prime_field(P(F3, -1, 0, 1))) == [((1, 1), 1), ((2, 1), 1)]
    assert _as_tuple(factor_prime_field(P(F3, 1, 0, 1))) == [((1, 0, 1), 1)]
    assert _as_tuple(factor_prime_field(P(F3, 0, -1, 0, 1))) == [((0, 1), 1), ((1, 1), 1), ((2, 1), 1)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11]), st.lists(st.integers(0, 10), min_size=1, max_size=9), st.integers(0, 3))
def test_factoring_matches_sympy(p, tail, seed):
    F = make_field("prime", p)
    coeffs = [c % p for c in tail] + [1]
    got = _as_tuple(factor_prime_field(Polynomial(F, coeffs), seed=seed))
    assert got == sympy_factor_mod(coeffs, p)


def test_factor_over_q_and_cyclotomic():
    fs = factor(P(Q, -1, 0, 0, 1))
    assert sorted(f.degree for f, _ in fs) == [1, 2]
    C3 = make_field("cyclotomic", 3)
    fs = factor(Polynomial(C3, [1, 1, 1]))
    assert sorted(f.degree for f, _ in fs) == [1, 1]
    prod = Polynomial(C3, [1])
    for f, m in fs:
        for _ in range(m):
            prod = prod * f
    assert prod == Polynomial(C3, [1, 1, 1])


def test_big_prime_uses_object_arrays():
    big = make_field("prime", 1_000_003)
    A = big.asarray([[123456, 654321], [1, 2]])
    assert A.dtype == object or A.dtype == np.int64
    Ai = inverse(big, A)
    assert big.array_equal(big.dot(A, Ai), big.eye(2))
