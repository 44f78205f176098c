import numpy as np
import pytest

from hopfexp import constructions as C
from hopfexp import coradical as cr
from hopfexp.fields import make_field
from hopfexp.hopf import tensor
from hopfexp.linalg import column_space, rank

from conftest import C3, F7, Q, algebra
from oracles import wedge_filtration

F2 = make_field("prime", 2)


def span_equal(F, A, B):
    return rank(F, A) == rank(F, B) == rank(F, np.concatenate([A, B], axis=1))


def basis_cols(H, idx):
    return np.stack([H.basis_vector(i) for i in idx], axis=1)


# -- coradical and filtration ----------------------------------------------------


@pytest.mark.parametrize("name", ["QZ6", "QS3", "F7S3", "dQS3", "dF7S3", "dQK4", "F5Z4"])
def test_cosemisimple_members(name):
    H = algebra(name)
    data = cr.coradical_filtration(H)
    assert data.dim == H.dim and data.loewy_length == 1
    assert data.radical_basis.shape[1] == 0


@pytest.mark.parametrize("name,n", [("H4Q", 2), ("H4F3", 2), ("T3C3", 3), ("T3F7", 3)])
def test_pointed_tafts(name, n):
    H = algebra(name)
    data = cr.coradical_filtration(H)
    group = basis_cols(H, [a * n for a in range(n)])  # span{1, g, ..., g^{n-1}}
    assert span_equal(H.field, data.h0_basis, group)
    assert data.loewy_length == n
    dims = [B.shape[1] for B in data.filtration]
    assert dims == [n * (k + 1) for k in range(n)]
    if H.field is not C3:
        # independent: wedge powers of the grouplike span, in sympy
        assert wedge_filtration(H, [group[:, k] for k in range(n)]) == dims
    assert cr.is_dual_chevalley(H)
    assert cr.filtration_multiplicativity(H)


def test_filtration_is_increasing_and_exhausts():
    H = algebra("T3F7")
    filt = cr.coradical_filtration(H).filtration
    for lo, hi in zip(filt, filt[1:]):
        assert span_equal(F7, np.concatenate([lo, hi], axis=1), hi)
        assert hi.shape[1] > lo.shape[1]
    assert filt[-1].shape[1] == H.dim and filt[-2].shape[1] < H.dim


def test_group_algebras_are_dual_chevalley():
    for name in ("QS3", "F5Z4"):
        assert cr.is_dual_chevalley(algebra(name))


def test_counterexample_to_dual_chevalley():
    # in characteristic 2 the radical of F2[S3] is spanned by the sum of the group, which is no coideal
    H = C.dual_group_algebra(C.symmetric_group(3), F2)
    assert cr.coradical(H).dim == 5
    res = cr.is_dual_chevalley(H)
    assert not res and res.witness["reason"] == "product leaves H0"
    assert "product" in res.witness
    with pytest.raises(cr.NotDualChevalley):
        cr.coradical_hopf_algebra(H)


def test_declared_coradical_verification():
    H = algebra("H4Q")
    good = basis_cols(H, [0, 2])
    assert cr.verify_declared_coradical(H, good).ok
    too_small = basis_cols(H, [0])
    rep = cr.verify_declared_coradical(H, too_small)
    assert rep["subcoalgebra"].passed and not rep["maximal"].passed
    not_sub = basis_cols(H, [0, 1])
    assert not cr.verify_declared_coradical(H, not_sub)["subcoalgebra"].passed
    too_big = basis_cols(H, [0, 1, 2, 3])
    assert not cr.verify_declared_coradical(H, too_big)["cosemisimple"].passed


# -- simple subcoalgebras ---------------------------------------------------------


def test_simples_of_small_algebras():
    assert [s.dim for s in cr.simple_decomposition(algebra("QZ2"))] == [1, 1]
    H = algebra("H4Q")
    simples = cr.simple_decomposition(H)
    assert [s.dim for s in simples] == [1, 1]
    assert Q.array_equal(simples[0].basis[:, 0], H.unit)
    assert Q.array_equal(simples[1].basis[:, 0], H.basis_vector(2))


@pytest.mark.parametrize("name", ["dQS3", "dF7S3"])
def test_simples_of_dual_s3(name):
    # irreducible representations of S3 have dimensions 1, 1, 2
    H = algebra(name)
    simples = cr.simple_decomposition(H)
    assert sorted(s.dim for s in simples) == [1, 1, 4]
    total = np.concatenate([s.basis for s in simples], axis=1)
    assert column_space(H.field, total).shape[1] == H.dim
    four = next(s for s in simples if s.dim == 4)
    assert four.split and four.size == 2
    M = cr.basic_multiplicative_matrix(H, four)
    assert M.check(H).ok


def test_grouplike_multiplicative_matrix():
    H = algebra("H4Q")
    g = H.basis_vector(2)
    M = cr.MultiplicativeMatrix.grouplike(H, g)
    assert M.size == 1 and M.check(H).ok
    s = cr.simple_decomposition(H)[1]
    assert Q.array_equal(cr.basic_multiplicative_matrix(H, s).entries, M.entries)


def test_division_algebra_block_is_not_split():
    # (Q^{Z3})* = Q[Z3] = Q + Q(zeta_3): the 2-dimensional simple does not split over Q
    H = C.dual_group_algebra(C.cyclic_group(3), Q)
    simples = cr.simple_decomposition(H)
    assert sorted(s.dim for s in simples) == [1, 2]
    two = next(s for s in simples if s.dim == 2)
    res = cr.basic_multiplicative_matrix(H, two)
    assert isinstance(res, cr.NotSplit) and not res
    # over Q(zeta_3) the same block splits into grouplikes
    K = C.dual_group_algebra(C.cyclic_group(3), C3)
    assert [s.dim for s in cr.simple_decomposition(K)] == [1, 1, 1]


# -- primitive matrices ----------------------------------------------------------


def test_no_nontrivial_primitives_when_cosemisimple():
    H = algebra("QS3")
    for s in cr.simple_decomposition(H):
        Cm = cr.basic_multiplicative_matrix(H, s)
        assert not cr.primitive_space(H, Cm, cr.MultiplicativeMatrix.one(H)).has_nontrivial


@pytest.mark.parametrize("name,n", [("H4Q", 2), ("T3C3", 3), ("T3F7", 3)])
def test_x_is_a_nontrivial_g_one_primitive(name, n):
    H = algebra(name)
    F = H.field
    Cg = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(n))
    P = cr.primitive_space(H, Cg, cr.MultiplicativeMatrix.one(H))
    assert P.has_nontrivial
    x = H.basis_vector(1).reshape(1, 1, -1)
    K = np.stack([B.reshape(-1) for B in P.basis], axis=1)
    assert rank(F, K) == rank(F, np.concatenate([K, x.reshape(-1, 1)], axis=1))
    # Delta(x) = g (x) x + x (x) 1 directly
    want = F.reduce(np.multiply.outer(H.basis_vector(n), H.basis_vector(1))
                    + np.multiply.outer(H.basis_vector(1), H.unit))
    assert F.array_equal(H.coproduct(H.basis_vector(1)), want)


def test_integrals_of_the_coradical():
    H = algebra("H4Q")
    lam = cr.integral_coradical(H)
    assert Q.array_equal(lam.lambda0, Q.reduce(H.unit + H.basis_vector(2)))
    assert lam.check(H)
    H = algebra("T3F7")
    lam = cr.integral_coradical(H)
    assert F7.array_equal(lam.lambda0, F7.reduce(H.unit + H.basis_vector(3) + H.basis_vector(6)))
    H = algebra("QZ2")
    lam = cr.integral_coradical(H)
    assert Q.array_equal(lam.lambda0, Q.reduce(H.unit + H.basis_vector(1)))


@pytest.mark.parametrize("name,n", [("H4Q", 2), ("T3C3", 3)])
def test_integral_pairs_nontrivially(name, n):
    H = algebra(name)
    F = H.field
    lam = cr.integral_coradical(H)
    x = H.basis_vector(1).reshape(1, 1, -1)
    assert cr.lambda_pairing_check(H, x, lam)
    left = H.product(lam.lambda0, H.basis_vector(1))
    assert not F.array_is_zero(left)
    with pytest.raises(ValueError):
        cr.lambda_pairing_check(H, H.unit.reshape(1, 1, -1), lam)


def test_s2_eigen_primitives():
    H = algebra("H4Q")
    Cg = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(2))
    eig = cr.s2_primitive_eigens(H, Cg)
    assert len(eig) == 1
    assert eig[0].q == -1
    assert span_equal(Q, eig[0].X.reshape(-1, 1), H.basis_vector(1).reshape(-1, 1))
    _, _, N = cr.s2_primitive_action(H, Cg)
    assert N == 2

    H = algebra("T3C3")
    Cg = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(3))
    eig = cr.s2_primitive_eigens(H, Cg)
    assert eig and all(e.q.multiplicative_order() == 3 for e in eig)

    H = algebra("QS3")
    for s in cr.simple_decomposition(H):
        Cm = cr.basic_multiplicative_matrix(H, s)
        space, A, _ = cr.s2_primitive_action(H, Cm)
        assert space.dim == 0 or Q.array_equal(A, Q.eye(space.dim))

    with pytest.raises(cr.NotChar0):
        cr.s2_primitive_action(algebra("H4F3"), cr.MultiplicativeMatrix.one(algebra("H4F3")))


@pytest.mark.parametrize("name,n,nmax", [("H4Q", 2, 8), ("T3C3", 3, 9)])
def test_twisted_power_of_primitive(name, n, nmax):
    H = algebra(name)
    Cg = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(n))
    e = cr.s2_primitive_eigens(H, Cg)[0]
    rep = cr.xpower_identity_report(H, Cg, e.X, e.q, nmax)
    assert rep.ok, rep.as_dict()
    names = {c.name for c in rep.checks}
    assert {"antipode_on_X", "s2_on_X", "commuting", "twisted_power_formula", "integral_pairing",
            "nonvanishing"} <= names
    assert cr.xpower_identity_report(H, Cg, e.X, e.q, 1).ok


def test_h4_over_a_cyclotomic_field():
    H = C.taft(2, C3)
    Cg = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(2))
    assert cr.s2_primitive_eigens(H, Cg)[0].q == -1


def test_eigen_decomposition_needs_all_roots():
    # H4 (x) Q[Z3] has exp(H0) = 6 but Q holds only two sixth roots of unity
    H = tensor(algebra("H4Q"), algebra("QZ3"))
    g = H.basis_vector(H.basis_names.index("g⊗1"))
    with pytest.raises(cr.FieldLacksRoots):
        cr.s2_primitive_eigens(H, cr.MultiplicativeMatrix.grouplike(H, g))
