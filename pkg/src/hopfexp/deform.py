"""Deformations: twisting by a 2-cocycle J, the Drinfeld double, and H x| k<S^2>."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field
from .hopf import (
    AxiomCheck,
    AxiomReport,
    HopfAlgebra,
    algebra_generators,
    direct_power_map,
    _first_mismatch,
)
from .linalg import NoSolution, inverse, solve_linear

__all__ = [
    "InvalidTwist",
    "TwistElement",
    "validate_twist",
    "twist",
    "twist_inverse_element",
    "twisted_sweedler_power",
    "bicharacter_twist",
    "DrinfeldDouble",
    "drinfeld_double",
    "check_quasitriangular",
    "SmashProduct",
    "smash_s2",
]


class InvalidTwist(ValueError):
    def __init__(self, report: AxiomReport):
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"not a twist: {failed}")
        self.report = report


@dataclass
class TwistElement:
    H: HopfAlgebra
    J: np.ndarray
    J_inverse: np.ndarray


# ---------------------------------------------------------------------------
# twists


def twist_inverse_element(H: HopfAlgebra, J: np.ndarray) -> np.ndarray:
    """Solve J X = 1 (x) 1 in H (x) H; raises NoSolution when J is not invertible."""
    F, d = H.field, H.dim
    # left multiplication by J on H (x) H as a d^2 x d^2 matrix
    L = F.einsum("ab,acx,bey->xyce", J, H.mult, H.mult).reshape(d * d, d * d)
    X = solve_linear(F, L, H.one2().reshape(-1))
    return X.reshape(d, d)


def _cocycle_sides(H: HopfAlgebra, J: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    F, u, D = H.field, H.unit, H.comult
    J1 = F.reduce(np.multiply.outer(J, u))  # J (x) 1
    one_J = F.reduce(np.multiply.outer(u, J))  # 1 (x) J
    dJ_left = F.einsum("ab,axy->xyb", J, D)  # (Delta (x) id)(J)
    dJ_right = F.einsum("ab,bxy->axy", J, D)  # (id (x) Delta)(J)
    return H.product3(J1, dJ_left), H.product3(one_J, dJ_right)


def validate_twist(H: HopfAlgebra, J: np.ndarray, J_inverse: np.ndarray | None = None) -> AxiomReport:
    """Invertibility, the left 2-cocycle identity and counit normalisation of J."""
    F, d = H.field, H.dim
    J = F.asarray(J)
    rep = AxiomReport()
    if J.shape != (d, d) or (J_inverse is not None and np.asarray(J_inverse).shape != (d, d)):
        rep.checks.append(AxiomCheck("shape", False, (d, d)))
        return rep
    one = H.one2()
    if J_inverse is None:
        try:
            J_inverse = twist_inverse_element(H, J)
        except NoSolution:
            J_inverse = None
    if J_inverse is None:
        rep.checks.append(AxiomCheck("invertible", False, (0, 0)))
    else:
        Jinv = F.asarray(J_inverse)
        w = _first_mismatch(F, H.product2(J, Jinv), one)
        w = w if w is not None else _first_mismatch(F, H.product2(Jinv, J), one)
        rep.checks.append(AxiomCheck("invertible", w is None, w))
    lhs, rhs = _cocycle_sides(H, J)
    rep.checks.append(AxiomCheck("cocycle", True, None))
    w = _first_mismatch(F, lhs, rhs)
    rep.checks[-1] = AxiomCheck("cocycle", w is None, w)
    left = F.einsum("a,ab->b", H.counit, J)
    right = F.einsum("b,ab->a", H.counit, J)
    w = _first_mismatch(F, left, H.unit)
    w = w if w is not None else _first_mismatch(F, right, H.unit)
    rep.checks.append(AxiomCheck("counit_normalized", w is None, w))
    return rep


def _as_twist(H: HopfAlgebra, J, J_inverse) -> TwistElement:
    rep = validate_twist(H, J, J_inverse)
    if not rep.ok:
        raise InvalidTwist(rep)
    F = H.field
    J = F.asarray(J)
    Jinv = F.asarray(J_inverse) if J_inverse is not None else twist_inverse_element(H, J)
    return TwistElement(H, J, Jinv)


def twist(H: HopfAlgebra, J, J_inverse=None) -> HopfAlgebra:
    """H^J: same algebra, coproduct J Delta(-) J^-1, antipode Q S(-) Q'.

    Q = sum J_k S(J^k) and Q' = sum S((J^-1)_l) (J^-1)^l.
    """
    T = _as_twist(H, J, J_inverse)
    F, M, S = H.field, H.mult, H.antipode
    J, Jinv = T.J, T.J_inverse
    left = F.einsum("ab,ice,acx,bey->ixy", J, H.comult, M, M)
    comult = F.einsum("iab,ce,acx,bey->ixy", left, Jinv, M, M)
    Q = F.einsum("ab,rb,arc->c", J, S, M)
    Qp = F.einsum("ab,ra,rbc->c", Jinv, S, M)
    SJ = F.dot(H.left_mult_matrix(Q), F.dot(H.right_mult_matrix(Qp), S))
    return HopfAlgebra(F, M, H.unit, comult, H.counit, SJ, inverse(F, SJ),
                       basis_names=H.basis_names, name=f"{H.name}^J")


def twisted_sweedler_power(H: HopfAlgebra, J, h: np.ndarray, n: int, J_inverse=None,
                           HJ: HopfAlgebra | None = None) -> np.ndarray:
    """The (n+1)-th Sweedler power of h in H^J, from Z = (1(x)J)(1(x)Delta(h))(J^-1(x)1).

    h^[n+1] = m_{n+2} (id (x) Delta^J_n (x) id)(Z) = sum z1 [n]^J(z2) z3, where
    [n]^J is evaluated by literal expansion of the twisted coproduct, with
    [0]^J = u eps.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    T = _as_twist(H, J, J_inverse)
    F, u, M = H.field, H.unit, H.mult
    HJ = HJ if HJ is not None else twist(H, T.J, T.J_inverse)
    h = F.asarray(h)
    one_J = F.reduce(np.multiply.outer(u, T.J))
    one_dh = F.reduce(np.multiply.outer(u, H.coproduct(h)))
    Jinv_one = F.reduce(np.multiply.outer(T.J_inverse, u))
    Z = H.product3(H.product3(one_J, one_dh), Jinv_one)
    if n == 0:
        inner = H.unit_counit
    else:
        inner = direct_power_map(HJ, maps=[HJ.identity] * n)
    W = F.einsum("abc,yb->ayc", Z, inner)
    return F.einsum("ayc,ayx,xcz->z", W, M, M)


def bicharacter_twist(H: HopfAlgebra, beta) -> np.ndarray:
    """J = sum beta(g, h) d_g (x) d_h for a dual group algebra in the point-indicator basis."""
    F, d = H.field, H.dim
    J = F.zeros((d, d))
    for a in range(d):
        for b in range(d):
            J[a, b] = F.raw(beta(a, b))
    return J


# ---------------------------------------------------------------------------
# Drinfeld double


@dataclass
class DrinfeldDouble:
    """D(H) on H^{*cop} (x) H, basis e^p >< e_q at index p * dim(H) + q."""

    algebra: HopfAlgebra
    base: HopfAlgebra
    embed_H: np.ndarray  # h -> eps >< h
    embed_dual: np.ndarray  # f -> f >< 1
    R_left: np.ndarray  # R = sum_i R_left[i] (x) R_right[i]
    R_right: np.ndarray

    @property
    def R(self) -> np.ndarray:
        return self.algebra.field.einsum("ix,iy->xy", self.R_left, self.R_right)

    def quasitriangularity(self) -> AxiomReport:
        return check_quasitriangular(self.algebra, self.R_left, self.R_right)

    def embedding_report(self) -> AxiomReport:
        return hopf_map_report(self.base, self.algebra, self.embed_H)


def drinfeld_double(H: HopfAlgebra) -> DrinfeldDouble:
    """(f >< h)(f' >< h') = sum <f'_1, S^-1(h_3)> <f'_3, h_1> f f'_2 >< h_2 h'."""
    F, d = H.field, H.dim
    M, D, Sinv = H.mult, H.comult, H.antipode_inverse
    D3 = F.einsum("ixw,wyz->ixyz", D, D)
    M3 = F.einsum("uas,sxt->uaxt", M, M)
    # middle functional of f' = e^t, as coefficients c[q, y, a, t] on e^a
    mid = F.einsum("qxyz,uz,uaxt->qyat", D3, Sinv, M3)
    mult = F.einsum("qyat,rpa,yks->pqtkrs", mid, D, M)
    n = d * d
    mult = mult.reshape(n, n, n)
    comult = F.einsum("uvp,qab->pqvaub", M, D).reshape(n, n, n)
    unit = F.reduce(np.multiply.outer(H.counit, H.unit)).reshape(n)
    counit = F.reduce(np.multiply.outer(H.unit, H.counit)).reshape(n)
    # S_D(e^p >< e_q) = (eps >< S e_q)(S^{-1 T} e^p >< 1)
    X = F.einsum("a,bq->qab", H.counit, H.antipode).reshape(d, n)
    Y = F.einsum("pa,b->pab", Sinv, H.unit).reshape(d, n)
    S = F.einsum("qa,pb,abc->cpq", X, Y, mult).reshape(n, n)
    Xi = F.einsum("a,bq->qab", H.counit, Sinv).reshape(d, n)
    Yi = F.einsum("pa,b->pab", H.antipode, H.unit).reshape(d, n)
    # S_D^-1 is also anti-multiplicative: S_D^-1(f >< h) = (eps >< S^-1 h)(S^T f >< 1)
    Sinv_D = F.einsum("qa,pb,abc->cpq", Xi, Yi, mult).reshape(n, n)
    names = [f"{p}*><{q}" for p in H.basis_names for q in H.basis_names]
    DH = HopfAlgebra(F, mult, unit, comult, counit, S, Sinv_D, basis_names=names, name=f"D({H.name})")
    embed_H = F.einsum("a,bq->abq", H.counit, F.eye(d)).reshape(n, d)
    embed_dual = F.einsum("ap,b->abp", F.eye(d), H.unit).reshape(n, d)
    R_left = F.einsum("a,bi->iab", H.counit, F.eye(d)).reshape(d, n)
    R_right = F.einsum("ai,b->iab", F.eye(d), H.unit).reshape(d, n)
    return DrinfeldDouble(DH, H, embed_H, embed_dual, R_left, R_right)


def check_quasitriangular(A: HopfAlgebra, R_left: np.ndarray, R_right: np.ndarray) -> AxiomReport:
    """The three quasitriangularity identities for R = sum_i R_left[i] (x) R_right[i].

    R Delta(x) = Delta^cop(x) R is checked for x running over algebra
    generators, which suffices since both sides are multiplicative in x, with
    invertibility R (S (x) id)(R) = (S (x) id)(R) R = 1 (x) 1.
    """
    F, M, D = A.field, A.mult, A.comult
    rep = AxiomReport()
    R = F.einsum("ix,iy->xy", R_left, R_right)
    Rinv = F.einsum("ix,iy->xy", F.dot(R_left, A.antipode.T), R_right)
    one = A.one2()
    w = _first_mismatch(F, A.product2(R, Rinv), one)
    w = w if w is not None else _first_mismatch(F, A.product2(Rinv, R), one)
    rep.checks.append(AxiomCheck("R_invertible", w is None, w))
    bad = None
    for g in algebra_generators(F, M, A.unit):
        lhs = A.product2(R, D[g])
        rhs = A.product2(np.transpose(D[g]), R)
        m = _first_mismatch(F, lhs, rhs)
        if m is not None:
            bad = (g,) + m
            break
    rep.checks.append(AxiomCheck("R_intertwines_coproduct", bad is None, bad))
    # products b_i b_j of right legs, and a_i a_j of left legs
    BB = F.einsum("ia,jb,abz->ijz", R_right, R_right, M)
    AA = F.einsum("ia,jb,abz->ijz", R_left, R_left, M)
    # (Delta (x) id) R = R13 R23
    lhs = F.einsum("ix,xpq,iz->pqz", R_left, D, R_right)
    rhs = F.einsum("ix,jy,ijz->xyz", R_left, R_left, BB)
    w = _first_mismatch(F, lhs, rhs)
    rep.checks.append(AxiomCheck("coproduct_first_leg", w is None, w))
    # (id (x) Delta) R = R13 R12
    lhs = F.einsum("ix,iz,zpq->xpq", R_left, R_right, D)
    rhs = F.einsum("ijx,jy,iz->xyz", AA, R_right, R_right)
    w = _first_mismatch(F, lhs, rhs)
    rep.checks.append(AxiomCheck("coproduct_second_leg", w is None, w))
    return rep


def hopf_map_report(H: HopfAlgebra, K: HopfAlgebra, phi: np.ndarray) -> AxiomReport:
    """Does the matrix phi (columns = images of H's basis in K) define a Hopf map H -> K?"""
    F = H.field
    rep = AxiomReport()
    lhs = F.einsum("abc,xc->abx", H.mult, phi)
    rhs = F.einsum("xa,yb,xyz->abz", phi, phi, K.mult)
    w = _first_mismatch(F, lhs, rhs)
    w = w if w is not None else _first_mismatch(F, F.dot(phi, H.unit), K.unit)
    rep.checks.append(AxiomCheck("algebra_map", w is None, w))
    lhs = F.einsum("ijk,xj,yk->ixy", H.comult, phi, phi)
    rhs = F.einsum("xi,xab->iab", phi, K.comult)
    w = _first_mismatch(F, lhs, rhs)
    w = w if w is not None else _first_mismatch(F, F.dot(K.counit, phi), H.counit)
    rep.checks.append(AxiomCheck("coalgebra_map", w is None, w))
    w = _first_mismatch(F, F.dot(K.antipode, phi), F.dot(phi, H.antipode))
    rep.checks.append(AxiomCheck("antipode_map", w is None, w))
    return rep


# ---------------------------------------------------------------------------
# smash product with the group generated by S^2


@dataclass
class SmashProduct:
    result: HopfAlgebra
    d: int
    embed: np.ndarray
    pivot: np.ndarray  # coordinates of 1 x| S^2

    @property
    def pivot_index(self) -> int:
        return int(np.flatnonzero(self.pivot != self.result.field.zero)[0]) if self.pivot.dtype != object \
            else next(i for i, v in enumerate(self.pivot) if v)


def smash_s2(H: HopfAlgebra) -> SmashProduct:
    """H x| k<S^2>, basis e_a x| S^{2i} at index a * d + i with d = ord(S^2).

    (h x| S^2i)(k x| S^2j) = h S^2i(k) x| S^2(i+j); coalgebra H (x) k<S^2>;
    antipode h x| S^2i -> S^{1-2i}(h) x| S^{-2i}.
    """
    F, dH = H.field, H.dim
    d = H.s2_order
    n = dH * d
    P = [H.s2_power(i) for i in range(d)]
    mult = F.zeros((dH, d, dH, d, dH, d))
    comult = F.zeros((dH, d, dH, d, dH, d))
    S = F.zeros((dH, d, dH, d))
    for i in range(d):
        # e_a . S^2i(e_b) = sum_t P_i[t, b] M[a, t, c]
        block = F.einsum("tb,atc->abc", P[i], H.mult)
        for j in range(d):
            mult[:, i, :, j, :, (i + j) % d] = block
        comult[:, i, :, i, :, i] = H.comult
        k = (-i) % d
        S[:, k, :, i] = F.dot(H.antipode, P[k])
    mult = mult.reshape(n, n, n)
    comult = comult.reshape(n, n, n)
    S = S.reshape(n, n)
    unit = F.zeros((dH, d))
    unit[:, 0] = H.unit
    counit = F.zeros((dH, d))
    for i in range(d):
        counit[:, i] = H.counit
    embed = F.zeros((dH, d, dH))
    embed[:, 0, :] = F.eye(dH)
    pivot = F.zeros((dH, d))
    pivot[:, 1 % d] = H.unit
    names = [f"{a}#S^{2 * i}" for a in H.basis_names for i in range(d)]
    result = HopfAlgebra(F, mult, unit.reshape(n), comult, counit.reshape(n), S,
                         basis_names=names, name=f"{H.name}#<S^2>")
    return SmashProduct(result, d, embed.reshape(n, dH), pivot.reshape(n))
