"""Finite-dimensional Hopf algebras given by structure constants.

Conventions (0-based basis indices):

* ``mult[a, b, c]``   coefficient of e_c in e_a e_b
* ``comult[i, j, k]`` coefficient of e_j (x) e_k in Delta(e_i)
* linear maps are matrices whose column i holds the image of e_i
* an element of H (x) H is a ``(dim, dim)`` array of coefficients of e_j (x) e_k
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fields import Field
from .linalg import (
    DimensionMismatch,
    Echelon,
    Singular,
    inverse,
    matrix_multiplicative_order,
    relative_min_poly,
    solve_linear,
)
from .poly import INFINITE

__all__ = [
    "HopfAlgebra",
    "AxiomViolation",
    "NoAntipode",
    "AxiomCheck",
    "AxiomReport",
    "verify_axioms",
    "derive_antipode",
    "algebra_generators",
    "convolution",
    "twisted_power_map",
    "direct_power_map",
    "dual",
    "opposite",
    "coopposite",
    "tensor",
    "sub_hopf_algebra",
    "same_structure",
]


class NoAntipode(ArithmeticError):
    """The identity map is not convolution-invertible: the bialgebra is not Hopf."""


class AxiomViolation(ValueError):
    def __init__(self, report: "AxiomReport"):
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"Hopf axioms fail: {failed}")
        self.report = report


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple | None = None

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, (tuple, list)):
            w = [int(v) for v in w]
        return {"name": self.name, "status": "pass" if self.passed else "fail", "witness": w}


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_for_failure(self) -> None:
        if not self.ok:
            raise AxiomViolation(self)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


class HopfAlgebra:
    """Structure constants of a Hopf algebra with bijective antipode.

    Construction does not verify the axioms (see :func:`verify_axioms`); the
    antipode is derived when omitted, and its inverse computed as a matrix
    inverse.
    """

    def __init__(
        self,
        field: Field,
        mult,
        unit,
        comult,
        counit,
        antipode=None,
        antipode_inverse=None,
        basis_names: Sequence[str] | None = None,
        name: str | None = None,
    ):
        F = field
        self.field = F
        self.mult = F.asarray(mult)
        self.unit = F.asarray(unit)
        self.comult = F.asarray(comult)
        self.counit = F.asarray(counit)
        d = self.unit.shape[0]
        for arr, shape, label in (
            (self.mult, (d, d, d), "mult"),
            (self.comult, (d, d, d), "comult"),
            (self.counit, (d,), "counit"),
        ):
            if arr.shape != shape:
                raise DimensionMismatch(f"{label} has shape {arr.shape}, expected {shape}")
        self.dim = d
        self.basis_names = list(basis_names) if basis_names is not None else [f"e{i}" for i in range(d)]
        if len(self.basis_names) != d:
            raise DimensionMismatch("basis_names length differs from dim")
        self.name = name or "H"
        if antipode is None:
            antipode = derive_antipode(F, self.mult, self.unit, self.comult, self.counit)
        self.antipode = F.asarray(antipode)
        if self.antipode.shape != (d, d):
            raise DimensionMismatch("antipode must be dim x dim")
        if antipode_inverse is None:
            try:
                antipode_inverse = inverse(F, self.antipode)
            except Singular as exc:
                raise NoAntipode("antipode is not bijective") from exc
        self.antipode_inverse = F.asarray(antipode_inverse)
        for arr in (self.mult, self.unit, self.comult, self.counit, self.antipode, self.antipode_inverse):
            arr.setflags(write=False)

    def __repr__(self):
        return f"<HopfAlgebra {self.name} dim={self.dim} over {self.field!r}>"

    # -- elements ---------------------------------------------------------------
    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, coeffs) -> np.ndarray:
        return self.field.asarray(coeffs)

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.field.einsum("a,b,abc->c", x, y, self.mult)

    def coproduct(self, x: np.ndarray) -> np.ndarray:
        return self.field.einsum("i,ijk->jk", x, self.comult)

    def epsilon(self, x: np.ndarray):
        return self.field.raw(self.field.dot(self.counit, x))

    def apply(self, f: np.ndarray, x: np.ndarray) -> np.ndarray:
        return self.field.dot(f, x)

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        return self.field.einsum("a,abc->cb", x, self.mult)

    def right_mult_matrix(self, y: np.ndarray) -> np.ndarray:
        return self.field.einsum("b,abc->ca", y, self.mult)

    def product2(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Product in the algebra H (x) H."""
        return self.field.einsum("ab,ce,acx,bey->xy", X, Y, self.mult, self.mult)

    def product3(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Product in H (x) H (x) H."""
        F, M = self.field, self.mult
        T = F.einsum("abc,adx->bcdx", X, M)
        T = F.einsum("bcdx,def->bcxef", T, Y)
        T = F.einsum("bcxef,bey->cxfy", T, M)
        return F.einsum("cxfy,cfz->xyz", T, M)

    def one2(self) -> np.ndarray:
        return np.multiply.outer(self.unit, self.unit)

    def power(self, x: np.ndarray, n: int) -> np.ndarray:
        acc = self.unit.copy()
        for _ in range(n):
            acc = self.product(acc, x)
        return acc

    # -- distinguished maps --------------------------------------------------------
    @functools.cached_property
    def identity(self) -> np.ndarray:
        return self.field.eye(self.dim)

    @functools.cached_property
    def unit_counit(self) -> np.ndarray:
        """The map h -> eps(h) 1, the unit of the convolution algebra."""
        return self.field.reduce(np.multiply.outer(self.unit, self.counit))

    @functools.cached_property
    def s2(self) -> np.ndarray:
        return self.field.dot(self.antipode, self.antipode)

    @functools.cached_property
    def s2_order(self) -> int:
        res = matrix_multiplicative_order(self.field, self.s2)
        if res.value is INFINITE:  # pragma: no cover - impossible in finite dimension
            raise ArithmeticError("S^2 has infinite order")
        return res.value

    def s2_power(self, i: int) -> np.ndarray:
        """S^(2i) as a matrix; i is reduced modulo the order of S^2."""
        k = i % self.s2_order
        return self._s2_powers[k]

    @functools.cached_property
    def _s2_powers(self) -> list[np.ndarray]:
        out = [self.identity]
        for _ in range(1, self.s2_order):
            out.append(self.field.dot(self.s2, out[-1]))
        return out

    def s_power(self, k: int) -> np.ndarray:
        """S^k for any integer k."""
        base = self.antipode if k >= 0 else self.antipode_inverse
        acc = self.identity
        for _ in range(abs(k)):
            acc = self.field.dot(base, acc)
        return acc

    def is_involutory(self) -> bool:
        return self.field.array_equal(self.s2, self.identity)

    def step(self, P: np.ndarray) -> np.ndarray:
        """The map h -> sum h_(1) P(h_(2)), i.e. the convolution id * P."""
        return self.field.einsum("ijk,bk,jbc->ci", self.comult, P, self.mult)

    @functools.cached_property
    def generators(self) -> list[int]:
        return algebra_generators(self.field, self.mult, self.unit)

    @functools.cached_property
    def cogenerators(self) -> list[int]:
        """Basis indices of dual-basis vectors generating the dual algebra."""
        return algebra_generators(self.field, np.transpose(self.comult, (1, 2, 0)), self.counit)

    def is_commutative(self) -> bool:
        return self.field.array_equal(self.mult, np.transpose(self.mult, (1, 0, 2)))

    def is_cocommutative(self) -> bool:
        return self.field.array_equal(self.comult, np.transpose(self.comult, (0, 2, 1)))


# ---------------------------------------------------------------------------
# generators and verification


def algebra_generators(F: Field, mult: np.ndarray, unit: np.ndarray) -> list[int]:
    """Basis indices whose elements generate the algebra (greedy, in index order).

    The subalgebra is grown from 1 by right multiplication with the chosen
    generators, i.e. it is spanned by left-nested words in them.
    """
    d = unit.shape[0]
    ech = Echelon(F, d)
    ech.add(unit)
    vectors = [unit]
    gens: list[int] = []
    right = {}

    def close(frontier: list[np.ndarray]) -> None:
        # breadth-first: multiply the newest layer by every generator at once
        while frontier:
            V = np.stack(frontier, axis=1)
            frontier = []
            for g in gens:
                W = F.dot(right[g], V)
                for k in range(W.shape[1]):
                    if ech.add(W[:, k]) is None:
                        vectors.append(W[:, k])
                        frontier.append(W[:, k])

    while ech.count < d:
        for i in range(d):
            e = F.zeros(d)
            e[i] = F.one
            if ech.express(e) is None:
                break
        gens.append(i)
        right[i] = F.reduce(mult[:, i, :].T.copy())  # column a = e_a e_i
        close(list(vectors))
    return gens


def _first_mismatch(F: Field, A: np.ndarray, B: np.ndarray):
    diff = F.reduce(A - B)
    if diff.dtype == object:
        for idx, v in np.ndenumerate(diff):
            if v:
                return idx
        return None
    nz = np.argwhere(diff != 0)
    return tuple(int(t) for t in nz[0]) if len(nz) else None


def _check_associative(F: Field, M: np.ndarray, gens: Sequence[int]):
    for g in gens:
        lhs = F.einsum("bx,xce->bce", M[g], M)
        rhs = F.einsum("bcx,xe->bce", M, M[g])
        bad = _first_mismatch(F, lhs, rhs)
        if bad is not None:
            return (g, bad[0], bad[1])
    return None


def _delta_product_with_all(F: Field, X: np.ndarray, D: np.ndarray, M: np.ndarray) -> np.ndarray:
    """[b, x, y] = coefficients of X . Delta(e_b) in H (x) H."""
    d = X.shape[0]
    if X.dtype == object:
        nz = [(p, q) for (p, q), v in np.ndenumerate(X) if v]
    else:
        nz = [tuple(t) for t in np.argwhere(X != 0)]
    if 2 * len(nz) < d:
        out = F.zeros((d, d, d))
        for p, q in nz:
            term = F.einsum("bce,cx,ey->bxy", D, M[p], M[q])
            out = F.reduce(out + X[p, q] * term)
        return out
    return F.einsum("pq,bce,pcx,qey->bxy", X, D, M, M)


def verify_axioms(H: HopfAlgebra) -> AxiomReport:
    """Exact check of every Hopf algebra axiom, with a basis-index witness on failure.

    Associativity and multiplicativity of the coproduct are checked with the
    first argument running over algebra generators, coassociativity over
    generators of the dual algebra; by induction on words this is equivalent
    to checking all basis triples.
    """
    F, M, u, D, eps, S = H.field, H.mult, H.unit, H.comult, H.counit, H.antipode
    d = H.dim
    I = H.identity
    rep = AxiomReport()

    def add(name, witness):
        rep.checks.append(AxiomCheck(name, witness is None, witness))

    left_unit = F.einsum("a,abc->cb", u, M)
    right_unit = F.einsum("b,abc->ca", u, M)
    w = _first_mismatch(F, left_unit, I)
    w2 = _first_mismatch(F, right_unit, I)
    add("unitality", None if w is None and w2 is None else (w or w2) + (0,))

    gens = algebra_generators(F, M, u) if rep.checks[-1].passed else list(range(d))
    add("associativity", _check_associative(F, M, gens))

    left_cu = F.einsum("j,ijk->ki", eps, D)
    right_cu = F.einsum("k,ijk->ji", eps, D)
    w = _first_mismatch(F, left_cu, I)
    w2 = _first_mismatch(F, right_cu, I)
    add("counitality", None if w is None and w2 is None else (w or w2) + (0,))

    Md = np.transpose(D, (1, 2, 0))
    cogens = algebra_generators(F, Md, eps) if rep.checks[-1].passed else list(range(d))
    add("coassociativity", _check_associative(F, Md, cogens))

    # Delta and eps are algebra maps
    w = _first_mismatch(F, F.einsum("c,cjk->jk", u, D), np.multiply.outer(u, u))
    bad = None if w is None else (0,) + w
    if bad is None:
        for g in gens:
            lhs = F.einsum("bc,cjk->bjk", M[g], D)
            rhs = _delta_product_with_all(F, D[g], D, M)
            m = _first_mismatch(F, lhs, rhs)
            if m is not None:
                bad = (g,) + m
                break
    add("comultiplicative", bad)
    w = _first_mismatch(F, F.einsum("abc,c->ab", M, eps), np.multiply.outer(eps, eps))
    add("counit_multiplicative", None if w is None and F.raw(F.dot(eps, u)) == F.one else (w or (0, 0)) + (0,))

    # antipode
    uS = F.reduce(np.multiply.outer(u, eps))
    left_s = F.einsum("ijk,aj,akc->ci", D, S, M)
    right_s = F.einsum("ijk,bk,jbc->ci", D, S, M)
    w = _first_mismatch(F, left_s, uS)
    w2 = _first_mismatch(F, right_s, uS)
    add("antipode", None if w is None and w2 is None else (w or w2) + (0,))
    w = _first_mismatch(F, F.dot(S, H.antipode_inverse), I)
    add("antipode_bijective", None if w is None else w + (0,))
    return rep


# ---------------------------------------------------------------------------
# antipode, convolution, powers


def _step(F: Field, D: np.ndarray, M: np.ndarray, P: np.ndarray) -> np.ndarray:
    return F.einsum("ijk,bk,jbc->ci", D, P, M)


def derive_antipode(F: Field, mult, unit, comult, counit) -> np.ndarray:
    """Convolution inverse of id, read off the minimal polynomial of id in End(H)."""
    M, u, D, eps = (F.asarray(a) for a in (mult, unit, comult, counit))
    one = F.reduce(np.multiply.outer(u, eps))
    g, _, vecs = relative_min_poly(F, lambda f: _step(F, D, M, f), one, return_krylov=True)
    g0 = g.coeffs[0]
    if F.is_zero(g0):
        raise NoAntipode("the identity is not convolution invertible")
    c = F.neg(F.inv(g0))
    acc = F.zeros(one.shape)
    for k in range(1, g.degree + 1):
        acc = F.reduce(acc + vecs[k - 1] * F.raw(g.coeffs[k] * c))
    S = acc
    left = F.einsum("ijk,aj,akc->ci", D, S, M)
    right = _step(F, D, M, S)
    if not (F.array_equal(left, one) and F.array_equal(right, one)):
        raise NoAntipode("convolution inverse of id is one-sided; axioms violated")
    return S


def convolution(H: HopfAlgebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(h) = sum f(h_(1)) g(h_(2))."""
    return H.field.einsum("ijk,aj,bk,abc->ci", H.comult, f, g, H.mult)


def twisted_power_map(H: HopfAlgebra, i: int, n: int) -> np.ndarray:
    """m_n o (id (x) S^{2i} (x) ... (x) S^{2(n-1)i}) o Delta_n as a matrix.

    Uses T_1 = id and T_{k+1}(h) = sum h_(1) S^{2i}(T_k(h_(2))).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    F = H.field
    S2i = H.s2_power(i)
    T = H.identity
    for _ in range(n - 1):
        T = H.step(F.dot(S2i, T))
    return T


def sweedler_power(H: HopfAlgebra, n: int) -> np.ndarray:
    return twisted_power_map(H, 0, n)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def iterated_coproduct(H: HopfAlgebra, n: int) -> np.ndarray:
    """Delta_n as an array [i, j_1, ..., j_n]."""
    F = H.field
    if n == 1:
        return H.identity.T.copy()
    T = H.comult
    for k in range(2, n):
        # expand the last tensor factor
        idx = _LETTERS[: k + 1]
        T = F.einsum(f"{idx},{idx[-1]}yz->{idx[:-1]}yz", T, H.comult)
    return T


def direct_power_map(H: HopfAlgebra, maps: Sequence[np.ndarray] | None = None, n: int | None = None,
                     i: int = 0) -> np.ndarray:
    """m_n o (f_1 (x) ... (x) f_n) o Delta_n by literal expansion of Delta_n.

    ``maps`` defaults to (id, S^{2i}, S^{4i}, ...).  Exponential in n; meant as an
    independent check of :func:`twisted_power_map` for small n.
    """
    F = H.field
    if maps is None:
        if n is None:
            raise ValueError("give maps or n")
        maps = [H.s2_power(i * t) for t in range(n)]
    n = len(maps)
    T = iterated_coproduct(H, n)
    idx = _LETTERS[: n + 1]
    for t, f in enumerate(maps):
        ax = idx[t + 1]
        T = F.einsum(f"{idx},Z{ax}->{idx.replace(ax, 'Z')}", T, f)
        # restore letter order
        T = np.asarray(T)
    # multiply factors left to right
    cur = T
    k = n
    while k > 1:
        sub = _LETTERS[: k + 1]
        cur = F.einsum(f"{sub},{sub[1]}{sub[2]}Z->{sub[0]}Z{sub[3:]}", cur, H.mult)
        k -= 1
    return cur.T.copy()


# ---------------------------------------------------------------------------
# closure operations


def dual(H: HopfAlgebra) -> HopfAlgebra:
    """H* in the dual basis: products from the coproduct and vice versa."""
    return HopfAlgebra(
        H.field,
        mult=np.transpose(H.comult, (1, 2, 0)),
        unit=H.counit,
        comult=np.transpose(H.mult, (2, 0, 1)),
        counit=H.unit,
        antipode=H.antipode.T,
        antipode_inverse=H.antipode_inverse.T,
        basis_names=[f"{n}*" for n in H.basis_names],
        name=f"{H.name}*",
    )


def opposite(H: HopfAlgebra) -> HopfAlgebra:
    return HopfAlgebra(
        H.field,
        mult=np.transpose(H.mult, (1, 0, 2)),
        unit=H.unit,
        comult=H.comult,
        counit=H.counit,
        antipode=H.antipode_inverse,
        antipode_inverse=H.antipode,
        basis_names=H.basis_names,
        name=f"{H.name}^op",
    )


def coopposite(H: HopfAlgebra) -> HopfAlgebra:
    return HopfAlgebra(
        H.field,
        mult=H.mult,
        unit=H.unit,
        comult=np.transpose(H.comult, (0, 2, 1)),
        counit=H.counit,
        antipode=H.antipode_inverse,
        antipode_inverse=H.antipode,
        basis_names=H.basis_names,
        name=f"{H.name}^cop",
    )


def tensor(H: HopfAlgebra, K: HopfAlgebra) -> HopfAlgebra:
    """H (x) K with basis e_a (x) f_b at index a * dim(K) + b."""
    if H.field != K.field:
        raise DimensionMismatch("tensor factors live over different fields")
    F = H.field
    n = H.dim * K.dim
    mult = F.reduce(np.einsum("abc,xyz->axbycz", H.mult, K.mult)).reshape(n, n, n)
    comult = F.reduce(np.einsum("abc,xyz->axbycz", H.comult, K.comult)).reshape(n, n, n)
    return HopfAlgebra(
        F,
        mult=mult,
        unit=F.reduce(np.multiply.outer(H.unit, K.unit)).reshape(n),
        comult=comult,
        counit=F.reduce(np.multiply.outer(H.counit, K.counit)).reshape(n),
        antipode=F.reduce(np.einsum("ab,xy->axby", H.antipode, K.antipode)).reshape(n, n),
        antipode_inverse=F.reduce(np.einsum("ab,xy->axby", H.antipode_inverse, K.antipode_inverse)).reshape(n, n),
        basis_names=[f"{a}⊗{b}" for a in H.basis_names for b in K.basis_names],
        name=f"{H.name}⊗{K.name}",
    )


def sub_hopf_algebra(H: HopfAlgebra, B: np.ndarray, name: str | None = None) -> HopfAlgebra:
    """Structure constants of the Hopf subalgebra spanned by the independent columns of B.

    Raises NoSolution (from linalg) if span(B) is not closed under the structure.
    """
    F = H.field
    k = B.shape[1]
    prods = F.einsum("ar,bs,abc->crs", B, B, H.mult).reshape(H.dim, k * k)
    mult = solve_linear(F, B, prods).reshape(k, k, k).transpose(1, 2, 0)
    unit = solve_linear(F, B, H.unit)
    cop = F.einsum("ir,ijk->jkr", B, H.comult)  # [j, k, r]
    # coordinates in B (x) B: solve on both legs
    t = solve_linear(F, B, cop.reshape(H.dim, H.dim * k)).reshape(k, H.dim, k)  # [s, k, r]
    t = solve_linear(F, B, np.transpose(t, (1, 0, 2)).reshape(H.dim, k * k)).reshape(k, k, k)  # [t, s, r]
    comult = np.transpose(t, (2, 1, 0))
    counit = F.dot(H.counit, B)
    S = solve_linear(F, B, F.dot(H.antipode, B))
    Sinv = solve_linear(F, B, F.dot(H.antipode_inverse, B))
    return HopfAlgebra(F, mult, unit, comult, counit, S, Sinv, name=name or f"sub({H.name})")


def same_structure(H: HopfAlgebra, K: HopfAlgebra) -> bool:
    """Bit-exact equality of all structure constants."""
    if H.field != K.field or H.dim != K.dim:
        return False
    F = H.field
    return all(
        F.array_equal(a, b)
        for a, b in (
            (H.mult, K.mult),
            (H.unit, K.unit),
            (H.comult, K.comult),
            (H.counit, K.counit),
            (H.antipode, K.antipode),
            (H.antipode_inverse, K.antipode_inverse),
        )
    )
