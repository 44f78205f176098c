"""Twisted exponents exp_{2i}(H): a terminating decision procedure and a brute-force oracle.

T_n = m_n (id (x) S^{2i} (x) ... (x) S^{2(n-1)i}) Delta_n satisfies T_1 = id and
T_{n+1} = L(T_n) with the linear step operator L(f) = m (id (x) S^{2i} f) Delta.
So T_n = L^{n-1}(id) and the question "does T_n hit u eps?" is a question
about the cyclic L-module generated by id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hopf import HopfAlgebra, twisted_power_map
from .linalg import relative_min_poly
from .poly import INFINITE, OrderResult, Polynomial, root_of_unity_order

__all__ = [
    "ExponentResult",
    "Unknown",
    "exponent_2i",
    "exponent",
    "exponent0",
    "brute_force_exponent",
    "step_operator",
    "default_bound",
    "GrouplikeElement",
    "grouplikes",
    "conjugation_matrix",
    "pivotal_power_identity_check",
    "find_pivotal",
    "pivotal_elements",
]

DECISION = "decision"
BRUTE_FORCE = "brute_force"
REVERIFY_LIMIT = 64


@dataclass
class ExponentResult:
    value: object  # int or INFINITE
    i: int
    i_normalized: int
    method: str
    minpoly: Polynomial | None = None
    order: OrderResult | None = None
    index: int | None = None  # n with T_n = u eps, when finite
    krylov_dim: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return isinstance(self.value, int)

    def summary(self) -> dict:
        out = {
            "value": int(self.value) if self.finite else str(self.value),
            "i": self.i,
            "i_normalized": self.i_normalized,
            "method": self.method,
        }
        if self.minpoly is not None:
            out["minpoly_degree"] = self.minpoly.degree
            out["minpoly"] = repr(self.minpoly)
        if self.order is not None:
            out["period"] = self.order.summary()
        if self.index is not None:
            out["index"] = self.index
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass(frozen=True)
class Unknown:
    """Brute force gave up: no n <= bound has T_n = u eps."""

    bound: int

    def __str__(self):
        return f"unknown(>{self.bound})"


def default_bound(H: HopfAlgebra) -> int:
    return 4 * H.dim * H.dim + 16


def step_operator(H: HopfAlgebra, i: int):
    """f -> m (id (x) S^{2i} f) Delta as a callable on dim x dim matrices."""
    P = H.s2_power(i)
    F = H.field
    return lambda f: H.step(F.dot(P, f))


def exponent_2i(H: HopfAlgebra, i: int, method: str = DECISION, bound: int | None = None) -> ExponentResult:
    """exp_{2i}(H); i = 0 gives exp_0, i = -1 gives exp.

    Decision: g = minimal polynomial of L relative to id, P = order of x mod g.
    Since L(u eps) = id, an occurrence T_n = u eps forces T_{n+1} = T_1, so n
    must be a multiple of the period P; the orbit is purely periodic exactly
    when P is finite.  Hence exp = P if T_P = u eps and infinite otherwise.
    """
    d = H.s2_order
    k = i % d
    if method in ("iterate", BRUTE_FORCE):
        b = bound if bound is not None else default_bound(H)
        n = brute_force_exponent(H, i, b)
        res = ExponentResult(n, i, k, BRUTE_FORCE)
        if isinstance(n, Unknown):
            res.notes.append(f"no n <= {b} reached u eps")
        return res
    if method not in ("decide", DECISION):
        raise ValueError(f"unknown method {method!r}")
    F = H.field
    L = step_operator(H, k)
    g, ech, vecs = relative_min_poly(F, L, H.identity, return_krylov=True)
    order = root_of_unity_order(g)
    res = ExponentResult(INFINITE, i, k, DECISION, minpoly=g, order=order, krylov_dim=g.degree)
    target = H.unit_counit
    coords = ech.express(target.reshape(-1))
    if not order.finite:
        res.notes.append("period infinite: the orbit of id is not purely periodic")
        return res
    if coords is None:
        res.notes.append("u eps lies outside the Krylov span of id")
        return res
    P = order.value
    r = Polynomial(F, list(coords))
    x = Polynomial.x(F)
    if x.powmod(P - 1, g) != r:
        res.notes.append(f"u eps is not T_{P} on the cycle of length {P}")
        return res
    res.value = P
    res.index = P
    _reverify(H, L, vecs, P)
    return res


def _reverify(H: HopfAlgebra, L, vecs: list[np.ndarray], P: int) -> None:
    """Literal re-check: T_m != u eps for m < min(P, 64), and T_P = u eps when P <= 64."""
    F = H.field
    target = H.unit_counit
    cur = None
    for m in range(1, min(P, REVERIFY_LIMIT) + 1):
        cur = vecs[m - 1] if m - 1 < len(vecs) else L(cur)
        hit = F.array_equal(cur, target)
        if hit != (m == P):  # pragma: no cover - would contradict the decision
            raise AssertionError(f"re-verification of the decided exponent {P} failed at n = {m}")


def exponent(H: HopfAlgebra, method: str = DECISION, bound: int | None = None) -> ExponentResult:
    return exponent_2i(H, -1, method, bound)


def exponent0(H: HopfAlgebra, method: str = DECISION, bound: int | None = None) -> ExponentResult:
    return exponent_2i(H, 0, method, bound)


def brute_force_exponent(H: HopfAlgebra, i: int, bound: int | None = None):
    """Least n <= bound with T_n = u eps, iterating the recursion literally; else Unknown(bound)."""
    bound = bound if bound is not None else default_bound(H)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    F = H.field
    P = H.s2_power(i)
    target = H.unit_counit
    T = H.identity
    for n in range(1, bound + 1):
        if F.array_equal(T, target):
            return n
        T = H.step(F.dot(P, T))
    return Unknown(bound)


# ---------------------------------------------------------------------------
# grouplikes and pivotal elements


@dataclass
class GrouplikeElement:
    coordinates: np.ndarray
    order: int

    def __eq__(self, other):
        return isinstance(other, GrouplikeElement) and np.array_equal(self.coordinates, other.coordinates)


def _element_order(H: HopfAlgebra, g: np.ndarray) -> int:
    F = H.field
    x = g
    for k in range(1, H.dim + 1):
        if F.array_equal(x, H.unit):
            return k
        x = H.product(x, g)
    raise ArithmeticError("grouplike of order exceeding dim(H)")


def grouplikes(H: HopfAlgebra, coradical_data=None) -> list[GrouplikeElement]:
    """Grouplikes = the one-dimensional simple subcoalgebras of the coradical."""
    from .coradical import simple_decomposition

    F = H.field
    simples = coradical_data if coradical_data is not None else simple_decomposition(H)
    out = []
    for s in simples:
        if s.dim != 1:
            continue
        v = s.basis[:, 0]
        e = F.raw(F.dot(H.counit, v))
        g = F.reduce(v * F.inv(e))
        if not (F.array_equal(H.coproduct(g), np.multiply.outer(g, g))):  # pragma: no cover
            raise ArithmeticError("one-dimensional simple subcoalgebra is not spanned by a grouplike")
        out.append(GrouplikeElement(g, _element_order(H, g)))
    def key(G):
        support = [k for k, c in enumerate(G.coordinates) if not F.is_zero(c)]
        return (G.order, support)

    out.sort(key=key)
    return out


def conjugation_matrix(H: HopfAlgebra, g: np.ndarray) -> np.ndarray:
    """h -> g h g^{-1} for a grouplike g (g^{-1} = S(g))."""
    F = H.field
    ginv = F.dot(H.antipode, g)
    return F.dot(H.left_mult_matrix(g), H.right_mult_matrix(ginv))


def pivotal_power_identity_check(H: HopfAlgebra, g, n: int, h: np.ndarray) -> bool:
    """(hg)^[n] == sum h_1 phi(h_2) ... phi^{n-1}(h_n) g^n with phi = conjugation by g."""
    from .hopf import direct_power_map, sweedler_power

    F = H.field
    gv = g.coordinates if isinstance(g, GrouplikeElement) else F.asarray(g)
    h = F.asarray(h)
    lhs = F.dot(sweedler_power(H, n), H.product(h, gv))
    phi = conjugation_matrix(H, gv)
    maps = [H.identity]
    for _ in range(1, n):
        maps.append(F.dot(phi, maps[-1]))
    rhs = H.product(F.dot(direct_power_map(H, maps=maps), h), H.power(gv, n))
    return F.array_equal(lhs, rhs)


def pivotal_elements(H: HopfAlgebra, gs: list[GrouplikeElement] | None = None) -> list[GrouplikeElement]:
    F = H.field
    gs = gs if gs is not None else grouplikes(H)
    return [g for g in gs if F.array_equal(conjugation_matrix(H, g.coordinates), H.s2)]


def find_pivotal(H: HopfAlgebra, gs: list[GrouplikeElement] | None = None) -> GrouplikeElement | None:
    piv = pivotal_elements(H, gs)
    return piv[0] if piv else None
