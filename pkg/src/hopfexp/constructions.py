"""Factories for the example corpus: group algebras, their duals, Taft algebras."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fields import Field, make_field
from .hopf import HopfAlgebra, verify_axioms

__all__ = [
    "InvalidGroupTable",
    "NoPrimitiveRoot",
    "FiniteGroupTable",
    "cyclic_group",
    "klein_four",
    "symmetric_group",
    "direct_product",
    "named_group",
    "group_algebra",
    "dual_group_algebra",
    "taft",
    "sweedler",
    "from_description",
]


class InvalidGroupTable(ValueError):
    def __init__(self, message: str, triple: tuple | None = None):
        super().__init__(message if triple is None else f"{message} at {triple}")
        self.triple = triple


class NoPrimitiveRoot(ValueError):
    def __init__(self, n: int, F: Field):
        super().__init__(f"{F} has no primitive {n}-th root of unity")
        self.n = n
        self.field = F


@dataclass(frozen=True)
class FiniteGroupTable:
    """Cayley table: ``table[a][b]`` is the index of the product ab."""

    table: tuple[tuple[int, ...], ...]
    identity_index: int
    names: tuple[str, ...]

    def __init__(self, table, identity_index: int | None = None, names=None):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0] if t.ndim == 2 else 0
        if t.ndim != 2 or t.shape != (n, n) or n == 0:
            raise InvalidGroupTable("table must be a nonempty square grid")
        if t.min() < 0 or t.max() >= n:
            raise InvalidGroupTable("table entries out of range")
        ar = np.arange(n)
        if identity_index is None:
            ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
            if not ids:
                raise InvalidGroupTable("no identity element")
            identity_index = ids[0]
        e = identity_index
        if not ((t[e] == ar).all() and (t[:, e] == ar).all()):
            raise InvalidGroupTable("identity_index is not a two-sided identity")
        for a in range(n):
            if not (t[a] == e).any():
                raise InvalidGroupTable("element has no inverse", (a, a, e))
        lhs = t[t[:, :, None], ar[None, None, :]]  # (ab)c
        rhs = t[ar[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise InvalidGroupTable("not associative", tuple(int(v) for v in bad[0]))
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in t))
        object.__setattr__(self, "identity_index", int(e))
        object.__setattr__(self, "names", tuple(names) if names is not None else tuple(f"g{i}" for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity_index)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.mul(x, a)
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(self.order))


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable([[(a + b) % n for b in range(n)] for a in range(n)], 0,
                            names=["1"] + [f"g^{a}" if a > 1 else "g" for a in range(1, n)])


def direct_product(G: FiniteGroupTable, K: FiniteGroupTable) -> FiniteGroupTable:
    """G x K with (g, k) at index g * |K| + k."""
    m = K.order
    table = [[G.mul(a // m, b // m) * m + K.mul(a % m, b % m) for b in range(G.order * m)]
             for a in range(G.order * m)]
    names = [f"({x},{y})" for x in G.names for y in K.names]
    return FiniteGroupTable(table, G.identity_index * m + K.identity_index, names)


def klein_four() -> FiniteGroupTable:
    """Z2 x Z2; the element (a, b) sits at index 2a + b."""
    return FiniteGroupTable([[((a >> 1 ^ b >> 1) << 1) | ((a ^ b) & 1) for b in range(4)] for a in range(4)], 0,
                            names=["(0,0)", "(0,1)", "(1,0)", "(1,1)"])


def symmetric_group(n: int) -> FiniteGroupTable:
    """Permutations of range(n) in lexicographic order; (st)(x) = s(t(x))."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms]
    return FiniteGroupTable(table, 0, names=["".join(map(str, p)) for p in perms])


def named_group(name: str) -> FiniteGroupTable:
    """'z6', 'k4' (or 'z2xz2'), 's3' and products like 'z2xz3'."""
    key = name.lower().replace(" ", "")
    if key == "k4":
        return klein_four()
    parts = key.split("x")
    groups = []
    for part in parts:
        if part.startswith("z") and part[1:].isdigit() and int(part[1:]) >= 1:
            groups.append(cyclic_group(int(part[1:])))
        elif part.startswith("s") and part[1:].isdigit() and 1 <= int(part[1:]) <= 5:
            groups.append(symmetric_group(int(part[1:])))
        else:
            raise InvalidGroupTable(f"unknown group name {name!r}")
    if key == "z2xz2":
        return klein_four()
    G = groups[0]
    for K in groups[1:]:
        G = direct_product(G, K)
    return G


def group_algebra(G: FiniteGroupTable, F: Field) -> HopfAlgebra:
    n = G.order
    mult = F.zeros((n, n, n))
    comult = F.zeros((n, n, n))
    S = F.zeros((n, n))
    for a in range(n):
        for b in range(n):
            mult[a, b, G.mul(a, b)] = F.one
        comult[a, a, a] = F.one
        S[G.inverse(a), a] = F.one
    unit = F.zeros(n)
    unit[G.identity_index] = F.one
    counit = F.asarray([1] * n)
    return HopfAlgebra(F, mult, unit, comult, counit, S, S.copy(), basis_names=G.names,
                       name=f"kG[{n}]")


def dual_group_algebra(G: FiniteGroupTable, F: Field) -> HopfAlgebra:
    """Functions on G in the basis of point indicators delta_g."""
    n = G.order
    mult = F.zeros((n, n, n))
    comult = F.zeros((n, n, n))
    S = F.zeros((n, n))
    for a in range(n):
        mult[a, a, a] = F.one
        for b in range(n):
            comult[G.mul(a, b), a, b] = F.one
        S[G.inverse(a), a] = F.one
    counit = F.zeros(n)
    counit[G.identity_index] = F.one
    unit = F.asarray([1] * n)
    return HopfAlgebra(F, mult, unit, comult, counit, S, S.copy(),
                       basis_names=[f"d[{g}]" for g in G.names], name=f"k^G[{n}]")


def _qbinom(F: Field, q, n: int, k: int):
    """Gaussian binomial coefficient [n choose k]_q as a raw field element."""
    # Pascal rule: [n,k] = [n-1,k-1] + q^k [n-1,k]
    row = [F.one]
    for m in range(1, n + 1):
        new = [F.one] * (m + 1)
        for j in range(1, m):
            new[j] = F.raw(row[j - 1] + F.raw(q ** j) * row[j])
        row = new
    return row[k]


def taft(n: int, F: Field, q=None) -> HopfAlgebra:
    """Taft algebra T_n(q): basis g^a x^b at index a*n + b.

    Relations g^n = 1, x^n = 0, xg = q gx; Delta(g) = g(x)g, Delta(x) = x(x)1 + g(x)x.
    The default q is the field's canonical primitive n-th root of unity.
    """
    if n < 2:
        raise ValueError("taft needs n >= 2")
    if q is None:
        q = F.primitive_root_of_unity(n)
        if q is None:
            raise NoPrimitiveRoot(n, F)
    else:
        q = F.raw(q)
        z = F.one
        for k in range(1, n + 1):
            z = F.raw(z * q)
            if (z == F.one) != (k == n):
                raise NoPrimitiveRoot(n, F)

    def qpow(k):
        r = F.one
        for _ in range(k % n):
            r = F.raw(r * q)
        return r

    d = n * n
    idx = lambda a, b: (a % n) * n + b
    mult = F.zeros((d, d, d))
    comult = F.zeros((d, d, d))
    counit = F.zeros(d)
    for a, b, c, e in itertools.product(range(n), repeat=4):
        if b + e < n:
            mult[idx(a, b), idx(c, e), idx(a + c, b + e)] = qpow(b * c)
    for a, b in itertools.product(range(n), repeat=2):
        for k in range(b + 1):
            comult[idx(a, b), idx(a + k, b - k), idx(a, k)] = _qbinom(F, q, b, k)
        if b == 0:
            counit[idx(a, 0)] = F.one
    unit = F.zeros(d)
    unit[0] = F.one

    # S(g^a x^b) = S(x)^b S(g)^a with S(g) = g^{n-1}, S(x) = -g^{n-1} x
    def prod(u, v):
        return F.einsum("a,b,abc->c", u, v, mult)

    sx = F.zeros(d)
    sx[idx(n - 1, 1)] = F.neg(F.one)
    S = F.zeros((d, d))
    for a, b in itertools.product(range(n), repeat=2):
        v = unit.copy()
        for _ in range(b):
            v = prod(v, sx)
        gi = F.zeros(d)
        gi[idx(-a, 0)] = F.one
        S[:, idx(a, b)] = prod(v, gi)

    def name(a, b):
        parts = [] if a == 0 else ["g" if a == 1 else f"g^{a}"]
        if b:
            parts.append("x" if b == 1 else f"x^{b}")
        return "".join(parts) or "1"

    names = [name(a, b) for a in range(n) for b in range(n)]
    label = "H4" if n == 2 else f"T{n}"
    return HopfAlgebra(F, mult, unit, comult, counit, S, basis_names=names, name=label)


def sweedler(F: Field | None = None) -> HopfAlgebra:
    """Sweedler's four-dimensional algebra, T_2(-1)."""
    return taft(2, F if F is not None else make_field("rational"))


def from_description(doc) -> HopfAlgebra:
    """Build from a structure-constant document (dict, JSON text or path); axioms are a hard gate."""
    from .io import parse_document

    H = parse_document(doc)
    verify_axioms(H).raise_for_failure()
    return H
