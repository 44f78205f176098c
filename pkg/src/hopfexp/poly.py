"""Univariate polynomials over an exact field, factorisation over F_p, and
the decision of whether ``x`` has finite multiplicative order in ``k[x]/(g)``.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (
    CyclotomicField,
    Field,
    PrimeField,
    RationalField,
    cyclotomic_polynomial,
    euler_phi,
    factorint,
)

__all__ = [
    "Polynomial",
    "NotMonic",
    "ZeroPolynomial",
    "INFINITE",
    "OrderResult",
    "CyclotomicCertificate",
    "NonSquarefree",
    "NonCyclotomicFactor",
    "FiniteFieldOrder",
    "factor_prime_field",
    "squarefree_factorization",
    "root_of_unity_order",
    "ext_lcm",
    "ext_divides",
]


class NotMonic(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class _Infinite:
    """The value of an exponent or order that does not exist (min of the empty set)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def ext_lcm(*values):
    """lcm where any infinite argument makes the result infinite."""
    out = 1
    for v in values:
        if v is INFINITE:
            return INFINITE
        out = math.lcm(out, v)
    return out


def ext_divides(a, b) -> bool:
    """a | b with every integer dividing infinity and infinity dividing only itself."""
    if b is INFINITE:
        return True
    if a is INFINITE:
        return False
    return b % a == 0


class Polynomial:
    """Dense polynomial with raw field payloads, ascending degree, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, F: Field, coeffs: Iterable):
        cs = [F.raw(c) for c in coeffs]
        while cs and F.is_zero(cs[-1]):
            cs.pop()
        self.field = F
        self.coeffs = tuple(cs)

    # constructors
    @classmethod
    def x(cls, F: Field) -> "Polynomial":
        return cls(F, [0, 1])

    @classmethod
    def constant(cls, F: Field, c) -> "Polynomial":
        return cls(F, [c])

    @classmethod
    def from_roots(cls, F: Field, roots) -> "Polynomial":
        p = cls(F, [1])
        for r in roots:
            p = p * cls(F, [F.neg(F.raw(r)), 1])
        return p

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == self.field.one

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.field.inv(self.lead)
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def __call__(self, a):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self.field.raw(acc * a + c)
        return acc

    # arithmetic
    def _wrap(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, [other])

    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (self.field.zero,) * (n - len(self.coeffs))
        b = o.coeffs + (self.field.zero,) * (n - len(o.coeffs))
        return Polynomial(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        if self.is_zero() or o.is_zero():
            return Polynomial(self.field, [])
        F = self.field
        out = [F.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = F.raw(out[i + j] + a * b)
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._wrap(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        inv = F.inv(o.lead)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Polynomial(F, []), self
        quo = [F.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = F.raw(rem[k + len(o.coeffs) - 1] * inv)
            quo[k] = c
            if not F.is_zero(c):
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = F.raw(rem[k + j] - c * b)
        return Polynomial(F, quo), Polynomial(F, rem[: len(o.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.raw(c * k) for k, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, k: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial(self.field, [1]) % mod
        base = self % mod
        while k:
            if k & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            k >>= 1
        return result

    def map_coeffs(self, F: Field) -> "Polynomial":
        return Polynomial(F, self.coeffs)

    def encode(self) -> list:
        return [self.field.encode(c) for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if self.field.is_zero(c):
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = str(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono:
                terms.append(f"({cs})*{mono}" if (" " in cs or "/" in cs) else f"{cs}*{mono}")
            else:
                terms.append(f"({cs})" if " " in cs else cs)
        out = " + ".join(terms)
        return out.replace("+ -", "- ") if not out.startswith("(") else out


# ---------------------------------------------------------------------------
# factorisation over F_p


def _pth_root(f: Polynomial) -> Polynomial:
    # over a prime field, a^(1/p) = a
    p = f.field.characteristic
    return Polynomial(f.field, f.coeffs[::p])


def squarefree_factorization(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic f over F_p as a list of (squarefree factor, multiplicity)."""
    F = f.field
    p = F.characteristic
    f = f.monic()
    if f.degree < 1:
        return []
    out: list[tuple[Polynomial, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in squarefree_factorization(_pth_root(f))]
    c = f.gcd(df)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if not fac.is_one():
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        out.extend((g, e * p) for g, e in squarefree_factorization(_pth_root(c.monic())))
    return out


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    F = f.field
    p = F.characteristic
    x = Polynomial.x(F)
    out = []
    h = x % f
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    F = f.field
    p = F.characteristic
    n = f.degree
    if n == d:
        return [f.monic()]
    while True:
        a = Polynomial(F, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            t = a % f
            b = t
            for _ in range(d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.powmod((p**d - 1) // 2, f) - 1
        g = f.gcd(b)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor_prime_field(g: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicities of g over F_p.

    The equal-degree split draws from ``random.Random(seed)`` so results are
    reproducible; output is sorted by (degree, coefficients).
    """
    if not isinstance(g.field, PrimeField):
        raise TypeError("factor_prime_field needs a prime field")
    if g.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for sq, e in squarefree_factorization(g):
        for part, d in _distinct_degree(sq):
            for irr in _equal_degree(part, d, rng):
                out.append((irr, e))
    out.sort(key=lambda t: (t[0].degree, [int(c) for c in t[0].coeffs], t[1]))
    return out


def is_irreducible_prime_field(f: Polynomial) -> bool:
    """Rabin's test over F_p."""
    F = f.field
    p = F.characteristic
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    x = Polynomial.x(F)
    if not ((x.powmod(p**n, f) - x) % f).is_zero():
        return False
    for q in factorint(n):
        h = x.powmod(p ** (n // q), f) - x
        if not f.gcd(h).is_one():
            return False
    return True


# ---------------------------------------------------------------------------
# order of x modulo g


@dataclass(frozen=True)
class CyclotomicCertificate:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class NonSquarefree:
    witness_gcd: Polynomial


@dataclass(frozen=True)
class NonCyclotomicFactor:
    witness: Polynomial


@dataclass(frozen=True)
class FiniteFieldOrder:
    factor_orders: tuple[tuple[Polynomial, int, int], ...]  # (irreducible, multiplicity, order of x mod it)
    p_power: int


@dataclass(frozen=True)
class OrderResult:
    value: object  # int or INFINITE
    evidence: object = field(compare=False)

    @property
    def finite(self) -> bool:
        return self.value is not INFINITE

    def summary(self) -> dict:
        ev = self.evidence
        if isinstance(ev, CyclotomicCertificate):
            e = {"type": "CyclotomicCertificate", "indices": list(ev.indices)}
        elif isinstance(ev, NonSquarefree):
            e = {"type": "NonSquarefree", "witness_gcd": ev.witness_gcd.encode()}
        elif isinstance(ev, NonCyclotomicFactor):
            e = {"type": "NonCyclotomicFactor", "witness": ev.witness.encode()}
        else:
            e = {
                "type": "FiniteFieldOrder",
                "factor_orders": [[f.encode(), m, o] for f, m, o in ev.factor_orders],
                "p_power": ev.p_power,
            }
        return {"value": "infinite" if self.value is INFINITE else self.value, "evidence": e}


def _is_one_mod(g: Polynomial, n: int) -> bool:
    x = Polynomial.x(g.field)
    return x.powmod(n, g).is_one() or (g.degree == 0)


def _certify(g: Polynomial, n: int) -> None:
    if not _is_one_mod(g, n):
        raise AssertionError(f"x^{n} != 1 mod {g}")
    for q in factorint(n):
        if _is_one_mod(g, n // q):
            raise AssertionError(f"x^{n // q} == 1 mod {g}; order not minimal")


def _order_mod_irreducible(f: Polynomial) -> int:
    p = f.field.characteristic
    order = p**f.degree - 1
    for q, e in factorint(order).items():
        for _ in range(e):
            if _is_one_mod(f, order // q):
                order //= q
            else:
                break
    return order


def _cyclotomic_in(F: Field, n: int) -> Polynomial:
    return Polynomial(F, cyclotomic_polynomial(n))


@functools.lru_cache(maxsize=None)
def _candidate_orders(bound: int) -> list[int]:
    # phi(n) >= sqrt(n/2), so phi(n) <= bound forces n <= 2 bound^2
    return [n for n in range(1, 2 * bound * bound + 3) if euler_phi(n) <= bound]


def root_of_unity_order(g: Polynomial) -> OrderResult:
    """Multiplicative order of the class of x in k[x]/(g), or INFINITE with evidence."""
    if not g.is_monic():
        raise NotMonic(f"{g} is not monic")
    if g.degree < 1:
        raise ValueError("degree must be >= 1")
    F = g.field
    x = Polynomial.x(F)
    if F.is_zero(g.coeffs[0]):
        return OrderResult(INFINITE, NonCyclotomicFactor(x))
    if F.characteristic == 0:
        d = g.gcd(g.derivative())
        if d.degree > 0:
            return OrderResult(INFINITE, NonSquarefree(d))
        bound = g.degree * F.degree
        indices = []
        rest = g
        for n in _candidate_orders(bound):
            h = rest.gcd(_cyclotomic_in(F, n))
            if h.degree > 0:
                indices.append(n)
                rest = rest // h
                if rest.degree == 0:
                    break
        if rest.degree > 0:
            return OrderResult(INFINITE, NonCyclotomicFactor(rest.monic()))
        order = ext_lcm(*indices)
        _certify(g, order)
        return OrderResult(order, CyclotomicCertificate(tuple(indices)))
    p = F.characteristic
    factors = factor_prime_field(g)
    orders = []
    n_prime = 1
    max_mult = 1
    for f, e in factors:
        o = _order_mod_irreducible(f)
        orders.append((f, e, o))
        n_prime = math.lcm(n_prime, o)
        max_mult = max(max_mult, e)
    p_power = 1
    while p_power < max_mult:
        p_power *= p
    order = n_prime * p_power
    _certify(g, order)
    return OrderResult(order, FiniteFieldOrder(tuple(orders), p_power))


def lagrange_idempotent_poly(f: Polynomial, h: Polynomial) -> Polynomial:
    """u with u = 1 mod f and u = 0 mod h, for coprime f, h."""
    # extended Euclid on (f, h)
    F = f.field
    r0, r1 = f, h
    s0, s1 = Polynomial(F, [1]), Polynomial(F, [])
    t0, t1 = Polynomial(F, []), Polynomial(F, [1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise ValueError("polynomials are not coprime")
    inv = F.inv(r0.lead)
    # s0 f + t0 h = r0  ->  u = t0 h / r0
    return (t0 * h) * Polynomial(F, [inv])


# ---------------------------------------------------------------------------
# characteristic-zero factorisation (delegated to sympy)


def factor_char0(g: Polynomial) -> list[tuple[Polynomial, int]]:
    """Irreducible factorisation over Q or Q(zeta_n) via sympy's algebraic domains."""
    import sympy as sp

    F = g.field
    xs = sp.Symbol("x")
    if isinstance(F, RationalField):
        dom = sp.QQ
        coeffs = [dom.convert(sp.Rational(c.numerator, c.denominator)) for c in reversed(g.coeffs)]
    elif isinstance(F, CyclotomicField):
        dom = sp.QQ.algebraic_field(sp.exp(2 * sp.pi * sp.I / F.n))
        coeffs = [
            dom([sp.Rational(c.numerator, c.denominator) for c in reversed(a.c)]) for a in reversed(g.coeffs)
        ]
    else:
        raise TypeError("factor_char0 needs a characteristic-zero field")
    poly = sp.Poly(coeffs, xs, domain=dom)
    _, pieces = poly.factor_list()
    out = []
    for piece, mult in pieces:
        cs = []
        for c in reversed(piece.rep.to_list()):
            if isinstance(F, RationalField):
                q = dom.to_sympy(c)
                cs.append(Fraction(int(q.p), int(q.q)))
            else:
                lst = c.to_list() if hasattr(c, "to_list") else list(c.rep)
                vals = [Fraction(int(sp.Rational(v).p), int(sp.Rational(v).q)) for v in reversed(lst)]
                cs.append(F.from_coefficients(vals))
        out.append((Polynomial(F, cs).monic(), mult))
    return out


def factor(g: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    if isinstance(g.field, PrimeField):
        return factor_prime_field(g, seed=seed)
    return factor_char0(g)


def poly_from_ints(F: Field, coeffs: Sequence[int]) -> Polynomial:
    return Polynomial(F, coeffs)
