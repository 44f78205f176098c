"""Exact scalar fields: the rationals, cyclotomic fields Q(zeta_n) and prime fields F_p.

Every field hands out two views of its scalars.  Arrays (numpy) hold *raw*
payloads for speed: ``Fraction`` for Q, :class:`Cyc` for Q(zeta_n) and plain
integer residues (``int64`` where overflow-safe) for F_p.  The public scalar
type is :class:`FieldElement`, an immutable ``(field, payload)`` pair with the
usual operators.

>>> Q = RationalField()
>>> Q.parse("-3/6")
FieldElement(Q, -1/2)
>>> K = CyclotomicField(3)
>>> K.parse(["-1", "-1"]) == K.zeta() ** 2
True
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "FieldError",
    "MalformedLiteral",
    "NonReducibleResidue",
    "DivisionByZero",
    "Field",
    "RationalField",
    "CyclotomicField",
    "PrimeField",
    "FieldElement",
    "Cyc",
    "make_field",
    "parse_field",
    "parse_scalar",
    "invert_scalar",
    "primitive_root_of_unity",
    "cyclotomic_polynomial",
    "euler_phi",
    "factorint",
    "is_prime",
]


class FieldError(ValueError):
    pass


class MalformedLiteral(FieldError):
    pass


class NonReducibleResidue(MalformedLiteral):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24, trial division below)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation by trial division; fine for the orders that occur here."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for q in factorint(n):
        result = result // q * (q - 1)
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) divided by every Phi_d with d | n, d < n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _int_exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert not any(num), "inexact cyclotomic division"
    return out


# ---------------------------------------------------------------------------
# cyclotomic payloads


class Cyc:
    """Element of Q(zeta_n) in the power basis modulo Phi_n.  Immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field: "CyclotomicField", coeffs: tuple[Fraction, ...]):
        self.field = field
        self.c = coeffs

    # construction helpers
    def _lift(self, other: Any) -> "Cyc | None":
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field._scalar(Fraction(int(other)) if isinstance(other, np.integer) else Fraction(other))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyc(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyc(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field._zero
            return Cyc(self.field, tuple(a * other for a in self.c))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.field._mul(self.c, o.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * self.field._inv(o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.field._inv(self)

    def __pow__(self, k: int):
        if k < 0:
            return self.field._inv(self) ** (-k)
        result = self.field._one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.field.n == other.field.n and self.c == other.c
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.field.n, self.c))

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if mono and a == 1:
                    terms.append(mono)
                elif mono and a == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{a}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ---------------------------------------------------------------------------
# fields


class Field:
    """Abstract exact field.  Subclasses fix the payload representation."""

    kind: str
    characteristic: int
    degree: int  # [F : prime field]
    dtype: Any = object

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    # -- raw scalar interface ------------------------------------------------
    @property
    def zero(self):
        return self.raw(0)

    @property
    def one(self):
        return self.raw(1)

    def raw(self, value: Any):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return not a

    def neg(self, a):
        return self.raw(-a)

    # -- element wrapper -------------------------------------------------------
    def __call__(self, value: Any) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        return FieldElement(self, self.raw(value))

    def element(self, payload) -> "FieldElement":
        return FieldElement(self, self.raw(payload))

    # -- arrays -----------------------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            return np.full(shape, self.zero, dtype=object)
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one
        return a

    def asarray(self, data) -> np.ndarray:
        """Coerce nested data (ints, Fractions, strings, FieldElements) into a field array."""
        src = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
        if isinstance(data, np.ndarray) and data.dtype == self.dtype and self.dtype is not object:
            return self.reduce(data.copy())
        out = np.empty(src.shape, dtype=object)
        for idx, v in np.ndenumerate(src):
            out[idx] = self.raw(v)
        if self.dtype is not object:
            out = out.astype(self.dtype)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim in (1, 2) and b.ndim in (1, 2):
            sa = "ij"[2 - a.ndim:]
            sb = "jk"[: b.ndim]
            out = (sa[:-1] + sb[1:])
            return self.einsum(f"{sa},{sb}->{out}", a, b)
        return self.reduce(np.dot(a, b))

    def tensordot(self, a, b, axes) -> np.ndarray:
        return self.reduce(np.tensordot(a, b, axes=axes))

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        """Exact ``np.einsum``, evaluated pairwise along an optimised contraction path.

        Object-dtype fields contract in a lifted integer representation (see
        ``_lift``) so that numpy only ever adds and multiplies Python ints.
        """
        ops = [np.asarray(o) for o in operands]
        ins, out = subscripts.replace(" ", "").split("->")
        terms = ins.split(",")
        lifted = self.dtype is object
        den = 1
        if lifted:
            arrs = []
            for o in ops:
                a, d = self._lift(o)
                arrs.append(a)
                den *= d
        else:
            arrs = ops
        if len(ops) == 1:
            res = self._contract1(terms[0], arrs[0], out)
        else:
            if len(ops) == 2:
                path = [(0, 1)]
            else:
                path = np.einsum_path(subscripts, *ops, optimize="greedy")[0][1:]
            for step in path:
                step = sorted(step, reverse=True)
                picked = [(terms.pop(i), arrs.pop(i)) for i in step]
                while picked:
                    rest = [t for t, _ in picked[2:]]
                    needed = set(out).union(*terms, *rest)
                    group = picked[:2]
                    letters = "".join(dict.fromkeys("".join(t for t, _ in group)))
                    keep = "".join(ch for ch in letters if ch in needed)
                    if len(group) == 1:
                        (ta, A), = group
                        r = self._contract1(ta, A, keep)
                    else:
                        (ta, A), (tb, B) = group
                        r = self._contract2(ta, A, tb, B, keep)
                    if len(picked) > 2:
                        picked = [(keep, r)] + picked[2:]
                    else:
                        terms.append(keep)
                        arrs.append(r)
                        picked = []
            assert len(arrs) == 1
            res = self._contract1(terms[0], arrs[0], out)
        res = self._unlift(res, den) if lifted else self.reduce(res)
        if np.ndim(res) == 0:
            return np.asarray(res, dtype=self.dtype)[()]
        return res

    # lifted representation for object dtypes: (array of Python ints, common denominator)
    def _lift(self, a: np.ndarray):
        raise NotImplementedError

    def _unlift(self, a: np.ndarray, den: int) -> np.ndarray:
        raise NotImplementedError

    def _contract1(self, ta: str, A, out: str):
        return self.reduce(np.einsum(f"{ta}->{out}", A))

    def _contract2(self, ta: str, A, tb: str, B, out: str):
        return self.reduce(np.einsum(f"{ta},{tb}->{out}", A, B))

    def array_is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a) if a.dtype != object else not any(bool(x) for x in a.flat)

    def array_equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and self.array_is_zero(self.reduce(a - b))

    # -- serialisation ---------------------------------------------------------
    def encode(self, a) -> Any:
        raise NotImplementedError

    def parse(self, literal: Any) -> "FieldElement":
        return FieldElement(self, self.decode(literal))

    def decode(self, literal: Any):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    # -- roots of unity --------------------------------------------------------
    def roots_of_unity_order_bound(self) -> int | None:
        """Order of the (cyclic) group of roots of unity, or None when infinite-ish."""
        raise NotImplementedError

    def primitive_root_of_unity(self, n: int):
        raise NotImplementedError

    def roots_of_unity(self, n: int) -> list:
        """All raw x with x**n == 1, listed as powers of a generator."""
        m = math.gcd(n, self.roots_of_unity_order_bound())
        z = self.primitive_root_of_unity(m)
        out, x = [], self.one
        for _ in range(m):
            out.append(x)
            x = self.raw(x * z)
        return out


_LIFT_CACHE: dict[int, tuple] = {}


def _lift_cache_get(a: np.ndarray):
    """Lifted forms are cached only for read-only arrays (structure tensors)."""
    if a.flags.writeable:
        return None
    hit = _LIFT_CACHE.get(id(a))
    if hit is not None and hit[0] is a:
        return hit[1]
    return None


def _lift_cache_put(a: np.ndarray, value) -> None:
    if a.flags.writeable:
        return
    if len(_LIFT_CACHE) > 256:
        _LIFT_CACHE.clear()
    _LIFT_CACHE[id(a)] = (a, value)


class RationalField(Field):
    kind = "rational"
    characteristic = 0
    degree = 1

    def raw(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} is not rational")
            return value.payload
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, str):
            return self.decode(value)
        if isinstance(value, Cyc) and not any(value.c[1:]):
            return value.c[0]
        raise FieldError(f"cannot coerce {value!r} into Q")

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def _lift(self, a):
        cached = _lift_cache_get(a)
        if cached is not None:
            return cached
        flat = a.reshape(-1)
        den = math.lcm(*[x.denominator for x in flat]) if flat.size else 1
        nums = np.empty(flat.size, dtype=object)
        for k, x in enumerate(flat):
            nums[k] = x.numerator * (den // x.denominator) if x.numerator else 0
        res = (nums.reshape(a.shape), den)
        _lift_cache_put(a, res)
        return res

    def _contract1(self, ta, A, out):
        return np.einsum(f"{ta}->{out}", A)

    def _contract2(self, ta, A, tb, B, out):
        return np.einsum(f"{ta},{tb}->{out}", A, B)

    def _unlift(self, a, den):
        a = np.asarray(a, dtype=object)
        out = np.empty(a.shape, dtype=object)
        flat, res = a.reshape(-1), out.reshape(-1)
        for k, n in enumerate(flat):
            res[k] = Fraction(n, den)
        return out

    def encode(self, a) -> str:
        a = self.raw(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def decode(self, literal):
        return _parse_fraction(literal)

    def descriptor(self) -> dict:
        return {"kind": "rational"}

    def spec_string(self) -> str:
        return "rational"

    def roots_of_unity_order_bound(self) -> int:
        return 2

    def primitive_root_of_unity(self, n: int):
        if n == 1:
            return Fraction(1)
        if n == 2:
            return Fraction(-1)
        return None

    def __repr__(self):
        return "Q"


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _parse_fraction(literal) -> Fraction:
    if isinstance(literal, bool):
        raise MalformedLiteral(f"boolean is not a scalar: {literal!r}")
    if isinstance(literal, (int, np.integer)):
        return Fraction(int(literal))
    if isinstance(literal, Fraction):
        return literal
    if not isinstance(literal, str):
        raise MalformedLiteral(f"expected a string like 'a/b', got {literal!r}")
    m = _FRACTION_RE.match(literal.replace("−", "-"))
    if not m:
        raise MalformedLiteral(f"bad rational literal {literal!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise MalformedLiteral(f"zero denominator in {literal!r}")
    return Fraction(int(m.group(1)), den)


class CyclotomicField(Field):
    """Q(zeta_n), elements stored in the power basis 1, z, ..., z^(phi(n)-1)."""

    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise FieldError("cyclotomic index must be >= 1")
        self.n = n
        self.phi = euler_phi(n)
        self.degree = self.phi
        self.modulus = cyclotomic_polynomial(n)
        # x^k mod Phi_n for phi <= k < 2 phi - 1
        phi = self.phi
        red = {}
        cur = [-Fraction(c) for c in self.modulus[:phi]]  # x^phi
        for k in range(phi, 2 * phi - 1):
            red[k] = tuple(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, self.modulus[:phi])]
        self._red = red
        self._zero = Cyc(self, (Fraction(0),) * phi)
        self._one = Cyc(self, (Fraction(1),) + (Fraction(0),) * (phi - 1))

    def _key(self):
        return (self.n,)

    def _scalar(self, q: Fraction) -> Cyc:
        return Cyc(self, (q,) + (Fraction(0),) * (self.phi - 1))

    def _mul(self, a: tuple, b: tuple) -> Cyc:
        phi = self.phi
        if phi == 1:
            return Cyc(self, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            t = prod[k]
            if t:
                out = [o + t * r for o, r in zip(out, self._red[k])]
        return Cyc(self, tuple(out))

    def _inv(self, a: Cyc) -> Cyc:
        if not a:
            raise DivisionByZero("inverse of 0")
        phi = self.phi
        # columns: a * z^k
        cols = []
        zk = self._one
        z = self.zeta_raw()
        for _ in range(phi):
            cols.append((a * zk).c)
            zk = zk * z
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(1 if i == 0 else 0)] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [x / pv for x in mat[c]]
            for r in range(phi):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return Cyc(self, tuple(mat[i][phi] for i in range(phi)))

    @functools.cached_property
    def _table(self) -> np.ndarray:
        """Integer tensor T[u, v, w]: coefficient of z^w in z^(u+v) mod Phi_n."""
        phi = self.phi
        T = np.zeros((phi, phi, phi), dtype=object)
        for u in range(phi):
            for v in range(phi):
                k = u + v
                if k < phi:
                    T[u, v, k] = 1
                else:
                    for w, c in enumerate(self._red[k]):
                        T[u, v, w] = int(c)
        return T

    def _lift(self, a):
        cached = _lift_cache_get(a)
        if cached is not None:
            return cached
        flat = a.reshape(-1)
        phi = self.phi
        den = math.lcm(*[c.denominator for x in flat for c in x.c]) if flat.size else 1
        nums = np.zeros((flat.size, phi), dtype=object)
        for k, x in enumerate(flat):
            if x:
                nums[k] = [c.numerator * (den // c.denominator) for c in x.c]
        res = (nums.reshape(a.shape + (phi,)), den)
        _lift_cache_put(a, res)
        return res

    def _unlift(self, a, den):
        a = np.asarray(a, dtype=object)
        shape = a.shape[:-1]
        flat = a.reshape(-1, self.phi)
        out = np.empty(flat.shape[0], dtype=object)
        zero = self._zero
        for k in range(flat.shape[0]):
            row = flat[k]
            if any(row):
                out[k] = Cyc(self, tuple(Fraction(n, den) for n in row))
            else:
                out[k] = zero
        return out.reshape(shape)

    def _contract1(self, ta, A, out):
        return np.einsum(f"{ta}U->{out}U", A)

    def _contract2(self, ta, A, tb, B, out):
        if self.phi == 1:
            return np.einsum(f"{ta}U,{tb}U->{out}U", A, B)
        E = np.einsum(f"{ta}U,{tb}V->{out}UV", A, B)
        return np.einsum("...UV,UVW->...W", E, self._table)

    def zeta_raw(self) -> Cyc:
        if self.phi == 1:
            # zeta_1 = 1, zeta_2 = -1
            return self._scalar(Fraction(1 if self.n == 1 else -1))
        return Cyc(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.phi - 2))

    def zeta(self) -> "FieldElement":
        return FieldElement(self, self.zeta_raw())

    def raw(self, value):
        if isinstance(value, Cyc):
            if value.field.n != self.n:
                raise FieldError("mixing cyclotomic fields")
            return value
        if isinstance(value, FieldElement):
            if value.field != self:
                if isinstance(value.field, RationalField):
                    return self._scalar(value.payload)
                raise FieldError(f"element of {value.field} used in {self}")
            return value.payload
        if isinstance(value, (int, np.integer, Fraction)):
            return self._scalar(Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value))
        if isinstance(value, (str, list, tuple)):
            return self.decode(value)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def from_coefficients(self, coeffs: Sequence) -> Cyc:
        """Reduce an arbitrary-length power-basis coefficient list modulo Phi_n."""
        coeffs = [_parse_fraction(c) for c in coeffs]
        # reduce modulo Phi_n using x^n = 1 first, then the table
        acc = self._zero
        z = self.zeta_raw()
        zk = self._one
        for c in coeffs:
            if c:
                acc = acc + zk * c
            zk = zk * z
        return acc

    def inv(self, a):
        return self._inv(self.raw(a))

    def encode(self, a) -> list[str]:
        a = self.raw(a)
        return [str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}" for c in a.c]

    def decode(self, literal):
        if isinstance(literal, (str, int, Fraction)) and not isinstance(literal, bool):
            return self._scalar(_parse_fraction(literal))
        if isinstance(literal, (list, tuple)):
            if not literal:
                raise MalformedLiteral("empty cyclotomic coefficient list")
            return self.from_coefficients(literal)
        raise MalformedLiteral(f"bad cyclotomic literal {literal!r}")

    def descriptor(self) -> dict:
        return {"kind": "cyclotomic", "n": self.n}

    def spec_string(self) -> str:
        return f"cyclotomic:{self.n}"

    def roots_of_unity_order_bound(self) -> int:
        return self.n * 2 // math.gcd(self.n, 2)

    def primitive_root_of_unity(self, n: int):
        w = self.roots_of_unity_order_bound()
        if w % n:
            return None
        # -zeta_n generates mu_w when n is odd; zeta_n itself when n is even
        gen = self.zeta_raw() if self.n % 2 == 0 else -self.zeta_raw()
        if self.n == 1:
            gen = self._scalar(Fraction(-1))
        return gen ** (w // n)

    def __repr__(self):
        return f"Q(zeta_{self.n})"


class PrimeField(Field):
    kind = "prime"
    degree = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64 if p < (1 << 20) else object

    def _key(self):
        return (self.p,)

    def raw(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value.payload
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return int(value) % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, str):
            return self.decode(value)
        raise FieldError(f"cannot coerce {value!r} into F_{self.p}")

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, -1, self.p)

    def neg(self, a):
        return (-int(a)) % self.p

    def reduce(self, a):
        return a % self.p

    def _lift(self, a):
        return a, 1

    def _unlift(self, a, den):
        return a % self.p

    def _contract2(self, ta, A, tb, B, out):
        A = np.asarray(A)
        B = np.asarray(B)
        if self.dtype is not object:
            sizes = dict(zip(ta, A.shape))
            sizes.update(zip(tb, B.shape))
            k = 1
            for ch in set(ta + tb) - set(out):
                k *= sizes[ch]
            # float64 BLAS is exact while every partial sum stays below 2^53
            if k * (self.p - 1) ** 2 < (1 << 53):
                if A.size and (A.min() < 0 or A.max() >= self.p):
                    A = A % self.p
                if B.size and (B.min() < 0 or B.max() >= self.p):
                    B = B % self.p
                r = np.einsum(f"{ta},{tb}->{out}", A.astype(np.float64), B.astype(np.float64), optimize=True)
                return np.rint(r).astype(np.int64) % self.p
        return np.einsum(f"{ta},{tb}->{out}", A, B) % self.p

    def encode(self, a) -> str:
        return str(int(a) % self.p)

    def decode(self, literal):
        if isinstance(literal, bool):
            raise MalformedLiteral(f"boolean is not a scalar: {literal!r}")
        if isinstance(literal, (int, np.integer)):
            return int(literal) % self.p
        if not isinstance(literal, str):
            raise MalformedLiteral(f"expected a decimal integer string, got {literal!r}")
        s = literal.strip().replace("−", "-")
        if not re.fullmatch(r"[+-]?\d+", s):
            if _FRACTION_RE.match(s):
                raise NonReducibleResidue(f"prime-field literal must be an integer, got {literal!r}")
            raise MalformedLiteral(f"bad prime-field literal {literal!r}")
        return int(s) % self.p

    def descriptor(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def spec_string(self) -> str:
        return f"prime:{self.p}"

    def roots_of_unity_order_bound(self) -> int:
        return self.p - 1

    def generator(self) -> int:
        """Least primitive root modulo p."""
        qs = list(factorint(self.p - 1)) if self.p > 2 else []
        for g in range(1, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in qs):
                return g
        raise AssertionError("no primitive root")  # pragma: no cover

    def primitive_root_of_unity(self, n: int):
        if (self.p - 1) % n:
            return None
        return pow(self.generator(), (self.p - 1) // n, self.p)

    def __repr__(self):
        return f"F_{self.p}"


# ---------------------------------------------------------------------------
# public scalar


@dataclass(frozen=True)
class FieldElement:
    field: Field
    payload: Any

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixing {self.field} and {other.field}")
            return other.payload
        return self.field.raw(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.raw(self.payload + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.raw(self.payload - self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.raw(self._other(other) - self.payload))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.raw(self.payload * self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.payload))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.payload))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._other(other)).inverse()

    def __rtruediv__(self, other):
        return FieldElement(self.field, self._other(other)) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElement(self.field, self.field.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return not self.field.is_zero(self.payload)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.payload == other.payload
        try:
            return self.payload == self.field.raw(other)
        except (FieldError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def multiplicative_order(self) -> int | None:
        """Exact order of a nonzero element, None when it is not a root of unity."""
        if not self:
            raise DivisionByZero("0 has no multiplicative order")
        bound = self.field.roots_of_unity_order_bound()
        for d in sorted(_divisors(bound)):
            if self ** d == 1:
                return d
        return None

    def encode(self):
        return self.field.encode(self.payload)

    def __repr__(self):
        return f"FieldElement({self.field!r}, {self.payload})"


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# module-level conveniences


@functools.lru_cache(maxsize=None)
def make_field(kind: str, n: int | None = None) -> Field:
    kind = kind.lower()
    if kind in ("rational", "q"):
        return RationalField()
    if kind == "cyclotomic":
        if n is None:
            raise FieldError("cyclotomic field needs n")
        return RationalField() if n == 1 else CyclotomicField(n)
    if kind in ("prime", "primefield"):
        if n is None:
            raise FieldError("prime field needs p")
        return PrimeField(n)
    raise FieldError(f"unknown field kind {kind!r}")


def parse_field(spec: str | dict) -> Field:
    """'rational', 'cyclotomic:3', 'prime:7' or a descriptor dict."""
    if isinstance(spec, dict):
        kind = spec.get("kind")
        num = spec.get("n", spec.get("p"))
        if not isinstance(kind, str) or (num is not None and (not isinstance(num, int) or isinstance(num, bool))):
            raise FieldError(f"bad field descriptor {spec!r}")
        return make_field(kind, num)
    if not isinstance(spec, str):
        raise FieldError(f"bad field descriptor {spec!r}")
    s = spec.strip().lower()
    if ":" in s:
        kind, _, num = s.partition(":")
        try:
            return make_field(kind, int(num))
        except ValueError as exc:
            raise FieldError(str(exc)) from exc
    return make_field(s)


def parse_scalar(literal: Any, F: Field) -> FieldElement:
    return F.parse(literal)


def invert_scalar(a: FieldElement) -> FieldElement:
    return a.inverse()


def primitive_root_of_unity(F: Field, n: int) -> FieldElement | None:
    if n < 1:
        raise ValueError("n must be >= 1")
    z = F.primitive_root_of_unity(n)
    return None if z is None else FieldElement(F, F.raw(z))


def iter_field_elements(F: Field, values: Iterable) -> list[FieldElement]:
    return [F(v) for v in values]
