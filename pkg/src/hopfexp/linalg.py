"""Exact dense linear algebra over :mod:`hopfexp.fields`.

Matrices are numpy arrays of raw payloads; every routine takes the field as
its first argument.  Elimination always pivots on the first nonzero entry.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .fields import Field
from .poly import OrderResult, Polynomial, root_of_unity_order

__all__ = [
    "LinAlgError",
    "DimensionMismatch",
    "NoSolution",
    "Singular",
    "rref",
    "rank",
    "kernel_basis",
    "solve_linear",
    "inverse",
    "column_space",
    "coordinates",
    "in_span",
    "intersect_spaces",
    "Echelon",
    "relative_min_poly",
    "minimal_polynomial",
    "matrix_power",
    "matrix_multiplicative_order",
    "evaluate_poly_at",
]


class LinAlgError(ArithmeticError):
    pass


class DimensionMismatch(LinAlgError, ValueError):
    pass


class NoSolution(LinAlgError):
    """A.x = b is inconsistent.  ``certificate`` is a reduced row (y with yA = 0, yb != 0)."""

    def __init__(self, certificate):
        super().__init__("linear system has no solution")
        self.certificate = certificate


class Singular(LinAlgError):
    pass


def _first_nonzero(F: Field, v: np.ndarray):
    if v.dtype == object:
        for i, x in enumerate(v):
            if not F.is_zero(x):
                return i
        return None
    nz = np.flatnonzero(v)
    return int(nz[0]) if len(nz) else None


def _nonzero_indices(F: Field, v: np.ndarray) -> np.ndarray:
    if v.dtype == object:
        return np.array([i for i, x in enumerate(v) if not F.is_zero(x)], dtype=np.int64)
    return np.flatnonzero(v)


def rref(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = F.reduce(np.array(A, dtype=F.dtype, copy=True))
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = _first_nonzero(F, R[r:, c])
        if i is None:
            continue
        i += r
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.reduce(R[r] * F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = F.zero
        # touch only the rows and columns that change; the tables are sparse
        rs = _nonzero_indices(F, col)
        if len(rs):
            cs = _nonzero_indices(F, R[r])
            R[np.ix_(rs, cs)] = F.reduce(R[np.ix_(rs, cs)] - np.outer(col[rs], R[r, cs]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def kernel_basis(F: Field, A: np.ndarray) -> np.ndarray:
    """Columns spanning {x : A x = 0}; shape (cols, nullity)."""
    A = np.asarray(A)
    rows, cols = A.shape
    if rows == 0:
        return F.eye(cols)
    R, pivots = rref(F, A)
    piv = set(pivots)
    free = [c for c in range(cols) if c not in piv]
    K = F.zeros((cols, len(free)))
    for k, fc in enumerate(free):
        K[fc, k] = F.one
    if pivots and free:
        K[np.ix_(pivots, range(len(free)))] = F.reduce(-R[: len(pivots)][:, free])
    return K


def solve_linear(F: Field, A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One solution of A x = b (columns of b solved simultaneously when 2-D)."""
    A = np.asarray(A)
    b = np.asarray(b)
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"A has {A.shape[0]} rows, b has {b.shape[0]}")
    vec = b.ndim == 1
    B = b.reshape(b.shape[0], -1)
    rows, cols = A.shape
    aug = np.concatenate([F.asarray(A), F.asarray(B), F.eye(rows)], axis=1)
    # the identity block records the row operations, for the certificate
    R, pivots = rref(F, aug)
    nb = B.shape[1]
    bad = [p for p in pivots if cols <= p < cols + nb]
    if bad:
        r = pivots.index(bad[0])
        raise NoSolution(R[r, cols + nb:])
    pivots = [p for p in pivots if p < cols]
    X = F.zeros((cols, B.shape[1]))
    for r, pc in enumerate(pivots):
        X[pc] = R[r, cols: cols + nb]
    return X[:, 0] if vec else X


def inverse(F: Field, A: np.ndarray) -> np.ndarray:
    n, m = A.shape
    if n != m:
        raise DimensionMismatch("inverse of a non-square matrix")
    R, pivots = rref(F, np.concatenate([F.asarray(A), F.eye(n)], axis=1))
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise Singular("matrix is singular")
    return R[:, n:]


def column_space(F: Field, A: np.ndarray) -> np.ndarray:
    """Independent columns (reduced) spanning the column space; shape (rows, rank)."""
    if A.shape[1] == 0:
        return F.zeros((A.shape[0], 0))
    R, pivots = rref(F, np.asarray(A).T)
    return R[: len(pivots)].T.copy()


def coordinates(F: Field, B: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coordinates of v (vector or columns) in the independent columns of B."""
    return solve_linear(F, B, v)


def in_span(F: Field, B: np.ndarray, v: np.ndarray) -> bool:
    if B.shape[1] == 0:
        return F.array_is_zero(v)
    v2 = v.reshape(v.shape[0], -1)
    return rank(F, np.concatenate([B, v2], axis=1)) == rank(F, B)


def intersect_spaces(F: Field, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Basis (columns) of colspace(U) ∩ colspace(V)."""
    if U.shape[1] == 0 or V.shape[1] == 0:
        return F.zeros((U.shape[0], 0))
    K = kernel_basis(F, np.concatenate([U, F.reduce(-V)], axis=1))
    return column_space(F, F.dot(U, K[: U.shape[1]]))


class Echelon:
    """Incrementally reduced set of vectors that remembers how each row was formed.

    ``add(v)`` returns None if v was independent of what came before, otherwise
    the coefficient vector c (over the added vectors, in insertion order) with
    v = sum c_k v_k.
    """

    def __init__(self, F: Field, length: int):
        self.F = F
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self.combos: list[np.ndarray] = []  # row k = sum combos[k][j] * vector_j
        self.count = 0

    def reduce(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        F = self.F
        v = F.reduce(np.array(v, dtype=F.dtype, copy=True))
        combo = F.zeros(self.count + 1)
        for row, pc, cmb in zip(self.rows, self.pivots, self.combos):
            f = v[pc]
            if not F.is_zero(f):
                v = F.reduce(v - f * row)
                combo[: len(cmb)] = F.reduce(combo[: len(cmb)] - f * cmb)
        return v, combo

    def add(self, v: np.ndarray):
        F = self.F
        red, combo = self.reduce(v)
        nz = np.flatnonzero(red != F.zero) if red.dtype != object else [i for i, x in enumerate(red) if x]
        if len(nz) == 0:
            # v - sum(-combo) = red = 0  ->  v = -combo
            return F.reduce(-combo[: self.count])
        pc = int(nz[0])
        inv = F.inv(red[pc])
        combo[self.count] = F.one
        self.rows.append(F.reduce(red * inv))
        self.combos.append(F.reduce(combo * inv))
        self.pivots.append(pc)
        self.count += 1
        return None

    def express(self, v: np.ndarray):
        """Coefficients of v over the added vectors, or None if v is outside their span."""
        F = self.F
        red, combo = self.reduce(v)
        if not F.array_is_zero(red):
            return None
        return F.reduce(-combo[: self.count])


def _as_operator(F: Field, L) -> Callable[[np.ndarray], np.ndarray]:
    if callable(L):
        return L
    L = np.asarray(L)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise DimensionMismatch("operator must be a square matrix")
    return lambda v: F.dot(L, v)


def relative_min_poly(F: Field, L, v: np.ndarray, return_krylov: bool = False):
    """Monic generator of {p : p(L) v = 0}, by building the Krylov sequence v, Lv, ...

    ``L`` is a square matrix or any callable acting on vectors shaped like v.
    With ``return_krylov`` also returns the Echelon of the flattened Krylov
    vectors and the list of those vectors.
    """
    op = _as_operator(F, L)
    v = np.asarray(v)
    if not callable(L) and np.asarray(L).shape[1] != v.shape[0]:
        raise DimensionMismatch("operator and vector sizes differ")
    shape = v.shape
    ech = Echelon(F, v.size)
    vecs = []
    cur = F.reduce(np.array(v, dtype=F.dtype))
    while True:
        dep = ech.add(cur.reshape(-1))
        if dep is not None:
            m = len(vecs)
            coeffs = [F.neg(c) for c in dep] + [F.one]
            g = Polynomial(F, coeffs)
            assert g.degree == m
            if return_krylov:
                return g, ech, vecs
            return g
        vecs.append(cur)
        cur = F.reduce(np.asarray(op(cur)).reshape(shape))


def minimal_polynomial(F: Field, M: np.ndarray) -> Polynomial:
    """Minimal polynomial of a square matrix (Krylov sequence of I under X -> M X)."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    return relative_min_poly(F, lambda X: F.dot(M, X), F.eye(n))


def matrix_power(F: Field, M: np.ndarray, k: int) -> np.ndarray:
    n = M.shape[0]
    if k < 0:
        M = inverse(F, M)
        k = -k
    result = F.eye(n)
    base = M
    while k:
        if k & 1:
            result = F.dot(result, base)
        base = F.dot(base, base)
        k >>= 1
    return result


def evaluate_poly_at(F: Field, p: Polynomial, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    acc = F.zeros((n, n))
    for c in reversed(p.coeffs):
        acc = F.reduce(F.dot(acc, M) + F.eye(n) * c)
    return acc


def matrix_multiplicative_order(F: Field, M: np.ndarray) -> OrderResult:
    """Order of an invertible matrix as a group element (INFINITE when unbounded)."""
    g = minimal_polynomial(F, M)
    if F.is_zero(g.coeffs[0]):
        raise Singular("matrix is not invertible")
    res = root_of_unity_order(g)
    if res.finite:
        assert F.array_equal(matrix_power(F, M, res.value), F.eye(M.shape[0]))
    return res
