"""Theorem-check harness: runs exact checks of the exponent identities on one algebra.

Each check records a name, the formula it tests, a status (pass / fail /
skipped) and a witness.  Suites: invariance, smash, finiteness, primitive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import coradical as cr
from .constructions import cyclic_group, group_algebra
from .deform import drinfeld_double, hopf_map_report, smash_s2, twist
from .exponent import (
    ExponentResult,
    Unknown,
    brute_force_exponent,
    exponent_2i,
    find_pivotal,
    grouplikes,
    pivotal_elements,
    pivotal_power_identity_check,
)
from .hopf import HopfAlgebra, coopposite, dual, opposite, same_structure, tensor
from .io import FORMAT_VERSION
from .poly import INFINITE, ext_divides, ext_lcm

__all__ = [
    "PASS",
    "FAIL",
    "SKIPPED",
    "Check",
    "VerificationReport",
    "Skip",
    "SUITES",
    "run_suite",
    "Context",
]

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
SUITES = ("invariance", "smash", "finiteness", "primitive")


class Skip(Exception):
    """Raised inside a check whose preconditions do not hold."""


@dataclass
class Check:
    name: str
    paper_anchor: str
    status: str
    witness: Any = None

    def as_dict(self) -> dict:
        return {"name": self.name, "paper_anchor": self.paper_anchor, "status": self.status,
                "witness": self.witness}


@dataclass
class VerificationReport:
    subject: str
    suite: str
    checks: list[Check] = field(default_factory=list)
    exponents: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "kind": "verification_report",
            "subject": self.subject,
            "suite": self.suite,
            "checks": [c.as_dict() for c in self.checks],
            "exponents": self.exponents,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "VerificationReport":
        checks = [Check(c["name"], c["paper_anchor"], c["status"], c.get("witness")) for c in doc["checks"]]
        return cls(doc["subject"], doc["suite"], checks, dict(doc.get("exponents", {})))


def _jsonable(v):
    if v is INFINITE:
        return "infinite"
    if isinstance(v, Unknown):
        return str(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


class Context:
    """Memoizes exponents and derived algebras while a suite runs."""

    def __init__(self, H: HopfAlgebra, bound: int = 200, seed: int = 0, double_max_dim: int | None = None):
        self.H = H
        self.bound = bound
        self.seed = seed
        if double_max_dim is None:
            # doubles over cyclotomic fields are slow; the prime and rational ones are cheap
            double_max_dim = 81 if H.field.characteristic else 36
        self.double_max_dim = double_max_dim
        self._exp: dict = {}
        self._derived: dict = {}

    def exp(self, A: HopfAlgebra, i: int) -> ExponentResult:
        key = (id(A), i % A.s2_order)
        if key not in self._exp:
            self._exp[key] = (A, exponent_2i(A, i))
        return self._exp[key][1]

    def derived(self, key: str, build: Callable[[], Any]):
        if key not in self._derived:
            self._derived[key] = build()
        return self._derived[key]

    def double(self):
        if self.H.dim ** 2 > self.double_max_dim:
            raise Skip(f"double of dimension {self.H.dim ** 2} exceeds the limit {self.double_max_dim}")
        return self.derived("double", lambda: drinfeld_double(self.H))

    def smash(self):
        return self.derived("smash", lambda: smash_s2(self.H))


def _run(report: VerificationReport, name: str, anchor: str, fn: Callable[[], tuple[bool, Any]]) -> None:
    try:
        ok, witness = fn()
        status = PASS if ok else FAIL
    except Skip as s:
        status, witness = SKIPPED, {"reason": str(s)}
    report.checks.append(Check(name, anchor, status, witness))


def _vals(*results: ExponentResult) -> list:
    return [_jsonable(r.value) for r in results]


# ---------------------------------------------------------------------------
# invariance


def _equal_exps(ctx: Context, others: list[HopfAlgebra], i: int):
    base = ctx.exp(ctx.H, i)
    rs = [ctx.exp(K, i) for K in others]
    return all(r.value == base.value for r in rs), {"H": _jsonable(base.value), "others": _vals(*rs)}


def _invariance(ctx: Context, report: VerificationReport) -> None:
    H = ctx.H
    F = H.field
    Hd = ctx.derived("dual", lambda: dual(H))
    Hop = ctx.derived("op", lambda: opposite(H))
    Hcop = ctx.derived("cop", lambda: coopposite(H))
    Z2 = ctx.derived("z2", lambda: group_algebra(cyclic_group(2), F))
    HZ = ctx.derived("tensor", lambda: tensor(H, Z2))
    names = {0: ("exp0", "exp_0"), -1: ("exp", "exp")}
    for i, (short, sym) in names.items():
        _run(report, f"{short}_dual", f"{sym}(H*) = {sym}(H)", lambda i=i: _equal_exps(ctx, [Hd], i))
        _run(report, f"{short}_op_cop", f"{sym}(H^op) = {sym}(H^cop) = {sym}(H)",
             lambda i=i: _equal_exps(ctx, [Hop, Hcop], i))

        def tens(i=i):
            v = ctx.exp(HZ, i).value
            want = ext_lcm(ctx.exp(H, i).value, ctx.exp(Z2, i).value)
            return v == want, {"tensor": _jsonable(v), "lcm": _jsonable(want)}

        _run(report, f"{short}_tensor_lcm", f"{sym}(H ⊗ H') = lcm({sym}(H), {sym}(H'))", tens)

    def trivial_twist():
        J = np.multiply.outer(H.unit, H.unit)
        HJ = twist(H, J, J)
        back = twist(HJ, J, J)
        ok = same_structure(HJ, H) and same_structure(back, H)
        same = [ctx.exp(HJ, i).value == ctx.exp(H, i).value for i in (0, -1)]
        return ok and all(same), {"structure_unchanged": ok, "exponents_equal": same}

    _run(report, "trivial_twist", "exp(H^J) = exp(H), exp_0(H^J) = exp_0(H), (H^J)^(J^-1) = H", trivial_twist)

    for i, (short, sym) in names.items():
        def dbl(i=i):
            D = ctx.double().algebra
            return _equal_exps(ctx, [D], i)

        _run(report, f"{short}_double", f"{sym}(D(H)) = {sym}(H)", dbl)

    def involutory():
        if not H.is_involutory():
            raise Skip("S^2 is not the identity")
        a, b = ctx.exp(H, 0), ctx.exp(H, -1)
        return a.value == b.value, {"exp0": _jsonable(a.value), "exp": _jsonable(b.value)}

    _run(report, "involutory_equality", "S^2 = id ⟹ exp_0(H) = exp(H)", involutory)

    def dim_cubed():
        if cr.loewy_length(H) != 1 or cr.loewy_length(Hd) != 1:
            raise Skip("not semisimple and cosemisimple")
        e = ctx.exp(H, -1).value
        return ext_divides(e, H.dim ** 3), {"exp": _jsonable(e), "dim^3": H.dim ** 3}

    _run(report, "exp_divides_dim_cubed", "exp(H) | dim(H)^3", dim_cubed)

    for i, (short, sym) in names.items():
        def period(i=i):
            e = ctx.exp(H, i).value
            if e is INFINITE:
                raise Skip(f"{sym}(H) is infinite")
            hits = _hits(H, i, 2 * e + 1)
            want = [n for n in range(1, 2 * e + 2) if n % e == 0]
            return hits == want, {"hits": hits}

        _run(report, f"{short}_period", f"T_n = u∘ε ⟺ {sym}(H) | n", period)


def _hits(H: HopfAlgebra, i: int, nmax: int) -> list[int]:
    F = H.field
    P = H.s2_power(i)
    T, out = H.identity, []
    for n in range(1, nmax + 1):
        if F.array_equal(T, H.unit_counit):
            out.append(n)
        T = H.step(F.dot(P, T))
    return out


# ---------------------------------------------------------------------------
# smash product and pivotal elements


def _smash(ctx: Context, report: VerificationReport) -> None:
    H = ctx.H
    F = H.field
    d = H.s2_order

    def lcm_twisted():
        K = ctx.smash().result
        direct = ctx.exp(K, -1).value
        tw = [ctx.exp(H, i).value for i in range(d)]
        want = ext_lcm(*tw)
        return direct == want, {"smash": _jsonable(direct), "exp_2i": [_jsonable(v) for v in tw]}

    _run(report, "smash_lcm_twisted", "exp(H ⋊ k⟨S^2⟩) = lcm(exp_2i(H) | i ∈ Z)", lcm_twisted)

    def lcm_pair():
        K = ctx.smash().result
        direct = ctx.exp(K, -1).value
        want = ext_lcm(ctx.exp(H, 0).value, ctx.exp(H, -1).value)
        return direct == want, {"smash": _jsonable(direct), "lcm": _jsonable(want)}

    _run(report, "smash_lcm_exp", "exp(H ⋊ k⟨S^2⟩) = lcm(exp_0(H), exp(H))", lcm_pair)

    def pivot():
        sm = ctx.smash()
        K = sm.result
        piv = pivotal_elements(K)
        coords = [np.asarray(g.coordinates) for g in piv]
        hit = any(F.array_equal(c, sm.pivot) for c in coords)
        return hit, {"pivotal_count": len(piv), "pivot_index": sm.pivot_index}

    _run(report, "smash_pivotal", "S^2(h) = g h g^-1 with g = 1 ⋊ S^2", pivot)

    def pivotal_eq():
        K = ctx.smash().result
        if find_pivotal(K) is None:
            return False, {"reason": "no pivotal grouplike"}
        a, b = ctx.exp(K, 0).value, ctx.exp(K, -1).value
        return a == b, {"exp0": _jsonable(a), "exp": _jsonable(b)}

    _run(report, "pivotal_equality", "g pivotal ⟹ exp_0(H) = exp(H)", pivotal_eq)

    def embedding():
        sm = ctx.smash()
        rep = hopf_map_report(H, sm.result, sm.embed)
        return rep.ok, rep.as_dict() if not rep.ok else None

    _run(report, "smash_embedding", "H ≅ H ⋊ id ↪ H ⋊ k⟨S^2⟩", embedding)

    def loewy():
        a, b = cr.loewy_length(H), cr.loewy_length(ctx.smash().result)
        return a == b, {"H": a, "smash": b}

    _run(report, "smash_loewy", "Lw(H ⋊ k⟨S^2⟩) = Lw(H)", loewy)

    def s2_order():
        D = ctx.double().algebra
        return D.s2_order == d, {"H": d, "D(H)": D.s2_order}

    _run(report, "double_s2_order", "ord(S_D(H)^2) = ord(S^2)", s2_order)

    def power_identity():
        rng = random.Random(ctx.seed)
        gs = grouplikes(H)
        bad = []
        for g in gs:
            for n in range(1, 5):
                h = F.asarray([rng.randint(-3, 3) for _ in range(H.dim)])
                if not pivotal_power_identity_check(H, g, n, h):
                    bad.append({"g": [F.encode(v) for v in g.coordinates], "n": n})
        return not bad, {"grouplikes": len(gs), "failures": bad}

    _run(report, "grouplike_power_identity", "(hg)^[n] = Σ h_1 φ(h_2) ⋯ φ^(n-1)(h_n) g^n", power_identity)

    def twisted_divisibility():
        out = {}
        ok = True
        for i in range(d):
            e = ctx.exp(H, i).value
            if e is INFINITE:
                out[str(i)] = "infinite"
                continue
            hits = _hits(H, i, 2 * e + 1)
            good = hits == [n for n in range(1, 2 * e + 2) if n % e == 0]
            ok = ok and good
            out[str(i)] = {"exp": e, "hits": hits}
        return ok, out

    _run(report, "twisted_period_divisibility", "T_n^(2i) = u∘ε ⟺ exp_2i(H) | n (empirical)",
         twisted_divisibility)


# ---------------------------------------------------------------------------
# finiteness


def _finiteness(ctx: Context, report: VerificationReport) -> None:
    H = ctx.H
    F = H.field
    p = F.characteristic
    if p:
        for i, sym in ((0, "exp_0"), (-1, "exp")):
            _run(report, f"{'exp0' if i == 0 else 'exp'}_finite", f"{sym}(H) < ∞ in characteristic p",
                 lambda i=i: (ctx.exp(H, i).finite, {"value": _jsonable(ctx.exp(H, i).value)}))

        def bounds():
            if not cr.is_dual_chevalley(H):
                raise Skip("no dual Chevalley property")
            H0 = cr.coradical_hopf_algebra(H)
            L = cr.loewy_length(H)
            M = 1
            while p ** M < L:
                M += 1
            n0 = ctx.exp(H0, 0).value
            n1 = ext_lcm(ctx.exp(H0, -1).value, n0)
            return dict(H0=H0, L=L, M=M, N0=n0, N1=n1)

        def exp0_bound():
            b = bounds()
            e = ctx.exp(H, 0).value
            target = b["N0"] * p ** b["M"]
            return ext_divides(e, target), {"exp0": _jsonable(e), "N": b["N0"], "L": b["L"], "M": b["M"],
                                            "Np^M": target}

        def exp_bound():
            b = bounds()
            e = ctx.exp(H, -1).value
            target = b["N1"] * p ** b["M"]
            return ext_divides(e, target), {"exp": _jsonable(e), "N": b["N1"], "L": b["L"], "M": b["M"],
                                            "Np^M": target}

        def proof_variant():
            b = bounds()
            e0, e = ctx.exp(H, 0).value, ctx.exp(H, -1).value
            t0, t1 = b["N0"] * p ** b["L"], b["N1"] * p ** b["L"]
            return ext_divides(e0, t0) and ext_divides(e, t1), {"exp0": _jsonable(e0), "exp": _jsonable(e),
                                                                 "N0p^L": t0, "Np^L": t1}

        _run(report, "exp0_divides_Np^M", "exp_0(H) | N p^M, N = exp_0(H_0), p^M ≥ Lw(H)", exp0_bound)
        _run(report, "exp_divides_Np^M", "exp(H) | N p^M, N = lcm(exp(H_0), exp_0(H_0)), p^M ≥ Lw(H)", exp_bound)
        _run(report, "exp_divides_Np^L", "exp(H) | N p^L (weaker bound, M <= L)", proof_variant)
    else:
        def cosemisimple_finite():
            if cr.loewy_length(H) != 1:
                raise Skip("not cosemisimple")
            e = ctx.exp(H, -1)
            return e.finite, {"exp": _jsonable(e.value)}

        _run(report, "exp_finite_semisimple", "exp(H) < ∞ for H semisimple and cosemisimple", cosemisimple_finite)

        def infinite(i):
            def fn():
                if cr.loewy_length(H) == 1:
                    raise Skip("cosemisimple")
                if not cr.is_dual_chevalley(H):
                    raise Skip("no dual Chevalley property")
                r = ctx.exp(H, i)
                cert = type(r.order.evidence).__name__ if r.order is not None else None
                ok = r.value is INFINITE and cert in ("NonSquarefree", "NonCyclotomicFactor")
                return ok, {"value": _jsonable(r.value), "certificate": cert}
            return fn

        _run(report, "exp0_infinite", "non-cosemisimple, dual Chevalley, char 0 ⟹ exp_0(H) = ∞", infinite(0))
        _run(report, "exp_infinite", "non-cosemisimple, dual Chevalley, char 0 ⟹ exp(H) = ∞", infinite(-1))

    for i, short in ((0, "exp0"), (-1, "exp")):
        def oracle(i=i):
            r = ctx.exp(H, i)
            b = brute_force_exponent(H, i, ctx.bound)
            if r.finite:
                ok = b == r.value
            else:
                ok = isinstance(b, Unknown)
            return ok, {"decision": _jsonable(r.value), "brute_force": _jsonable(b), "bound": ctx.bound}

        _run(report, f"{short}_brute_force", "T_n computed literally for n ≤ bound", oracle)


# ---------------------------------------------------------------------------
# primitive matrices


def _grid_json(F, X):
    return [[[F.encode(v) for v in X[i, j]] for j in range(X.shape[1])] for i in range(X.shape[0])]


def _primitive(ctx: Context, report: VerificationReport, n_max: int = 12) -> None:
    H = ctx.H
    F = H.field

    def setup():
        def build():
            if F.characteristic != 0:
                raise Skip("characteristic-zero statements")
            if cr.loewy_length(H) == 1:
                raise Skip("cosemisimple: no nontrivial primitive matrices")
            if not cr.is_dual_chevalley(H):
                raise Skip("no dual Chevalley property")
            found = []
            for s in cr.simple_decomposition(H, seed=ctx.seed):
                C = cr.basic_multiplicative_matrix(H, s)
                if isinstance(C, cr.NotSplit):
                    continue
                P = cr.primitive_space(H, C, cr.MultiplicativeMatrix.one(H))
                if P.has_nontrivial:
                    found.append((C, P))
            return found
        return ctx.derived("primitive", build)

    def exists():
        found = setup()
        return bool(found), {"blocks_with_nontrivial": [C.size for C, _ in found]}

    _run(report, "nontrivial_primitive_exists", "a non-trivial (C,1)-primitive matrix exists", exists)

    def pairing():
        found = setup()
        lam = cr.integral_coradical(H)
        res = [cr.lambda_pairing_check(H, X, lam) for _, P in found for X in P.nontrivial]
        return bool(res) and all(res), {"checked": len(res)}

    _run(report, "integral_pairing_nonzero", "Λ_0 X ≠ 0 and X Λ_0 ≠ 0", pairing)

    def s2n():
        found = setup()
        from .linalg import matrix_power

        out = []
        for C, _ in found:
            space, A, N = cr.s2_primitive_action(H, C)
            out.append((F.array_equal(matrix_power(F, A, N), F.eye(A.shape[0])), N))
        return bool(out) and all(o for o, _ in out), {"N": [n for _, n in out]}

    _run(report, "s2N_fixes_primitive", "S^(2N)(X) = X, N = exp(H_0)", s2n)

    def eigen():
        found = setup()
        C = found[0][0]
        try:
            eig = cr.s2_primitive_eigens(H, C)
        except cr.FieldLacksRoots as exc:
            raise Skip(str(exc))
        if not eig:
            return False, {"reason": "no nontrivial eigen-primitive"}
        ctx._derived["eigen"] = (C, eig[0])
        N = cr.s2_primitive_action(H, C)[2]
        q = eig[0].q
        return q ** N == 1, {"q": q.encode(), "N": N, "X": _grid_json(F, eig[0].X)}

    _run(report, "s2_eigen_primitive", "S^2(X) = qX with q^N = 1", eigen)

    def xpower(name):
        def fn():
            if "eigen" not in ctx._derived:
                raise Skip("no eigen-primitive available")
            C, ep = ctx._derived["eigen"]
            rep = ctx.derived("xpower", lambda: cr.xpower_identity_report(H, C, ep.X, ep.q, n_max))
            c = rep[name]
            return c.passed, c.witness
        return fn

    _run(report, "antipode_on_X", "S(X) = -S(C) X", xpower("antipode_on_X"))
    _run(report, "s2_on_X", "q X = S^2(X) = ((S(C) X)^T S^2(C)^T)^T", xpower("s2_on_X"))
    _run(report, "commuting", "S(C) X = q (X^T S(C)^T)^T", xpower("commuting"))
    _run(report, "twisted_power_formula", "m_n(id ⊗ S^2 ⊗ ⋯ ⊗ S^(2n-2))Δ_n(X) = Σ_(i<n) q^i C^i X",
         xpower("twisted_power_formula"))
    _run(report, "integral_pairing_identity", "q^(-n+1) S(C)^(n-1) (Σ_(i<n) q^i C^i X) Λ_0 = n X Λ_0",
         xpower("integral_pairing"))
    _run(report, "twisted_power_nonzero", "Σ_(i<n) q^i C^i X ≠ 0 for all n", xpower("nonvanishing"))


_SUITE_FUNCS = {
    "invariance": _invariance,
    "smash": _smash,
    "finiteness": _finiteness,
    "primitive": _primitive,
}


def run_suite(H: HopfAlgebra, suite: str = "all", subject: str = "", bound: int = 200, seed: int = 0,
              double_max_dim: int | None = None) -> VerificationReport:
    if suite != "all" and suite not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {suite!r}")
    ctx = Context(H, bound=bound, seed=seed, double_max_dim=double_max_dim)
    report = VerificationReport(subject, suite)
    for name in (SUITES if suite == "all" else (suite,)):
        _SUITE_FUNCS[name](ctx, report)
    for i in (0, -1):
        report.exponents[str(i)] = ctx.exp(H, i).summary()
    return report
