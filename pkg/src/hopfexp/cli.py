"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import coradical as cr
from . import io
from .constructions import (
    FiniteGroupTable,
    InvalidGroupTable,
    NoPrimitiveRoot,
    dual_group_algebra,
    from_description,
    group_algebra,
    klein_four,
    named_group,
    taft,
)
from .deform import InvalidTwist, bicharacter_twist, drinfeld_double, smash_s2, twist
from .exponent import exponent_2i, grouplikes, pivotal_elements
from .fields import FieldError, parse_field
from .hopf import AxiomViolation, HopfAlgebra, NoAntipode, coopposite, dual, opposite, tensor, verify_axioms
from .linalg import LinAlgError
from .theorems import SUITES, run_suite

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False, default=_json_default) + "\n"


def _emit(args, doc, text: str | None = None) -> None:
    """Document to --out (atomically) or stdout; text mode prints ``text`` when given."""
    doc = json.loads(_dumps(doc))
    out = getattr(args, "out", None)
    if out:
        io.write_json(out, doc)
    if text is not None and getattr(args, "format", "text") == "text":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    elif not out:
        sys.stdout.write(io.canonical_json(doc))


def _load(path: str) -> HopfAlgebra:
    return from_description(path)


def _subject(H: HopfAlgebra) -> str:
    return io.digest(io.serialize(H))


# ---------------------------------------------------------------------------
# commands


def _group_table(spec: str) -> FiniteGroupTable:
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        doc = io.load_json(str(p))
        table = doc["table"] if isinstance(doc, dict) else doc
        return FiniteGroupTable(table, names=doc.get("names") if isinstance(doc, dict) else None)
    return named_group(spec)


def cmd_build(args) -> int:
    F = parse_field(args.field)
    kind = args.kind
    if kind in ("group", "dual-group"):
        if not args.table:
            raise UsageError(f"build {kind} needs --table")
        G = _group_table(args.table)
        H = group_algebra(G, F) if kind == "group" else dual_group_algebra(G, F)
    elif kind == "taft":
        if args.n is None:
            raise UsageError("build taft needs --n")
        H = taft(args.n, F, q=F.decode(args.q) if args.q is not None else None)
    elif kind == "h4":
        H = taft(2, F)
    elif kind == "beta-twist":
        H = dual_group_algebra(klein_four(), F)
        J = bicharacter_twist(H, lambda a, b: (-1) ** ((a >> 1) * (b & 1)))
        doc = io.serialize_twist(H, J, J, metadata={"name": "beta twist of k^(Z2xZ2)",
                                                    "beta": "(-1)^(a1 b2)"})
        _emit(args, doc)
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown kind {kind}")
    _emit(args, io.serialize(H, {"construction": {"kind": kind, "field": F.spec_string()}}))
    return EXIT_OK


def cmd_check(args) -> int:
    H = io.parse_document(args.doc)
    rep = verify_axioms(H)
    doc = {"format_version": io.FORMAT_VERSION, "subject": _subject(H), "dim": H.dim,
           "field": H.field.spec_string(), "axioms": rep.as_dict()}
    lines = [f"{H.name}: dim {H.dim} over {H.field.spec_string()}"]
    lines += [f"  {'pass' if c.passed else 'FAIL'}  {c.name}" + ("" if c.passed else f"  witness={c.witness}")
              for c in rep.checks]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def cmd_exp(args) -> int:
    H = _load(args.doc)
    method = {"decide": "decision", "iterate": "brute_force"}[args.method]
    res = exponent_2i(H, args.i, method=method, bound=args.bound)
    summ = res.summary()
    doc = {"format_version": io.FORMAT_VERSION, "subject": _subject(H), "exponent": summ}
    label = {0: "exp_0", -1: "exp"}.get(args.i, f"exp_{2 * args.i}")
    lines = [f"{label}({H.name}) = {summ['value']}   [{res.method}]"]
    if res.order is not None:
        lines.append(f"  certificate: {res.order.summary()['evidence']['type']}")
    for note in res.notes:
        lines.append(f"  {note}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_transform(args) -> int:
    H = _load(args.doc)
    op = args.op
    meta: dict = {"provenance": {"op": op, "source": _subject(H)}}
    if op == "dual":
        K = dual(H)
    elif op == "op":
        K = opposite(H)
    elif op == "cop":
        K = coopposite(H)
    elif op == "double":
        D = drinfeld_double(H)
        K = D.algebra
        meta["R"] = {"left": [[H.field.encode(v) for v in row] for row in D.R_left],
                     "right": [[H.field.encode(v) for v in row] for row in D.R_right]}
    elif op == "smash-s2":
        sm = smash_s2(H)
        K = sm.result
        meta["pivot"] = {"index": sm.pivot_index, "name": K.basis_names[sm.pivot_index]}
    elif op == "twist":
        if not args.twist:
            raise UsageError("transform twist needs --twist DOC")
        J, Jinv = io.parse_twist(args.twist, H)
        K = twist(H, J, Jinv)
        meta["provenance"]["twist"] = io.digest(io.load_json(args.twist))
    elif op == "tensor":
        if not args.other:
            raise UsageError("transform tensor needs --with DOC")
        other = _load(args.other)
        if other.field != H.field:
            raise UsageError("tensor factors must share the base field")
        K = tensor(H, other)
        meta["provenance"]["with"] = _subject(other)
    else:  # pragma: no cover
        raise UsageError(f"unknown transform {op}")
    report = verify_axioms(K)
    if not report.ok:  # pragma: no cover - the constructions are verified elsewhere
        raise AxiomViolation(report)
    _emit(args, io.serialize(K, meta))
    return EXIT_OK


def _coradical_doc(H: HopfAlgebra, seed: int):
    F = H.field
    data = cr.coradical_filtration(H)
    simples = cr.simple_decomposition(H, seed=seed)
    chev = cr.is_dual_chevalley(H)
    doc = {
        "format_version": io.FORMAT_VERSION,
        "subject": _subject(H),
        "h0_dim": data.dim,
        "h0_basis": [[F.encode(v) for v in data.h0_basis[:, k]] for k in range(data.dim)],
        "filtration_dims": [B.shape[1] for B in data.filtration],
        "loewy_length": data.loewy_length,
        "dual_chevalley": chev.holds,
        "dual_chevalley_witness": chev.witness,
        "simples": [{"dim": s.dim, "split": s.split, "matrix_size": s.size, "note": s.note} for s in simples],
    }
    return doc


def cmd_coradical(args) -> int:
    H = _load(args.doc)
    doc = _coradical_doc(H, args.seed)
    status = EXIT_OK
    declared = (io.load_json(args.doc).get("metadata") or {}).get("coradical_basis")
    if declared is not None:
        F = H.field
        try:
            B = np.stack([np.array([F.decode(x) for x in col], dtype=F.dtype) for col in declared], axis=1)
        except (FieldError, ValueError, TypeError) as exc:
            raise io.ParseError(f"metadata.coradical_basis: {exc}") from exc
        rep = cr.verify_declared_coradical(H, B)
        doc["declared_coradical"] = rep.as_dict()
        status = EXIT_OK if rep.ok else EXIT_CHECK_FAILED
    lines = [
        f"{H.name}: dim H0 = {doc['h0_dim']}, filtration dims {doc['filtration_dims']}, "
        f"Loewy length {doc['loewy_length']}",
        f"  dual Chevalley: {doc['dual_chevalley']}",
        "  simple subcoalgebras: " + ", ".join(
            f"dim {s['dim']}" + ("" if s["split"] else " (not split)") for s in doc["simples"]),
    ]
    if "declared_coradical" in doc:
        lines.append(f"  declared coradical verified: {status == EXIT_OK}")
    _emit(args, doc, "\n".join(lines))
    return status


def cmd_grouplikes(args) -> int:
    H = _load(args.doc)
    F = H.field
    gs = grouplikes(H, cr.simple_decomposition(H, seed=args.seed))
    piv = pivotal_elements(H, gs)
    items = []
    for g in gs:
        support = [H.basis_names[k] for k in range(H.dim) if not F.is_zero(g.coordinates[k])]
        items.append({"coordinates": [F.encode(v) for v in g.coordinates], "order": g.order,
                      "support": support, "pivotal": g in piv})
    doc = {"format_version": io.FORMAT_VERSION, "subject": _subject(H), "grouplikes": items}
    lines = [f"{H.name}: {len(items)} grouplike(s)"]
    for it in items:
        lines.append(f"  order {it['order']}  support {it['support']}" + ("  pivotal" if it["pivotal"] else ""))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_primitive(args) -> int:
    H = _load(args.doc)
    F = H.field
    simples = cr.simple_decomposition(H, seed=args.seed)
    picks = range(len(simples)) if args.simple is None else [args.simple]
    blocks = []
    for k in picks:
        if not 0 <= k < len(simples):
            raise UsageError(f"--simple must be in [0, {len(simples)})")
        C = cr.basic_multiplicative_matrix(H, simples[k])
        if isinstance(C, cr.NotSplit):
            blocks.append({"simple": k, "split": False, "reason": C.reason})
            continue
        P = cr.primitive_space(H, C, cr.MultiplicativeMatrix.one(H))
        entry = {"simple": k, "split": True, "size": C.size, "space_dim": P.dim,
                 "trivial_dim": len(P.trivial), "nontrivial_dim": len(P.nontrivial)}
        if P.has_nontrivial and F.characteristic == 0 and cr.is_dual_chevalley(H):
            try:
                eig = cr.s2_primitive_eigens(H, C)
                entry["s2_eigenvalues"] = [F.encode(e.q.payload if hasattr(e.q, "payload") else e.q) for e in eig]
            except cr.FieldLacksRoots as exc:
                entry["s2_eigenvalues"] = f"unavailable: {exc}"
        blocks.append(entry)
    doc = {"format_version": io.FORMAT_VERSION, "subject": _subject(H), "blocks": blocks}
    lines = [f"{H.name}: (C,1)-primitive matrices"]
    for b in blocks:
        if not b["split"]:
            lines.append(f"  simple {b['simple']}: not split ({b['reason']})")
            continue
        line = (f"  simple {b['simple']} ({b['size']}x{b['size']}): space dim {b['space_dim']}, "
                f"nontrivial {b['nontrivial_dim']}")
        if "s2_eigenvalues" in b:
            line += f", S^2 eigenvalues {b['s2_eigenvalues']}"
        lines.append(line)
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_verify_theorems(args) -> int:
    H = _load(args.doc)
    rep = run_suite(H, args.suite, subject=_subject(H), bound=args.bound or 200, seed=args.seed)
    doc = rep.as_dict()
    counts = {s: sum(c.status == s for c in rep.checks) for s in ("pass", "fail", "skipped")}
    lines = [f"{H.name}: suite {args.suite}: {counts['pass']} pass, {counts['fail']} fail, "
             f"{counts['skipped']} skipped"]
    for c in rep.checks:
        tail = ""
        if c.status == "fail":
            tail = f"  witness={c.witness}"
        elif c.status == "skipped":
            tail = f"  ({c.witness['reason']})"
        lines.append(f"  {c.status:7s} {c.name}: {c.paper_anchor}{tail}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--out", default=d(None), help="write the resulting document or report here")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--bound", type=int, default=d(None), help="iteration bound for brute force")
    p.add_argument("--seed", type=int, default=d(0), help="seed for the randomized splitting steps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfexp", description="Exponents of finite-dimensional Hopf algebras")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("build", cmd_build, "construct a corpus algebra")
    sp.add_argument("kind", choices=("group", "dual-group", "taft", "h4", "beta-twist"))
    sp.add_argument("--table", help="group name (z6, k4, s3, z2xz3, ...) or JSON file with a Cayley table")
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", help="root of unity for taft, as a scalar literal")
    sp.add_argument("--field", default="rational", help="rational, cyclotomic:N or prime:P")

    sp = add("check", cmd_check, "verify the Hopf algebra axioms of a document")
    sp.add_argument("doc")

    sp = add("exp", cmd_exp, "compute exp_{2i}")
    sp.add_argument("doc")
    sp.add_argument("--i", type=int, default=-1, help="0 for exp_0, -1 for exp (default)")
    sp.add_argument("--method", choices=("decide", "iterate"), default="decide")

    sp = add("transform", cmd_transform, "derive a new algebra document")
    sp.add_argument("doc")
    sp.add_argument("op", choices=("dual", "op", "cop", "double", "smash-s2", "twist", "tensor"))
    sp.add_argument("--twist", help="twist document (for op twist)")
    sp.add_argument("--with", dest="other", help="second algebra document (for op tensor)")

    sp = add("coradical", cmd_coradical, "coradical, filtration and simple subcoalgebras")
    sp.add_argument("doc")

    sp = add("grouplikes", cmd_grouplikes, "grouplike and pivotal elements")
    sp.add_argument("doc")

    sp = add("primitive", cmd_primitive, "(C,1)-primitive matrices per simple subcoalgebra")
    sp.add_argument("doc")
    sp.add_argument("--simple", type=int, help="index of one simple subcoalgebra")

    sp = add("verify-theorems", cmd_verify_theorems, "run the theorem-check suites")
    sp.add_argument("doc")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


_INPUT_ERRORS = (
    io.ParseError,
    AxiomViolation,
    FieldError,
    NoPrimitiveRoot,
    InvalidGroupTable,
    InvalidTwist,
    UsageError,
    cr.CoradicalError,
    LinAlgError,
    NoAntipode,
    OSError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        detail = {"error": type(exc).__name__, "message": str(exc)}
        report = getattr(exc, "report", None)
        if report is not None and hasattr(report, "as_dict"):
            detail["report"] = report.as_dict()
        sys.stderr.write(f"hopfexp: {type(exc).__name__}: {exc}\n")
        if getattr(args, "format", "text") == "json":
            sys.stderr.write(_dumps(detail))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
