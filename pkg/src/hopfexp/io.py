"""Versioned JSON documents for algebras, twists and verification reports.

Scalars are strings: ``"a/b"`` over Q, a list of such strings (power-basis
coefficients) over Q(zeta_n), a decimal residue over F_p.  Structure tensors are
sparse sorted lists ``[i, j, k, scalar]`` of their nonzero entries; the antipode
is a dense list of matrix rows (column c holds S(e_c)).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .fields import Field, FieldError, parse_field
from .hopf import HopfAlgebra

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "serialize",
    "parse_document",
    "canonical_json",
    "digest",
    "load_json",
    "write_json",
    "serialize_twist",
    "parse_twist",
]


class ParseError(ValueError):
    pass


def _sparse(F: Field, T: np.ndarray) -> list:
    out = []
    for idx, v in np.ndenumerate(T):
        if not F.is_zero(v):
            out.append([int(t) for t in idx] + [F.encode(v)])
    return out


def serialize(H: HopfAlgebra, metadata: dict | None = None) -> dict:
    F = H.field
    meta = {"name": H.name}
    meta.update(metadata or {})
    return {
        "format_version": FORMAT_VERSION,
        "field": F.descriptor(),
        "dim": H.dim,
        "basis": list(H.basis_names),
        "mult": _sparse(F, H.mult),
        "comult": _sparse(F, H.comult),
        "unit": [F.encode(v) for v in H.unit],
        "counit": [F.encode(v) for v in H.counit],
        "antipode": [[F.encode(v) for v in row] for row in H.antipode],
        "metadata": meta,
    }


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def digest(doc: Any) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def load_json(src) -> Any:
    """Accept a dict, a JSON string, or a path to a JSON file."""
    if isinstance(src, dict):
        return src
    if isinstance(src, Path) or (isinstance(src, str) and not src.lstrip().startswith("{")):
        try:
            text = Path(src).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {src}: {exc}") from exc
    else:
        text = src
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def write_json(path, doc: Any) -> None:
    """Whole-file atomic write (temporary file in the same directory, then rename)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(doc))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _scalar(F: Field, lit, where: str):
    try:
        return F.decode(lit)
    except (FieldError, ZeroDivisionError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _dense_vector(F: Field, lits, d: int, where: str) -> np.ndarray:
    if not isinstance(lits, list) or len(lits) != d:
        raise ParseError(f"{where} must be a list of {d} scalars")
    out = F.zeros(d)
    for i, lit in enumerate(lits):
        out[i] = _scalar(F, lit, f"{where}[{i}]")
    return out


def _sparse_tensor(F: Field, triples, shape: tuple, where: str) -> np.ndarray:
    if not isinstance(triples, list):
        raise ParseError(f"{where} must be a list of [indices..., scalar] entries")
    T = F.zeros(shape)
    seen = set()
    for k, entry in enumerate(triples):
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise ParseError(f"{where}[{k}] must have {len(shape)} indices and a scalar")
        idx = entry[:-1]
        if not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < n for i, n in zip(idx, shape)):
            raise ParseError(f"{where}[{k}] has indices out of range: {idx}")
        idx = tuple(idx)
        if idx in seen:
            raise ParseError(f"{where}[{k}] repeats index {list(idx)}")
        seen.add(idx)
        T[idx] = _scalar(F, entry[-1], f"{where}[{k}]")
    return T


def _field_of(doc: dict) -> Field:
    try:
        return parse_field(_require(doc, "field"))
    except (FieldError, ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad field descriptor: {exc}") from exc


def parse_document(src) -> HopfAlgebra:
    """Structure constants from a document.  Does not verify axioms (see constructions.from_description)."""
    doc = load_json(src)
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    F = _field_of(doc)
    d = _require(doc, "dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError("dim must be a positive integer")
    basis = doc.get("basis") or [f"e{i}" for i in range(d)]
    if not isinstance(basis, list) or len(basis) != d or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"basis must be a list of {d} names")
    mult = _sparse_tensor(F, _require(doc, "mult"), (d, d, d), "mult")
    comult = _sparse_tensor(F, _require(doc, "comult"), (d, d, d), "comult")
    unit = _dense_vector(F, _require(doc, "unit"), d, "unit")
    counit = _dense_vector(F, _require(doc, "counit"), d, "counit")
    S = None
    if doc.get("antipode") is not None:
        rows = doc["antipode"]
        if not isinstance(rows, list) or len(rows) != d:
            raise ParseError(f"antipode must be a list of {d} rows")
        S = F.zeros((d, d))
        for r, row in enumerate(rows):
            S[r] = _dense_vector(F, row, d, f"antipode[{r}]")
    name = (doc.get("metadata") or {}).get("name")
    return HopfAlgebra(F, mult, unit, comult, counit, S, basis_names=basis, name=name)


# -- twists -------------------------------------------------------------------------


def serialize_twist(H: HopfAlgebra, J: np.ndarray, J_inverse: np.ndarray | None = None,
                    metadata: dict | None = None) -> dict:
    F = H.field
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "twist",
        "field": F.descriptor(),
        "dim": H.dim,
        "J": _sparse(F, J),
        "metadata": metadata or {},
    }
    if J_inverse is not None:
        doc["J_inverse"] = _sparse(F, J_inverse)
    return doc


def parse_twist(src, H: HopfAlgebra) -> tuple[np.ndarray, np.ndarray | None]:
    doc = load_json(src)
    if not isinstance(doc, dict) or doc.get("kind") != "twist":
        raise ParseError("not a twist document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    F = _field_of(doc)
    if F != H.field:
        raise ParseError(f"twist is over {F}, algebra over {H.field}")
    if doc.get("dim") != H.dim:
        raise ParseError("twist dimension does not match the algebra")
    d = H.dim
    J = _sparse_tensor(F, _require(doc, "J"), (d, d), "J")
    Jinv = None
    if doc.get("J_inverse") is not None:
        Jinv = _sparse_tensor(F, doc["J_inverse"], (d, d), "J_inverse")
    return J, Jinv
