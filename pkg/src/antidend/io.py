"""Self-describing JSON documents for every artifact.

A document is one JSON object with a fixed header::

    {"body": {...}, "dim": 2, "field": "p3", "format": "antidend/1", "kind": "algebra"}

The field is declared once; scalars are strings in canonical field form.
Structure constants and matrices are stored sparsely as ``[i, j, (k,) "v"]``
with zero entries omitted. Serialization sorts keys and uses no optional
whitespace, so equal values serialize to identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

import numpy as np

from .algebra import AntiDendAlgebra, Representation
from .bialgebra import Bialgebra, Coalgebra
from .errors import (AntidendError, DocumentError, DocumentSyntaxError, FieldMismatch,
                     ScalarSyntaxError, UnknownKind)
from .fields import Field, field_from_tag
from .report import Report
from .rota_baxter import BilinearForm, RBOperator
from .search import SearchSpec

FORMAT = "antidend/1"

STRUCTURED_KINDS = ("algebra", "bialgebra", "representation", "tensor2", "matrix", "form", "rb-bundle",
                    "r-pair", "search-spec")
_REP_STACKS = ("lsucc", "rsucc", "lprec", "rprec")
# documents whose body is plain data (command output); kept verbatim
RECORD_KINDS = ("verdict", "classification", "factorization", "ybe-solution", "search-summary")
KINDS = STRUCTURED_KINDS + RECORD_KINDS


@dataclass(frozen=True)
class RBBundle:
    algebra: AntiDendAlgebra
    operator: RBOperator
    form: BilinearForm
    r: Optional[np.ndarray] = None


@dataclass(frozen=True)
class RPair:
    algebra: AntiDendAlgebra
    r: np.ndarray


@dataclass(frozen=True, eq=False)
class Document:
    kind: str
    field: Field
    dim: int
    value: Any
    meta: dict = dc_field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, Document) and serialize(self) == serialize(other)

    __hash__ = None


# -- sparse arrays -----------------------------------------------------------

def _sparse(f: Field, arr) -> list:
    arr = np.asarray(arr)
    return [[int(i) for i in idx] + [f.format(arr[tuple(idx)])] for idx in np.argwhere(arr != 0)]


def _dense(f: Field, entries, shape, ctx) -> np.ndarray:
    out = f.zeros(shape)
    if not isinstance(entries, list):
        raise DocumentError(f"{ctx}: expected a list of entries")
    for entry in entries:
        if (not isinstance(entry, list) or len(entry) != len(shape) + 1
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in entry[:-1])
                or not isinstance(entry[-1], str)):
            raise DocumentError(f"{ctx}: malformed entry {entry!r}")
        idx = tuple(entry[:-1])
        if any(not 0 <= i < n for i, n in zip(idx, shape)):
            raise DocumentError(f"{ctx}: index {idx} out of range for shape {shape}")
        try:
            out[idx] = f.parse(entry[-1])
        except ScalarSyntaxError as exc:
            exc.token = entry[-1]
            raise
    return out


# -- serialization -----------------------------------------------------------

def _algebra_body(A: AntiDendAlgebra) -> dict:
    body = {"succ": _sparse(A.field, A.succ), "prec": _sparse(A.field, A.prec)}
    if A.name:
        body["name"] = A.name
    return body


def _body(doc: Document) -> dict:
    f, v = doc.field, doc.value
    kind = doc.kind
    if kind == "algebra":
        return _algebra_body(v)
    if kind == "bialgebra":
        return {"algebra": _algebra_body(v.algebra),
                "coalgebra": {"dsucc": _sparse(f, v.coalgebra.dsucc), "dprec": _sparse(f, v.coalgebra.dprec)}}
    if kind == "representation":
        body = {name: _sparse(f, getattr(v, name)) for name in _REP_STACKS}
        body["algebra_dim"] = v.algebra_dim
        return body
    if kind in ("tensor2", "matrix"):
        return {"entries": _sparse(f, v)}
    if kind == "form":
        return {"entries": _sparse(f, v.matrix)}
    if kind == "rb-bundle":
        body = {"algebra": _algebra_body(v.algebra), "P": _sparse(f, v.operator.matrix),
                "omega": _sparse(f, v.form.matrix), "weight": f.format(v.operator.weight)}
        if v.r is not None:
            body["r"] = _sparse(f, v.r)
        return body
    if kind == "r-pair":
        return {"algebra": _algebra_body(v.algebra), "r": _sparse(f, v.r)}
    if kind == "search-spec":
        body = {"target": v.target}
        if v.filter:
            body["filter"] = v.filter
        if v.base is not None:
            body["base"] = _algebra_body(v.base)
        return body
    if kind in RECORD_KINDS:
        return v
    raise UnknownKind(f"unknown document kind {kind!r}")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def serialize(doc: Document) -> str:
    """Canonical one-line text of ``doc`` (terminated by a newline)."""
    header = {"format": FORMAT, "kind": doc.kind, "field": doc.field.tag, "dim": doc.dim,
              "body": _body(doc)}
    header.update(doc.meta)
    return canonical_json(header) + "\n"


# -- parsing -----------------------------------------------------------------

def _locate(text: str, needle: str):
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _algebra_from(f, n, body, ctx="algebra") -> AntiDendAlgebra:
    if not isinstance(body, dict):
        raise DocumentError(f"{ctx}: expected an object")
    succ = _dense(f, body.get("succ", []), (n, n, n), f"{ctx}.succ")
    prec = _dense(f, body.get("prec", []), (n, n, n), f"{ctx}.prec")
    name = body.get("name")
    return AntiDendAlgebra(f, succ, prec, name=name if isinstance(name, str) else None)


def _value(kind, f, n, body):
    if kind == "algebra":
        return _algebra_from(f, n, body)
    if kind == "bialgebra":
        co = body.get("coalgebra", {})
        C = Coalgebra(f, _dense(f, co.get("dsucc", []), (n, n, n), "coalgebra.dsucc"),
                      _dense(f, co.get("dprec", []), (n, n, n), "coalgebra.dprec"))
        return Bialgebra(_algebra_from(f, n, body.get("algebra", {})), C)
    if kind == "representation":
        m = body.get("algebra_dim")
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise DocumentError("representation.algebra_dim must be a non-negative integer")
        return Representation(f, *(_dense(f, body.get(k, []), (m, n, n), k) for k in _REP_STACKS))
    if kind in ("tensor2", "matrix"):
        return _dense(f, body.get("entries", []), (n, n), kind)
    if kind == "form":
        return BilinearForm(f, _dense(f, body.get("entries", []), (n, n), kind))
    if kind == "rb-bundle":
        A = _algebra_from(f, n, body.get("algebra", {}))
        weight = body.get("weight", "1")
        if not isinstance(weight, str):
            raise DocumentError("rb-bundle.weight must be a scalar string")
        try:
            lam = f.parse(weight)
        except ScalarSyntaxError as exc:
            exc.token = weight
            raise
        P = RBOperator(f, _dense(f, body.get("P", []), (n, n), "P"), lam)
        omega = BilinearForm(f, _dense(f, body.get("omega", []), (n, n), "omega"))
        r = _dense(f, body["r"], (n, n), "r") if "r" in body else None
        return RBBundle(A, P, omega, r)
    if kind == "r-pair":
        return RPair(_algebra_from(f, n, body.get("algebra", {})), _dense(f, body.get("r", []), (n, n), "r"))
    if kind == "search-spec":
        base = _algebra_from(f, n, body["base"], "base") if "base" in body else None
        return SearchSpec(body.get("target", ""), n, f, base=base, filter=body.get("filter"))
    return body


def parse(text: str) -> Document:
    """Parse one document; raises :class:`DocumentSyntaxError` with a position."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise DocumentSyntaxError("document must be a JSON object", 1, 1)
    if data.get("format") != FORMAT:
        raise DocumentError(f"unsupported format {data.get('format')!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise UnknownKind(f"unknown document kind {kind!r}")
    tag = data.get("field")
    if not isinstance(tag, str):
        raise DocumentError("header field tag missing")
    f = field_from_tag(tag)
    n = data.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError("header dim must be a non-negative integer")
    body = data.get("body")
    if not isinstance(body, dict):
        raise DocumentError("document body must be an object")
    try:
        value = _value(kind, f, n, body)
    except ScalarSyntaxError as exc:
        token = getattr(exc, "token", None)
        line, col = _locate(text, json.dumps(token)) if token is not None else (None, None)
        raise DocumentSyntaxError(str(exc), line, col) from None
    meta = {k: v for k, v in data.items() if k not in ("format", "kind", "field", "dim", "body")}
    return Document(kind, f, n, value, meta)


def parse_stream(text: str) -> list:
    """Parse a newline-separated stream of documents (blank lines ignored)."""
    docs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            docs.append(parse(line))
        except DocumentSyntaxError as exc:
            raise DocumentSyntaxError(str(exc).split(" (line")[0], lineno, exc.column) from None
    return docs


# -- convenience constructors ------------------------------------------------

def document(value, kind: Optional[str] = None, **meta) -> Document:
    """Wrap a library object as a document, inferring the kind where possible."""
    if kind is None:
        if isinstance(value, AntiDendAlgebra):
            kind = "algebra"
        elif isinstance(value, Bialgebra):
            kind = "bialgebra"
        elif isinstance(value, BilinearForm):
            kind = "form"
        elif isinstance(value, Representation):
            kind = "representation"
        elif isinstance(value, RBBundle):
            kind = "rb-bundle"
        elif isinstance(value, RPair):
            kind = "r-pair"
        elif isinstance(value, SearchSpec):
            kind = "search-spec"
        else:
            raise UnknownKind("cannot infer a document kind; pass kind=")
    if kind not in KINDS:
        raise UnknownKind(f"unknown document kind {kind!r}")
    if isinstance(value, (AntiDendAlgebra, Bialgebra, SearchSpec)):
        f, n = value.field, value.dim
    elif isinstance(value, BilinearForm):
        f, n = value.field, value.dim
    elif isinstance(value, Representation):
        f, n = value.field, value.module_dim
    elif isinstance(value, (RBBundle, RPair)):
        f, n = value.algebra.field, value.algebra.dim
    else:
        f, n = meta.pop("field"), meta.pop("dim")
    return Document(kind, f, n, value, meta)


def array_document(field: Field, arr, kind: str = "tensor2") -> Document:
    arr = field.coerce(arr)
    return Document(kind, field, arr.shape[0], arr)


def report_body(report: Report, check: str, **extra) -> dict:
    fmt = report.field.format
    body = {
        "check": check,
        "ok": report.ok,
        "failures": [{"condition": fl.condition, "witness": list(fl.witness),
                      "left": [fmt(x) for x in fl.left], "right": [fmt(x) for x in fl.right]}
                     for fl in report.failures],
    }
    body.update(extra)
    return body


def verdict_document(report: Report, check: str, dim: int, **extra) -> Document:
    return Document("verdict", report.field, dim, report_body(report, check, **extra))


def require_same_field(*docs: Document):
    tags = {d.field.tag for d in docs}
    if len(tags) > 1:
        raise FieldMismatch(f"documents declare different fields: {sorted(tags)}")


__all__ = ["FORMAT", "KINDS", "Document", "RBBundle", "RPair", "serialize", "parse", "parse_stream",
           "document", "array_document", "verdict_document", "report_body", "canonical_json",
           "require_same_field", "AntidendError"]
