"""Command-line interface.

Every command reads documents (``-`` means standard input) and writes one
document, or a stream of documents for ``search``, to standard output or
``-o``. Exit status: 0 pass, 1 fail (a verdict with witnesses is written),
2 usage or input error (message on standard error).
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from .algebra import AntiDendAlgebra, check_anti_dendriform, check_representation
from .bialgebra import check_bialgebra, coboundary_bialgebra, double_algebra
from .errors import AntidendError, NotAnAlgebra
from .fields import field_from_tag
from .io import (Document, RBBundle, RPair, array_document, document, parse,
                 require_same_field, serialize, verdict_document)
from .report import Failure, Report
from .rota_baxter import (BilinearForm, RBOperator, check_qrb, check_quadratic, factorizable_to_qrb,
                          qrb_to_factorizable, semidirect_qrb)
from .search import SearchSpec, enumerate_algebras, enumerate_ybe
from .ybe import Classification, canonical_double_r, classify_r, factorize

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- input helpers -----------------------------------------------------------

def _read(path: str) -> Document:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse(text)


def _expect(doc: Document, *kinds) -> Document:
    if doc.kind not in kinds:
        raise UsageError(f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc


def _algebra(path: str) -> AntiDendAlgebra:
    doc = _read(path)
    if doc.kind in ("r-pair", "rb-bundle"):
        return doc.value.algebra
    return _expect(doc, "algebra").value


def _square(doc: Document, alg: AntiDendAlgebra, *kinds) -> np.ndarray:
    _expect(doc, *kinds)
    if doc.field != alg.field:
        raise UsageError(f"field {doc.field.tag} does not match the algebra's {alg.field.tag}")
    if doc.dim != alg.dim:
        raise UsageError(f"dimension {doc.dim} does not match the algebra's {alg.dim}")
    return doc.value


def _algebra_and_r(alg_path: str, r_path: Optional[str]):
    doc = _read(alg_path)
    if r_path is None:
        if doc.kind != "r-pair":
            raise UsageError("give an r tensor, or an r-pair document as the only input")
        return doc.value.algebra, doc.value.r
    A = _expect(doc, "algebra").value
    return A, _square(_read(r_path), A, "tensor2")


def _weight(alg: AntiDendAlgebra, text: str):
    return alg.field.parse(text)


class _Out:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.handle = None

    def __enter__(self):
        self.handle = sys.stdout if self.path in (None, "-") else open(self.path, "w", encoding="utf-8")
        return self.handle

    def __exit__(self, *exc):
        if self.handle is not sys.stdout:
            self.handle.close()
        else:
            self.handle.flush()


def _emit(args, doc: Document):
    with _Out(getattr(args, "output", None)) as out:
        out.write(serialize(doc))


def _verdict(args, report: Report, check: str, dim: int, **extra) -> int:
    _emit(args, verdict_document(report, check, dim, **extra))
    return EXIT_PASS if report.ok else EXIT_FAIL


def _refusal(args, exc: NotAnAlgebra, check: str, dim: int, field) -> int:
    report = exc.report if exc.report is not None else Report(field, ())
    if report.ok:
        report = Report(field, (Failure(type(exc).__name__, (), (), ()),))
    _emit(args, verdict_document(report, check, dim, error=str(exc)))
    return EXIT_FAIL


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    what = args.what
    if what == "algebra":
        A = _algebra(args.files[0])
        return _verdict(args, check_anti_dendriform(A), "algebra", A.dim)
    if what == "bialgebra":
        B = _expect(_read(args.files[0]), "bialgebra").value
        return _verdict(args, check_bialgebra(B), "bialgebra", B.dim)
    if what == "rep":
        A = _algebra(args.files[0])
        doc = _expect(_read(args.files[1]), "representation")
        require_same_field(doc, document(A))
        V = doc.value
        return _verdict(args, check_representation(A, V), "rep", A.dim)
    if what == "quadratic":
        A = _algebra(args.files[0])
        omega = _square(_read(args.files[1]), A, "form", "matrix")
        omega = omega if isinstance(omega, BilinearForm) else BilinearForm(A.field, omega)
        return _verdict(args, check_quadratic(A, omega), "quadratic", A.dim)
    if what == "qrb":
        A = _algebra(args.files[0])
        P = _square(_read(args.files[1]), A, "matrix")
        omega = _square(_read(args.files[2]), A, "form", "matrix")
        omega = omega if isinstance(omega, BilinearForm) else BilinearForm(A.field, omega)
        op = RBOperator(A.field, P, _weight(A, args.weight))
        return _verdict(args, check_qrb(A, op, omega), "qrb", A.dim)
    raise UsageError(f"unknown check {what!r}")


_CHECK_ARITY = {"algebra": 1, "bialgebra": 1, "rep": 2, "quadratic": 2, "qrb": 3}


def cmd_double(args) -> int:
    B = _expect(_read(args.file), "bialgebra").value
    try:
        D = double_algebra(B, require_valid=True)
    except NotAnAlgebra as exc:
        return _refusal(args, exc, "bialgebra", B.dim, B.field)
    _emit(args, document(D))
    return EXIT_PASS


def cmd_cobound(args) -> int:
    A, r = _algebra_and_r(args.alg, args.r)
    B = coboundary_bialgebra(A, r)
    report = check_bialgebra(B)
    if not report.ok:
        return _verdict(args, report, "bialgebra", A.dim)
    _emit(args, document(B))
    return EXIT_PASS


def _classification_body(cls: Classification, r, field) -> dict:
    return {"flags": cls.flags(),
            "r": [[int(i), int(j), field.format(r[i, j])] for i, j in np.argwhere(r != 0)]}


def cmd_classify(args) -> int:
    A, r = _algebra_and_r(args.alg, args.r)
    cls = classify_r(A, r)
    _emit(args, Document("classification", A.field, A.dim, _classification_body(cls, r, A.field)))
    return EXIT_PASS


def cmd_factorize(args) -> int:
    A, r = _algebra_and_r(args.alg, args.r)
    parts = [p for p in args.vector.split(",")]
    if len(parts) != A.dim:
        raise UsageError(f"--vector needs {A.dim} comma-separated scalars")
    f = A.field
    x = f.coerce(np.array([f.parse(p) for p in parts], dtype=f.dtype))
    try:
        x1, x2 = factorize(A, r, x)
    except NotAnAlgebra as exc:
        return _refusal(args, exc, "factorizable", A.dim, f)
    body = {name: [f.format(v) for v in vec] for name, vec in (("x", x), ("x1", x1), ("x2", x2))}
    _emit(args, Document("factorization", f, A.dim, body))
    return EXIT_PASS


def cmd_canonical_double(args) -> int:
    B = _expect(_read(args.file), "bialgebra").value
    try:
        D, r = canonical_double_r(B)
    except NotAnAlgebra as exc:
        return _refusal(args, exc, "bialgebra", B.dim, B.field)
    _emit(args, document(RPair(D, r)))
    return EXIT_PASS


def cmd_qrb(args) -> int:
    if args.direction == "from-r":
        if len(args.files) > 1:
            raise UsageError("qrb from-r needs ALG R (or a single r-pair document)")
        A, r = _algebra_and_r(args.alg, args.files[0] if args.files else None)
        try:
            P, omega = factorizable_to_qrb(A, r, _weight(A, args.weight))
        except NotAnAlgebra as exc:
            return _refusal(args, exc, "factorizable", A.dim, A.field)
        _emit(args, document(RBBundle(A, P, omega, r)))
        return EXIT_PASS
    A = _algebra(args.alg)
    if len(args.files) != 2:
        raise UsageError("qrb to-r needs ALG P OMEGA")
    P = _square(_read(args.files[0]), A, "matrix")
    omega = _square(_read(args.files[1]), A, "form", "matrix")
    omega = omega if isinstance(omega, BilinearForm) else BilinearForm(A.field, omega)
    try:
        r = qrb_to_factorizable(A, RBOperator(A.field, P, _weight(A, args.weight)), omega)
    except NotAnAlgebra as exc:
        return _refusal(args, exc, "qrb", A.dim, A.field)
    _emit(args, array_document(A.field, r, "tensor2"))
    return EXIT_PASS


def cmd_semidirect(args) -> int:
    A = _algebra(args.alg)
    P = _square(_read(args.p), A, "matrix")
    try:
        D, Q, W, r = semidirect_qrb(A, RBOperator(A.field, P, _weight(A, args.weight)))
    except NotAnAlgebra as exc:
        return _refusal(args, exc, "rota-baxter", A.dim, A.field)
    _emit(args, document(RBBundle(D, Q, W, r)))
    return EXIT_PASS


def cmd_search(args) -> int:
    with _Out(args.output) as out:
        if args.target == "algebras":
            field = field_from_tag(args.field)
            spec = SearchSpec("algebras", args.dim, field, budget=args.budget)
            spec.check_budget()
            count = 0
            for A in enumerate_algebras(spec, workers=args.workers):
                out.write(serialize(document(A)))
                count += 1
        else:
            A = _algebra(args.alg)
            spec = SearchSpec("ybe-solutions", A.dim, A.field, base=A, filter=args.filter, budget=args.budget)
            spec.check_budget()
            count = 0
            for r, cls in enumerate_ybe(spec):
                out.write(serialize(Document("ybe-solution", A.field, A.dim,
                                             _classification_body(cls, r, A.field))))
                count += 1
        summary = {"count": count, "spec": spec.describe()}
        out.write(serialize(Document("search-summary", spec.field, spec.dim, summary)))
    return EXIT_PASS


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antidend", description="Anti-dendriform algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def out_opt(p):
        p.add_argument("-o", "--output", help="write the document here instead of standard output")

    p = sub.add_parser("check", help="verify axioms and print a verdict")
    p.add_argument("what", choices=sorted(_CHECK_ARITY))
    p.add_argument("files", nargs="+")
    p.add_argument("--weight", default="1")
    out_opt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("double", help="double algebra of a bialgebra")
    p.add_argument("file")
    out_opt(p)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("cobound", help="coboundary bialgebra of (A, r)")
    p.add_argument("alg")
    p.add_argument("r", nargs="?")
    out_opt(p)
    p.set_defaults(func=cmd_cobound)

    p = sub.add_parser("classify", help="classify a tensor r on an algebra")
    p.add_argument("alg", nargs="?", default="-")
    p.add_argument("r", nargs="?")
    out_opt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("factorize", help="split a vector through a factorizable r")
    p.add_argument("alg")
    p.add_argument("r", nargs="?")
    p.add_argument("--vector", required=True, help="comma-separated coordinates")
    out_opt(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("canonical-double", help="double of a bialgebra with its canonical r")
    p.add_argument("file")
    out_opt(p)
    p.set_defaults(func=cmd_canonical_double)

    p = sub.add_parser("qrb", help="quadratic Rota-Baxter data from/to factorizable r")
    p.add_argument("direction", choices=["to-r", "from-r"])
    p.add_argument("alg")
    p.add_argument("files", nargs="*")
    p.add_argument("--weight", default="1")
    out_opt(p)
    p.set_defaults(func=cmd_qrb)

    p = sub.add_parser("semidirect", help="quadratic Rota-Baxter structure on A (+) A*")
    p.add_argument("alg")
    p.add_argument("p")
    p.add_argument("--weight", default="1")
    out_opt(p)
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("search", help="exhaustive enumeration over a prime field")
    ssub = p.add_subparsers(dest="target", required=True)
    pa = ssub.add_parser("algebras")
    pa.add_argument("--dim", type=int, required=True)
    pa.add_argument("--field", required=True, help="prime field tag, e.g. p3")
    pa.add_argument("--workers", type=int, default=1)
    py = ssub.add_parser("ybe")
    py.add_argument("alg")
    py.add_argument("--filter", choices=Classification.FLAGS)
    for q in (pa, py):
        q.add_argument("--budget", type=int, help="maximum number of candidates")
        out_opt(q)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if args.command == "check":
        need = _CHECK_ARITY[args.what]
        if len(args.files) != need:
            print(f"antidend: check {args.what} takes {need} file(s)", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, AntidendError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"antidend: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["main", "build_parser"]
