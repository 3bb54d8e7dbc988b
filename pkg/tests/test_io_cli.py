import io
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from antidend import fixtures as fx
from antidend.cli import main
from antidend.errors import DocumentError, DocumentSyntaxError, FieldMismatch, UnknownKind, BadPrime
from antidend.fields import GF, QQ
from antidend.io import (RBBundle, RPair, array_document, document, parse, parse_stream,
                         require_same_field, serialize)
from antidend.rota_baxter import BilinearForm
from antidend.search import SearchSpec

from conftest import algebra_and_r

GOLDEN = Path(__file__).parent / "golden"
UPDATE = bool(os.environ.get("GOLDEN_UPDATE"))


def g(name):
    return str(GOLDEN / name)


def run(argv, stdin=""):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin, sys.stdout, sys.stderr
    sys.stdin, sys.stdout, sys.stderr = io.StringIO(stdin), out, err
    try:
        code = main(argv)
    finally:
        sys.stdin, sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def body(text):
    return json.loads(text)["body"]


# -- documents ---------------------------------------------------------------

def test_z2_serialization_is_the_fixture_file():
    assert serialize(document(fx.z2())) == (GOLDEN / "z2.add").read_text()
    assert serialize(document(fx.z2())) == serialize(document(fx.z2()))


def test_round_trip_fixtures():
    docs = [document(fx.f3a()), document(fx.z2()), document(fx.n3()), document(fx.f3a_zero_bialgebra()),
            array_document(QQ, fx.z2_skew()), document(BilinearForm(QQ, [[0, 1], [1, 0]])),
            document(RPair(*fx.db1())), document(SearchSpec("algebras", 2, GF(3))),
            document(SearchSpec("ybe-solutions", 1, GF(3), base=fx.f3a(), filter="triangular"))]
    A, P, omega = fx.qrb_fixtures()[0][1:]
    docs.append(document(RBBundle(A, P, omega, fx.z2_skew())))
    for doc in docs:
        text = serialize(doc)
        again = parse(text)
        assert serialize(again) == text
        assert again == doc
    assert parse(serialize(document(fx.f3a()))).value == fx.f3a()


@given(algebra_and_r())
def test_round_trip_random(pair):
    A, r = pair
    for doc in (document(A), array_document(A.field, r), document(RPair(A, r))):
        text = serialize(doc)
        assert serialize(parse(text)) == text
    assert np.array_equal(parse(serialize(array_document(A.field, r))).value, r)


def test_scalar_syntax_error_has_position():
    text = '{"body":{"entries":[[0,0,"1/0"]]},"dim":1,"field":"Q","format":"antidend/1","kind":"tensor2"}'
    with pytest.raises(DocumentSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (1, text.index('"1/0"') + 1)


def test_json_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse('{"format": "antidend/1",\n  "kind": }')
    assert info.value.line == 2


@pytest.mark.parametrize("text, exc", [
    ('{"body":{},"dim":1,"field":"Q","format":"antidend/1","kind":"lie"}', UnknownKind),
    ('{"body":{},"dim":1,"field":"Q","format":"antidend/9","kind":"algebra"}', DocumentError),
    ('{"body":{},"dim":1,"field":"p4","format":"antidend/1","kind":"algebra"}', BadPrime),
    ('{"body":{"succ":[[0,0,1,"1"]]},"dim":1,"field":"Q","format":"antidend/1","kind":"algebra"}', DocumentError),
    ('{"body":{"succ":[[0,0,"1"]]},"dim":1,"field":"Q","format":"antidend/1","kind":"algebra"}', DocumentError),
    ('{"body":[],"dim":1,"field":"Q","format":"antidend/1","kind":"algebra"}', DocumentError),
    ('{"body":{},"dim":-1,"field":"Q","format":"antidend/1","kind":"algebra"}', DocumentError),
    ('[1, 2]', DocumentSyntaxError),
])
def test_rejections(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_unknown_kind_on_write():
    with pytest.raises(UnknownKind):
        document(object())
    with pytest.raises(UnknownKind):
        document(fx.z2(), kind="lie")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        require_same_field(document(fx.z2()), document(fx.f3a()))


def test_stream():
    text = serialize(document(fx.z1())) + "\n" + serialize(document(fx.f3a()))
    docs = parse_stream(text)
    assert [d.value for d in docs] == [fx.z1(), fx.f3a()]
    with pytest.raises(DocumentSyntaxError) as info:
        parse_stream(serialize(document(fx.z1())) + "{oops\n")
    assert info.value.line == 2


def test_sparse_zero_omitted():
    text = serialize(array_document(QQ, [[0, 0], [0, 5]]))
    assert body(text) == {"entries": [[1, 1, "5"]]}


# -- CLI pipelines against golden files --------------------------------------

PIPELINES = [
    # (golden output, argv, stdin golden, expected exit code)
    ("check-z2.out", ["check", "algebra", g("z2.add")], None, 0),
    ("check-f3a.out", ["check", "algebra", g("f3a.add")], None, 0),
    ("check-f3a-bad.out", ["check", "bialgebra", g("f3a-bad.bialg")], None, 1),
    ("check-quadratic-z2.out", ["check", "quadratic", g("z2.add"), g("z2-id.form")], None, 0),
    ("check-qrb-z2.out", ["check", "qrb", g("z2.add"), g("z2-half.mat"), g("z2-id.form"), "--weight", "1"], None, 0),
    ("classify-z2-skew.out", ["classify", g("z2.add"), g("skew.t2")], None, 0),
    ("classify-f3a-unit.out", ["classify", g("f3a.add"), g("f3a-unit.t2")], None, 0),
    ("double-zero1.out", ["double", g("zero1.bialg")], None, 0),
    ("double-f3a-zero.out", ["double", g("f3a-zero.bialg")], None, 0),
    ("double-f3a-bad.out", ["double", g("f3a-bad.bialg")], None, 1),
    ("cobound-z2-skew.out", ["cobound", g("z2.add"), g("skew.t2")], None, 0),
    ("canonical-double-zero1.out", ["canonical-double", g("zero1.bialg")], None, 0),
    ("canonical-double-f3a.out", ["canonical-double", g("f3a-zero.bialg")], None, 0),
    ("classify-canonical-zero1.out", ["classify"], "canonical-double-zero1.out", 0),
    ("classify-canonical-f3a.out", ["classify", "-"], "canonical-double-f3a.out", 0),
    ("factorize-db1.out", ["factorize", "-", "--vector", "2,3"], "canonical-double-zero1.out", 0),
    ("factorize-z2-skew.out", ["factorize", g("z2.add"), g("skew.t2"), "--vector", "1,1"], None, 1),
    ("qrb-from-r-db1.out", ["qrb", "from-r", "-", "--weight", "1"], "canonical-double-zero1.out", 0),
    ("qrb-to-r-z2.out", ["qrb", "to-r", g("z2.add"), g("z2-half.mat"), g("z2-id.form")], None, 0),
    ("semidirect-z1.out", ["semidirect", g("z1.add"), g("p0.mat"), "--weight", "1"], None, 0),
    ("semidirect-f3a.out", ["semidirect", g("f3a.add"), g("f3a-p2.mat")], None, 0),
    ("semidirect-f3a-bad.out", ["semidirect", g("f3a.add"), g("f3a-unit.t2")], None, 2),
    ("search-d1-p2.out", ["search", "algebras", "--dim", "1", "--field", "p2"], None, 0),
    ("search-d1-p3.out", ["search", "algebras", "--dim", "1", "--field", "p3"], None, 0),
    ("search-d2-p2.out", ["search", "algebras", "--dim", "2", "--field", "p2"], None, 0),
    ("search-d2-p3.out", ["search", "algebras", "--dim", "2", "--field", "p3", "--budget", "43046721"], None, 0),
    ("search-ybe-f3a.out", ["search", "ybe", g("f3a.add")], None, 0),
    ("search-ybe-n2-tri.out", ["search", "ybe", g("n2.add"), "--filter", "triangular"], None, 2),
]


def _pipeline(name, argv, stdin_name):
    stdin = (GOLDEN / stdin_name).read_text() if stdin_name else ""
    return run(argv, stdin)


@pytest.mark.parametrize("name, argv, stdin_name, code", PIPELINES, ids=[p[0] for p in PIPELINES])
def test_pipeline_golden(name, argv, stdin_name, code):
    got, out, err = _pipeline(name, argv, stdin_name)
    assert got == code, err
    if code == 2:
        assert out == "" and err.startswith("antidend: ")
        return
    path = GOLDEN / name
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()
    # byte-identical on a second run
    assert _pipeline(name, argv, stdin_name)[1] == out


def test_pipeline_contents():
    assert body((GOLDEN / "classify-z2-skew.out").read_text())["flags"]["triangular"] is True
    assert body((GOLDEN / "classify-canonical-zero1.out").read_text())["flags"]["factorizable"] is True
    assert body((GOLDEN / "classify-canonical-f3a.out").read_text())["flags"]["factorizable"] is True
    assert body((GOLDEN / "classify-f3a-unit.out").read_text())["flags"]["ybe"] is False
    fac = body((GOLDEN / "factorize-db1.out").read_text())
    assert fac == {"x": ["2", "3"], "x1": ["0", "3"], "x2": ["-2", "0"]}
    verdict = body((GOLDEN / "check-f3a-bad.out").read_text())
    assert verdict["ok"] is False
    conditions = [f["condition"] for f in verdict["failures"]]
    assert [c for c in conditions if c.startswith("DB1")] == ["DB1.2", "DB1.3", "DB1.5"]
    semi = body((GOLDEN / "semidirect-z1.out").read_text())
    assert semi["r"] == [[0, 1, "-1"]] and semi["P"] == [[1, 1, "-1"]]
    for name, count in (("search-d1-p2.out", 1), ("search-d1-p3.out", 3), ("search-d2-p2.out", 10),
                        ("search-d2-p3.out", 145), ("search-ybe-f3a.out", 1)):
        lines = (GOLDEN / name).read_text().splitlines()
        assert json.loads(lines[-1])["body"]["count"] == count == len(lines) - 1
    double = parse((GOLDEN / "double-f3a-zero.out").read_text()).value
    golden = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert double.succ.tolist() == golden and double.prec.tolist() == golden


# -- CLI errors and exit codes -----------------------------------------------

def test_usage_errors():
    assert run([])[0] == 2
    assert run(["frobnicate"])[0] == 2
    code, out, err = run(["check", "rep", g("z2.add")])
    assert code == 2 and "takes 2" in err
    code, out, err = run(["check", "algebra", g("missing.add")])
    assert code == 2 and out == "" and "No such file" in err


def test_bad_scalar_in_input(tmp_path):
    bad = tmp_path / "bad.t2"
    bad.write_text('{"body":{"entries":[[0,0,"1/0"]]},"dim":2,"field":"Q","format":"antidend/1","kind":"tensor2"}')
    code, out, err = run(["classify", g("z2.add"), str(bad)])
    assert code == 2 and "DocumentSyntaxError" in err and "column" in err


def test_field_and_dimension_mismatch():
    assert run(["classify", g("z2.add"), g("f3a-unit.t2")])[0] == 2
    assert run(["classify", g("f3a.add"), g("skew.t2")])[0] == 2


def test_budget_env_refusal(monkeypatch):
    monkeypatch.setenv("ANTIDEND_SEARCH_BUDGET", "2")
    code, out, err = run(["search", "algebras", "--dim", "1", "--field", "p3"])
    assert code == 2 and "BudgetExceeded" in err
    assert run(["search", "algebras", "--dim", "2", "--field", "p3"])[0] == 2


def test_output_option(tmp_path):
    target = tmp_path / "d.add"
    code, out, _ = run(["double", g("zero1.bialg"), "-o", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "double-zero1.out").read_text()


def test_zero_weight_refused():
    code, _, err = run(["qrb", "from-r", "-", "--weight", "0"], (GOLDEN / "canonical-double-zero1.out").read_text())
    assert code == 2 and "ZeroWeight" in err


def test_search_workers_identical():
    a = run(["search", "algebras", "--dim", "2", "--field", "p2"])[1]
    b = run(["search", "algebras", "--dim", "2", "--field", "p2", "--workers", "2"])[1]
    assert a == b


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "antidend", "check", "algebra", g("f3a.add")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "check-f3a.out").read_text()
