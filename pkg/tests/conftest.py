import functools
import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from antidend import fixtures as fx
from antidend.fields import GF, QQ
from antidend.search import SearchSpec, enumerate_algebras

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def enumerated(n, p):
    return tuple(enumerate_algebras(SearchSpec("algebras", n, GF(p), budget=10 ** 8)))


def small_fp_algebras():
    """Every algebra of dimension 1 or 2 over GF(2) and GF(3)."""
    return [A for n in (1, 2) for p in (2, 3) for A in enumerated(n, p)]


def qq_algebras():
    return [fx.z1(), fx.z2(), fx.n2(), fx.n3(), fx.db1()[0],
            {name: A for name, A, _ in fx.factorizable_fixtures()}["double-N2"]]


def all_r(field, n):
    for digits in itertools.product(range(field.p), repeat=n * n):
        yield field.coerce(np.array(digits, dtype=np.int64).reshape(n, n))


def scalars(field):
    if field == QQ:
        return st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(0, field.p - 1)


def tensors(field, n):
    return st.lists(scalars(field), min_size=n * n, max_size=n * n).map(
        lambda xs: field.coerce(np.array(xs, dtype=field.dtype).reshape(n, n)))


def vectors(field, n):
    return st.lists(scalars(field), min_size=n, max_size=n).map(
        lambda xs: field.coerce(np.array(xs, dtype=field.dtype)))


@st.composite
def algebra_and_r(draw, pool="all"):
    candidates = []
    if pool in ("all", "qq"):
        candidates += qq_algebras()
    if pool in ("all", "fp"):
        candidates += small_fp_algebras()
    A = draw(st.sampled_from(candidates))
    return A, draw(tensors(A.field, A.dim))


@st.composite
def square_zero_algebras(draw, field=QQ, m=2):
    s = draw(st.lists(scalars(field), min_size=m * m, max_size=m * m))
    q = draw(st.lists(scalars(field), min_size=m * m, max_size=m * m))
    as_mat = lambda xs: np.array(xs, dtype=field.dtype).reshape(m, m)
    return fx.square_zero(field, as_mat(s), as_mat(q))


@pytest.fixture(scope="session")
def fp_algebras():
    return small_fp_algebras()


# -- acceptance reporting ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "notes": []})
    if report.when == "call" and report.passed:
        elapsed = dict(item.user_properties).get("elapsed")
        entry["notes"].append(f"{item.name} passed" + (f" in {elapsed:.2f}s" if elapsed is not None else ""))
    else:
        entry["ok"] = False
        state = "xfail (expected failure)" if hasattr(report, "wasxfail") else report.outcome
        entry["notes"].append(f"{item.name} {state}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {verdict}: {entry['title']} [{'; '.join(entry['notes'])}]")
