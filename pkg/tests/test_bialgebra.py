import numpy as np
import pytest
from hypothesis import given, strategies as st

from antidend import fixtures as fx
from antidend.algebra import check_anti_dendriform, zero_algebra
from antidend.bialgebra import (Bialgebra, Coalgebra, check_bialgebra, check_coalgebra,
                                check_coboundary_conditions, check_compatibility, codualize,
                                coboundary_bialgebra, coboundary_coproducts, double_algebra, dualize,
                                zero_bialgebra, zero_coalgebra)
from antidend.errors import DimensionMismatch, FieldMismatch, NotABialgebra
from antidend.fields import GF, QQ
from antidend.ybe import ybe_residuals

import oracles
from conftest import algebra_and_r, qq_algebras, small_fp_algebras, tensors

F3 = GF(3)


@st.composite
def coalgebras_over(draw, A):
    f, n = A.field, A.dim
    if f == QQ:
        elems = st.integers(-2, 2)
    else:
        elems = st.integers(0, f.p - 1)
    arr = np.array(draw(st.lists(elems, min_size=2 * n ** 3, max_size=2 * n ** 3)), dtype=np.int64)
    arr = arr.reshape(2, n, n, n)
    return Coalgebra(f, f.coerce(arr[0]) if f != QQ else arr[0].astype(object),
                     f.coerce(arr[1]) if f != QQ else arr[1].astype(object))


@st.composite
def bialgebra_candidates(draw):
    A = draw(st.sampled_from(small_fp_algebras() + qq_algebras()[:4]))
    return Bialgebra(A, draw(coalgebras_over(A)))


# -- dualization -------------------------------------------------------------

def test_dualize_examples():
    assert not np.any(dualize(zero_coalgebra(2, QQ)).succ != 0)
    C = Coalgebra(F3, F3.coerce(np.array([[[1]]])), F3.zeros((1, 1, 1)))
    D = dualize(C)
    assert D.succ.tolist() == [[[1]]] and D.prec.tolist() == [[[0]]]


@given(bialgebra_candidates())
def test_dualize_round_trip(B):
    C = B.coalgebra
    assert codualize(dualize(C)) == C
    n = C.dim
    D = dualize(C)
    for i, j, k in np.ndindex(n, n, n):
        assert D.succ[i, j, k] == C.dsucc[k, i, j]
        assert D.prec[i, j, k] == C.dprec[k, i, j]


@given(bialgebra_candidates())
def test_coalgebra_check_is_dual_algebra_check(B):
    D = dualize(B.coalgebra)
    K = oracles.scalars_of(B.field)
    assert check_coalgebra(B.coalgebra).ok is oracles.is_anti_dendriform(K, *oracles.algebra_lists(D))


# -- compatibility -----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_bialgebra_passes(n):
    assert check_bialgebra(zero_bialgebra(n, QQ)).ok


def test_f3a_zero_coproducts_passes():
    assert check_bialgebra(Bialgebra(fx.f3a(), zero_coalgebra(1, F3))).ok


def test_f3a_unit_dsucc_golden_verdict():
    C = Coalgebra(F3, F3.coerce(np.array([[[1]]])), F3.zeros((1, 1, 1)))
    B = Bialgebra(fx.f3a(), C)
    report = check_compatibility(B)
    golden = {"DB1.2", "DB1.3", "DB1.5"}
    assert report.conditions() == golden
    assert oracles.bialgebra_failures(oracles.Scalars(3), B.algebra, C.dsucc, C.dprec) == golden
    assert [(f.condition, f.witness, f.left, f.right) for f in report.failures] == [
        ("DB1.2", (0, 0), (2,), (1,)), ("DB1.3", (0, 0), (1,), (0,)), ("DB1.5", (0, 0), (1,), (0,))]
    with pytest.raises(NotABialgebra):
        B.validate()


@given(bialgebra_candidates())
def test_compatibility_agrees_with_oracle(B):
    K = oracles.scalars_of(B.field)
    got = {".".join(c.split(".")[:2]) for c in check_compatibility(B).conditions()}
    assert got == oracles.bialgebra_failures(K, B.algebra, B.coalgebra.dsucc, B.coalgebra.dprec)


def test_mismatches():
    with pytest.raises(DimensionMismatch):
        Bialgebra(fx.z2(), zero_coalgebra(1, QQ))
    with pytest.raises(FieldMismatch):
        Bialgebra(fx.f3a(), zero_coalgebra(1, QQ))


# -- coboundary --------------------------------------------------------------

@given(tensors(QQ, 2))
def test_coboundary_over_z2_vanishes(r):
    C = coboundary_coproducts(fx.z2(), r)
    assert C == zero_coalgebra(2, QQ)
    assert check_coboundary_conditions(fx.z2(), r).ok


def test_coboundary_f3a_example():
    C = coboundary_coproducts(fx.f3a(), F3.coerce(np.array([[1]])))
    assert C == zero_coalgebra(1, F3)
    r = F3.coerce(np.array([[1]]))
    assert check_coboundary_conditions(fx.f3a(), r).ok is check_bialgebra(coboundary_bialgebra(fx.f3a(), r)).ok


@given(algebra_and_r())
def test_coboundary_agrees_with_oracle(pair):
    A, r = pair
    ds, dp = oracles.coboundary(oracles.scalars_of(A.field), A, r)
    C = coboundary_coproducts(A, r)
    assert oracles.to_lists(C.dsucc) == ds
    assert oracles.to_lists(C.dprec) == dp


@given(st.data())
def test_coboundary_linear(data):
    A, r = data.draw(algebra_and_r())
    s = data.draw(tensors(A.field, A.dim))
    f = A.field
    lhs = coboundary_coproducts(A, f.reduce(r + s))
    c1, c2 = coboundary_coproducts(A, r), coboundary_coproducts(A, s)
    assert lhs == Coalgebra(f, f.reduce(c1.dsucc + c2.dsucc), f.reduce(c1.dprec + c2.dprec))


@given(algebra_and_r())
def test_coboundary_conditions_iff_bialgebra(pair):
    """Coherence of the coboundary criterion with the direct bialgebra check."""
    A, r = pair
    assert check_coboundary_conditions(A, r).ok is check_bialgebra(coboundary_bialgebra(A, r)).ok


def test_coboundary_coherence_200_per_fixture():
    rng = np.random.default_rng(20261016)
    for A in [fx.f3a(), fx.n2(), fx.n3()] + list(small_fp_algebras()[-20:]):
        f, n = A.field, A.dim
        for _ in range(200):
            if f == QQ:
                r = f.coerce(rng.integers(-3, 4, (n, n)).astype(object))
            else:
                r = f.coerce(rng.integers(0, f.p, (n, n)))
            assert check_coboundary_conditions(A, r).ok is check_bialgebra(coboundary_bialgebra(A, r)).ok


def test_skew_solutions_give_bialgebras_on_enumerated(fp_algebras):
    for A in fp_algebras:
        f, n = A.field, A.dim
        for digits in np.ndindex(*(f.p,) * (n * n)):
            r = f.coerce(np.array(digits, dtype=np.int64).reshape(n, n))
            if np.any(f.reduce(r + r.T) != 0):
                continue
            if not np.any(ybe_residuals(A, r)[0] != 0):
                assert check_coboundary_conditions(A, r).ok


# -- double ------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_of_zero_bialgebra_is_zero(n):
    D = double_algebra(zero_bialgebra(n, QQ))
    assert D == zero_algebra(2 * n, QQ)


def test_db1_fixture_is_zero_dim2():
    D, r = fx.db1()
    assert D == zero_algebra(2, QQ)
    assert r.tolist() == [[0, 1], [0, 0]]


def test_double_f3a_golden():
    D = double_algebra(fx.f3a_zero_bialgebra(), require_valid=True)
    golden = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert D.succ.tolist() == golden and D.prec.tolist() == golden
    assert check_anti_dendriform(D).ok
    B = fx.f3a_zero_bialgebra()
    ad = dualize(B.coalgebra)
    s, p = oracles.double_products(oracles.Scalars(3), B.algebra, ad.succ, ad.prec)
    assert (s, p) == (golden, golden)


@given(bialgebra_candidates())
def test_double_agrees_with_oracle(B):
    K = oracles.scalars_of(B.field)
    ad = dualize(B.coalgebra)
    D = double_algebra(B)
    assert (oracles.to_lists(D.succ), oracles.to_lists(D.prec)) == oracles.double_products(K, B.algebra, ad.succ, ad.prec)


def test_double_requires_valid():
    C = Coalgebra(F3, F3.coerce(np.array([[[1]]])), F3.zeros((1, 1, 1)))
    with pytest.raises(NotABialgebra):
        double_algebra(Bialgebra(fx.f3a(), C), require_valid=True)


@given(algebra_and_r(pool="fp"))
def test_double_valid_iff_bialgebra_on_coboundaries(pair):
    A, r = pair
    B = coboundary_bialgebra(A, r)
    if check_bialgebra(B).ok:
        assert check_anti_dendriform(double_algebra(B)).ok
