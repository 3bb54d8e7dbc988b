import numpy as np
import pytest
from hypothesis import given, strategies as st

from antidend import fixtures as fx
from antidend.algebra import (DERIVED_VARIANTS, AntiDendAlgebra, AssocRepresentation, Representation,
                              associated_associative, check_anti_dendriform, check_assoc_representation,
                              check_associative, check_homomorphism, check_representation,
                              derived_representations, direct_sum, regular_representation,
                              zero_algebra)
from antidend.errors import DimensionMismatch, FieldMismatch, NotAnAlgebra, UnknownVariant
from antidend.fields import GF, QQ

import oracles
from conftest import qq_algebras, small_fp_algebras, square_zero_algebras, tensors

F3 = GF(3)


def all_algebras():
    return small_fp_algebras() + qq_algebras()


def ids(A):
    return repr(A)


# -- examples ----------------------------------------------------------------

def test_z2_passes():
    assert check_anti_dendriform(fx.z2()).ok


def test_f3a_passes():
    assert check_anti_dendriform(fx.f3a()).ok


def test_qq_dim1_succ_only_fails_a1():
    one, zero = QQ.coerce([[[1]]]), QQ.coerce([[[0]]])
    report = check_anti_dendriform(AntiDendAlgebra(QQ, one, zero))
    assert not report.ok
    first = report.failures[0]
    assert first.condition.startswith("A1")
    assert first.witness == (0, 0, 0)
    # e > (e > e) = e while -(e . e) > e = -e
    assert (first.left, first.right) == ((1,), (-1,))


def test_validate_raises_with_report():
    A = AntiDendAlgebra(QQ, QQ.coerce([[[1]]]), QQ.coerce([[[0]]]))
    with pytest.raises(NotAnAlgebra) as info:
        A.validate()
    assert not info.value.report.ok
    assert fx.f3a().validated


def test_report_sorted():
    A = AntiDendAlgebra(QQ, QQ.coerce(np.ones((2, 2, 2), dtype=np.int64)), QQ.coerce(np.zeros((2, 2, 2), dtype=np.int64)))
    failures = check_anti_dendriform(A).failures
    assert list(failures) == sorted(failures, key=lambda f: (f.condition, f.witness))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        AntiDendAlgebra(QQ, QQ.zeros((2, 2, 2)), QQ.zeros((1, 1, 1)))
    with pytest.raises(DimensionMismatch):
        AntiDendAlgebra(QQ, QQ.zeros((2, 2)), QQ.zeros((2, 2)))


def test_associated_examples():
    assert not np.any(associated_associative(fx.z2()).dot != 0)
    assert associated_associative(fx.f3a()).dot[0, 0, 0] == 2


def test_regular_representation_examples():
    V = regular_representation(fx.z2())
    assert all(not np.any(getattr(V, k) != 0) for k in ("lsucc", "rsucc", "lprec", "rprec"))
    assert check_representation(fx.z2(), V).ok
    W = regular_representation(fx.f3a())
    for k in ("lsucc", "rsucc", "lprec", "rprec"):
        assert getattr(W, k).tolist() == [[[1]]]
    assert check_representation(fx.f3a(), W).ok


def test_perturbed_representation_fails_r1():
    W = regular_representation(fx.f3a())
    bad = Representation(F3, F3.coerce(np.array([[[2]]])), W.rsucc, W.lprec, W.rprec)
    report = check_representation(fx.f3a(), bad)
    assert "R1.1" in report.conditions()
    assert not oracles.is_representation(oracles.Scalars(3), fx.f3a(), bad)


def test_representation_field_mismatch():
    with pytest.raises(FieldMismatch):
        check_representation(fx.f3a(), regular_representation(fx.z1()))


def test_dual_of_regular_f3a():
    D = derived_representations(fx.f3a(), regular_representation(fx.f3a()), "dual-c")
    assert [getattr(D, k).item() for k in ("lsucc", "rsucc", "lprec", "rprec")] == [1, 1, 1, 1]
    assert check_representation(fx.f3a(), D).ok


def test_dual_of_zero_rep():
    V = regular_representation(fx.z2())
    assert derived_representations(fx.z2(), V, "dual-c") == V


def test_unknown_variant():
    with pytest.raises(UnknownVariant):
        derived_representations(fx.f3a(), regular_representation(fx.f3a()), "bogus")


def test_homomorphism_examples():
    A = fx.f3a()
    assert check_homomorphism(F3.eye(1), A, A).ok
    report = check_homomorphism(F3.coerce(np.array([[2]])), A, A)
    assert not report.ok
    hom_succ = [f for f in report.failures if f.condition == "hom.succ"][0]
    assert (hom_succ.left, hom_succ.right) == ((2,), (1,))
    assert check_homomorphism(F3.zeros((2, 1)), A, zero_algebra(2, F3)).ok
    with pytest.raises(DimensionMismatch):
        check_homomorphism(F3.zeros((1, 2)), A, A)


def test_direct_sum_valid():
    S = direct_sum(fx.f3a(), fx.f3a())
    assert S.dim == 2 and check_anti_dendriform(S).ok


# -- oracles over every enumerated / fixture algebra --------------------------

@pytest.mark.parametrize("A", all_algebras(), ids=ids)
def test_axioms_and_associativity_agree_with_oracle(A):
    K = oracles.scalars_of(A.field)
    succ, prec = oracles.algebra_lists(A)
    assert check_anti_dendriform(A).ok is oracles.is_anti_dendriform(K, succ, prec) is True
    assert check_associative(associated_associative(A)).ok
    assert oracles.is_associative(K, oracles.to_lists(A.dot))


@pytest.mark.parametrize("A", all_algebras(), ids=ids)
def test_regular_and_derived_representations(A):
    K = oracles.scalars_of(A.field)
    V = regular_representation(A)
    assert check_representation(A, V).ok
    assert oracles.is_representation(K, A, V)
    B = associated_associative(A)
    for variant in DERIVED_VARIANTS:
        out = derived_representations(A, V, variant)
        if isinstance(out, AssocRepresentation):
            assert check_assoc_representation(B, out).ok, variant
        else:
            assert check_representation(A, out).ok, variant
            assert oracles.is_representation(K, A, out), variant
    assert V.dual().dual() == V


@st.composite
def candidate_algebras(draw):
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(1, 2))
    xs = draw(st.lists(st.integers(0, p - 1), min_size=2 * n ** 3, max_size=2 * n ** 3))
    arr = np.array(xs, dtype=np.int64).reshape(2, n, n, n)
    return AntiDendAlgebra(GF(p), arr[0], arr[1])


@given(candidate_algebras())
def test_checker_agrees_with_oracle_on_random_candidates(A):
    K = oracles.scalars_of(A.field)
    assert check_anti_dendriform(A).ok is oracles.is_anti_dendriform(K, *oracles.algebra_lists(A))


@given(square_zero_algebras())
def test_square_zero_family_is_valid(A):
    assert check_anti_dendriform(A).ok
    assert check_representation(A, regular_representation(A)).ok


@given(st.data())
def test_random_representations_agree_with_semidirect_oracle(data):
    A = data.draw(st.sampled_from(small_fp_algebras()))
    f, n = A.field, A.dim
    m = data.draw(st.integers(1, 2))
    stacks = [f.coerce(np.array(data.draw(st.lists(st.integers(0, f.p - 1), min_size=n * m * m, max_size=n * m * m)),
                                dtype=np.int64).reshape(n, m, m)) for _ in range(4)]
    V = Representation(f, *stacks)
    assert check_representation(A, V).ok is oracles.is_representation(oracles.scalars_of(f), A, V)


@given(st.data())
def test_homomorphism_agrees_with_oracle(data):
    A = data.draw(st.sampled_from(small_fp_algebras()))
    B = data.draw(st.sampled_from([X for X in small_fp_algebras() if X.field == A.field]))
    fmap = data.draw(tensors(A.field, max(A.dim, B.dim)))[:B.dim, :A.dim]
    K = oracles.scalars_of(A.field)
    both = check_homomorphism(fmap, A, B).ok
    assert both is oracles.is_homomorphism(K, fmap, oracles.algebra_lists(A), oracles.algebra_lists(B))
    if both:
        assert check_homomorphism(fmap, A, B, which="dot").ok
