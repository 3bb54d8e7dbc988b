"""Small named structures used as worked examples and test fixtures."""
from __future__ import annotations

from dataclasses import replace

import numpy as np

from .algebra import AntiDendAlgebra, associated_associative, zero_algebra
from .bialgebra import Bialgebra, zero_bialgebra, zero_coalgebra
from .fields import GF, QQ, Field
from .rota_baxter import BilinearForm, RBOperator, semidirect_qrb, zero_qrb
from .ybe import canonical_double_r


def z1(field: Field = QQ) -> AntiDendAlgebra:
    return zero_algebra(1, field).validate()


def z2(field: Field = QQ) -> AntiDendAlgebra:
    return zero_algebra(2, field).validate()


def f3a() -> AntiDendAlgebra:
    """One-dimensional over GF(3) with ``e > e = e < e = e``."""
    f = GF(3)
    one = f.coerce(np.ones((1, 1, 1), dtype=np.int64))
    return AntiDendAlgebra(f, one, one, name="F3A").validate()


def square_zero(field: Field, succ, prec, name=None) -> AntiDendAlgebra:
    """Dimension ``m + 1`` algebra with ``e_i > e_j = succ[i][j] e_m`` and
    ``e_i < e_j = prec[i][j] e_m`` for ``i, j < m``; ``e_m`` annihilates everything.

    All triple products vanish, so any coefficients give an algebra.
    """
    s, q = field.coerce(succ), field.coerce(prec)
    m = s.shape[0]
    S, Q = field.zeros((m + 1,) * 3), field.zeros((m + 1,) * 3)
    S[:m, :m, m] = s
    Q[:m, :m, m] = q
    return AntiDendAlgebra(field, S, Q, name=name).validate()


def n2(field: Field = QQ) -> AntiDendAlgebra:
    """``e1 > e1 = e2``, ``e1 < e1 = -e2``."""
    return square_zero(field, [[1]], [[-1]], name="N2")


def n3(field: Field = QQ) -> AntiDendAlgebra:
    return square_zero(field, [[1, 2], [0, -1]], [[0, 1], [3, 1]], name="N3")


def z2_skew(field: Field = QQ) -> np.ndarray:
    """``e1 (x) e2 - e2 (x) e1``."""
    return field.coerce(np.array([[0, 1], [-1, 0]], dtype=np.int64))


def f3a_zero_bialgebra() -> Bialgebra:
    return Bialgebra(f3a(), zero_coalgebra(1, GF(3))).validate()


def db1(field: Field = QQ):
    """Double of the one-dimensional zero bialgebra with ``r = e (x) e*``."""
    D, r = canonical_double_r(zero_bialgebra(1, field))
    return replace(D.validate(), name="DB1"), r


def factorizable_fixtures(field: Field = QQ):
    """``(name, algebra, r)`` triples with ``r`` factorizable."""
    out = []
    for n in (1, 2, 3):
        D, r = canonical_double_r(zero_bialgebra(n, field))
        out.append((f"double-zero{n}", D, r))
    if field == GF(3):
        D, r = canonical_double_r(f3a_zero_bialgebra())
        out.append(("double-F3A", D, r))
    if field == QQ:
        D, r = canonical_double_r(Bialgebra(n2(), zero_coalgebra(2, field)))
        out.append(("double-N2", D, r))
        out.append(("Z2-half", z2(field), field.reduce(field.eye(2) * field.scalar("-1/2"))))
    return out


def qrb_fixtures(field: Field = QQ):
    """``(name, algebra, P, omega)`` quadratic Rota-Baxter examples."""
    out = []
    for weight in (1, -1, 2):
        A, P, omega = zero_qrb(2, field, weight)
        out.append((f"Z2-w{weight}", A, P, omega))
        D, Q, W, _ = semidirect_qrb(z1(field), RBOperator(field, field.zeros((1, 1)), weight))
        out.append((f"semidirect-Z1-w{weight}", D, Q, W))
        if field == QQ:
            D, Q, W, _ = semidirect_qrb(n2(), RBOperator(field, field.zeros((2, 2)), weight))
            out.append((f"semidirect-N2-w{weight}", D, Q, W))
    if field == GF(3):
        D, Q, W, _ = semidirect_qrb(f3a(), RBOperator(field, [[2]], 1))
        out.append(("semidirect-F3A-P2", D, Q, W))
    return out


def f3a_connes():
    """The associative algebra of F3A with the form ``omega = I``."""
    return associated_associative(f3a()), BilinearForm(GF(3), GF(3).eye(1))


__all__ = ["z1", "z2", "f3a", "square_zero", "n2", "n3", "z2_skew", "f3a_zero_bialgebra", "db1",
           "factorizable_fixtures", "qrb_fixtures", "f3a_connes"]
