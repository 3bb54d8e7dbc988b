"""Rota-Baxter operators, A-anti-dendriform algebras and quadratic structures.

A bilinear form is stored as a matrix ``W`` with ``omega(x, y) = x^T W y``.
The map ``omega#: A -> A*`` with ``<omega# x, y> = omega(x, y)`` then has
matrix ``W^T`` (equal to ``W`` for symmetric forms).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (AntiDendAlgebra, AssocAlgebra, Representation, _same_field,
                      check_anti_dendriform, check_associative,
                      check_representation, zero_algebra)
from .bialgebra import Bialgebra, double_algebra, zero_coalgebra
from .errors import (Degenerate, DimensionMismatch, NotACocycle, NotQRB, NotRotaBaxter,
                     ZeroWeight)
from .fields import Field
from .linalg import invert, rank, block
from .report import Report, ReportBuilder
from .ybe import _apply, _l_star, _product, _r_star, _square, _require_factorizable


@dataclass(frozen=True, eq=False)
class BilinearForm:
    field: Field
    matrix: np.ndarray

    def __post_init__(self):
        m = self.field.coerce(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"bilinear form must be square, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def symmetric(self) -> bool:
        return np.array_equal(self.matrix, self.matrix.T)

    @property
    def nondegenerate(self) -> bool:
        return rank(self.field, self.matrix) == self.dim

    @property
    def sharp(self) -> np.ndarray:
        return self.matrix.T

    def r_omega(self) -> np.ndarray:
        """The 2-tensor with ``T_{r_omega} = (omega#)^{-1}``."""
        if not self.nondegenerate:
            raise Degenerate("bilinear form is degenerate")
        return invert(self.field, self.sharp).T

    def __eq__(self, other):
        return (isinstance(other, BilinearForm) and self.field == other.field
                and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RBOperator:
    field: Field
    matrix: np.ndarray
    weight: object

    def __post_init__(self):
        m = self.field.coerce(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"operator must be square, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "weight", self.field.scalar(self.weight))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        return (isinstance(other, RBOperator) and self.field == other.field
                and self.weight == other.weight and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class AModuleAlgebra:
    """A representation together with products ``>_V``, ``<_V`` on the module."""

    rep: Representation
    succ: np.ndarray = None
    prec: np.ndarray = None

    def __post_init__(self):
        f, m = self.rep.field, self.rep.module_dim
        for name in ("succ", "prec"):
            val = getattr(self, name)
            arr = f.zeros((m, m, m)) if val is None else f.coerce(val)
            if arr.shape != (m, m, m):
                raise DimensionMismatch(f"module product {name} must have shape {(m, m, m)}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def module_dim(self) -> int:
        return self.rep.module_dim

    @property
    def module_algebra(self) -> AntiDendAlgebra:
        return AntiDendAlgebra(self.field, self.succ, self.prec)


def _rb_identity(f, P, c, lam):
    """Both sides of ``P(x) o P(y) = P(P(x) o y + x o P(y) + lam x o y)`` on basis pairs."""
    left = _product(f, P, P, c)
    inner = f.reduce(f.einsum("ia,ibk->abk", P, c) + f.einsum("jb,ajk->abk", P, c) + lam * c)
    return left, _apply(f, P, inner)


def _check_op(A, P):
    _same_field(A, P)
    if P.dim != A.dim:
        raise DimensionMismatch(f"operator of dimension {P.dim} on an algebra of dimension {A.dim}")


def check_rota_baxter(A: AntiDendAlgebra, P: RBOperator) -> Report:
    """The weighted identities for ``>`` (``RB.succ``) and ``<`` (``RB.prec``)."""
    _check_op(A, P)
    f = A.field
    rb = ReportBuilder(f)
    for name in ("succ", "prec"):
        rb.equal(f"RB.{name}", *_rb_identity(f, P.matrix, getattr(A, name), P.weight), nwit=2)
    return rb.build()


def check_rota_baxter_assoc(B: AssocAlgebra, P: RBOperator) -> Report:
    _check_op(B, P)
    f = B.field
    rb = ReportBuilder(f)
    rb.equal("RB.dot", *_rb_identity(f, P.matrix, B.dot, P.weight), nwit=2)
    return rb.build()


def rb_companion(P: RBOperator) -> RBOperator:
    """``-lambda I - P``, which is Rota-Baxter of the same weight whenever ``P`` is."""
    f = P.field
    return RBOperator(f, f.reduce(-P.weight * f.eye(P.dim) - P.matrix), P.weight)


def _check_module(A, M, T):
    _same_field(A, M.rep)
    if M.rep.algebra_dim != A.dim:
        raise DimensionMismatch("representation is for an algebra of a different dimension")
    T = A.field.coerce(T)
    if T.shape != (A.dim, M.module_dim):
        raise DimensionMismatch(f"T must map the module (dim {M.module_dim}) into A (dim {A.dim})")
    return T


def check_relative_rb(A: AntiDendAlgebra, M: AModuleAlgebra, T, weight=1) -> Report:
    """``T(u) > T(v) = T(l_>(Tu) v + r_>(Tv) u + lambda u >_V v)`` and its ``<`` analogue.

    The weight scales the module products, so a Rota-Baxter operator of weight
    ``lambda`` on ``A`` is exactly a relative one for the regular module.
    """
    T = _check_module(A, M, T)
    f = A.field
    lam = f.scalar(weight)
    V = M.rep
    rb = ReportBuilder(f)
    for name, l, r, cv in (("succ", V.lsucc, V.rsucc, M.succ), ("prec", V.lprec, V.rprec, M.prec)):
        left = _product(f, T, T, getattr(A, name))
        inner = f.reduce(f.einsum("ca,cmb->abm", T, l) + f.einsum("cb,cma->abm", T, r) + lam * cv)
        rb.equal(f"RRB.{name}", left, _apply(f, T, inner), nwit=2)
    return rb.build()


def semidirect_sum(A: AntiDendAlgebra, M: AModuleAlgebra) -> AntiDendAlgebra:
    """``A (+) V`` with ``(x + a) > (y + b) = x > y + l_>(x) b + r_>(y) a + a >_V b`` (likewise ``<``)."""
    _same_field(A, M.rep)
    f, n, m = A.field, A.dim, M.module_dim
    out = {}
    for name, l, r, cv in (("succ", M.rep.lsucc, M.rep.rsucc, M.succ),
                           ("prec", M.rep.lprec, M.rep.rprec, M.prec)):
        c = f.zeros((n + m,) * 3)
        c[:n, :n, :n] = getattr(A, name)
        c[:n, n:, n:] = np.transpose(l, (0, 2, 1))  # x o a: column a of l(x)
        c[n:, :n, n:] = np.transpose(r, (2, 0, 1))  # a o y: column a of r(y)
        c[n:, n:, n:] = cv
        out[name] = c
    return AntiDendAlgebra(f, out["succ"], out["prec"])


def check_a_anti_dendriform(A: AntiDendAlgebra, M: AModuleAlgebra) -> Report:
    """Compatibility families ``AA1`` .. ``AA4`` on ``(x; a, b)``, plus the
    representation axioms (``rep.*``) and the module-algebra axioms (``V.*``).

    The verdict is cross-checked against the anti-dendriform axioms of the
    semidirect sum; a disagreement is reported as ``internal.semidirect``.
    """
    _check_module(A, M, np.zeros((A.dim, M.module_dim), dtype=int))
    f = A.field
    V = M.rep
    S, Q = M.succ, M.prec
    D = f.reduce(S + Q)

    def op_left(stack, c):  # (op(x) a) o b
        return f.einsum("xka,kbm->xabm", stack, c)

    def op_right(stack, c):  # a o (op(x) b)
        return f.einsum("xkb,akm->xabm", stack, c)

    def op_out(stack, c):  # op(x) (a o b)
        return f.einsum("xmk,abk->xabm", stack, c)

    def neg(t):
        return f.reduce(-t)

    rb = ReportBuilder(f)
    rb.equal("AA1.1", op_left(V.lsucc, Q), op_out(V.lsucc, Q), nwit=3)
    rb.equal("AA1.2", op_left(V.rsucc, Q), op_right(V.lprec, S), nwit=3)
    rb.equal("AA1.3", op_out(V.rprec, S), op_right(V.rprec, S), nwit=3)
    rb.chain("AA2", [op_out(V.lsucc, S), neg(op_left(V.ldot, S)),
                     neg(op_out(V.lprec, D)), op_left(V.lprec, Q)], nwit=3)
    rb.chain("AA3", [op_right(V.lsucc, S), neg(op_left(V.rdot, S)),
                     neg(op_right(V.ldot, Q)), op_left(V.rprec, Q)], nwit=3)
    rb.chain("AA4", [op_right(V.rsucc, S), neg(op_out(V.rsucc, D)),
                     neg(op_right(V.rdot, Q)), op_out(V.rprec, Q)], nwit=3)
    report = rb.build().merge(check_representation(A, V).prefixed("rep."),
                              check_anti_dendriform(M.module_algebra).prefixed("V."))
    if not A.validated:
        report = report.merge(check_anti_dendriform(A).prefixed("A."))
    if report.ok != check_anti_dendriform(semidirect_sum(A, M)).ok:
        extra = ReportBuilder(f)
        extra.fail("internal.semidirect", (), (int(report.ok),), (int(not report.ok),))
        report = report.merge(extra.build())
    return report


# -- structures induced on A* by a 2-tensor ---------------------------------

def dual_representation_of_regular(A: AntiDendAlgebra) -> Representation:
    """``(A*, -R_.*, L_<*, R_>*, -L_.*)``."""
    f = A.field
    t = lambda s: np.swapaxes(s, 1, 2)  # noqa: E731
    return Representation(f, f.reduce(-t(A.R_dot)), t(A.L_prec), t(A.R_succ), f.reduce(-t(A.L_dot)))


def ad_products(A: AntiDendAlgebra, t):
    """``zeta >= eta = -R_.*(T_t zeta) eta``, ``zeta <= eta = R_>*(T_t zeta) eta`` and
    their sum ``-R_<*(T_t zeta) eta`` as structure-constant arrays on ``A*``."""
    f = A.field
    t = _square(A, t, "t")
    T = t.T
    succ = f.reduce(-_r_star(f, T, A.R_dot))
    prec = _r_star(f, T, A.R_succ)
    return succ, prec, f.reduce(succ + prec)


def check_ad_alternative_forms(A: AntiDendAlgebra, t) -> Report:
    """Compare each product above with its second expression through ``L*``:
    ``L_<*(T_t eta) zeta``, ``L_.*(T_t eta) zeta`` and ``L_>*(T_t eta) zeta``."""
    f = A.field
    t = _square(A, t, "t")
    succ, prec, dot = ad_products(A, t)
    rb = ReportBuilder(f)
    rb.equal("AD1", succ, _l_star(f, t.T, A.L_prec), nwit=2)
    rb.equal("AD2", prec, _l_star(f, t.T, A.L_dot), nwit=2)
    rb.equal("AD3", dot, _l_star(f, t.T, A.L_succ), nwit=2)
    return rb.build()


def dual_module_algebra(A: AntiDendAlgebra, t) -> AModuleAlgebra:
    succ, prec, _ = ad_products(A, t)
    return AModuleAlgebra(dual_representation_of_regular(A), succ, prec)


def check_ad_relative_rb(A: AntiDendAlgebra, r) -> Report:
    """``T_r`` against the module algebra built from ``s = r + tau(r)``.

    Checked identities (``zeta, eta`` over the dual basis)::

        T_r z > T_r e = T_r(-R_.*(T_r z) e + L_<*(T_r e) z - z >=_s e)      AD5
        T_r z < T_r e = T_r( R_>*(T_r z) e - L_.*(T_r e) z - z <=_s e)      AD6
        T_r z . T_r e = T_r(-R_<*(T_r z) e - L_>*(T_r e) z - z ._s e)       AD8

    i.e. a relative Rota-Baxter operator with the module products entering
    with coefficient ``-1``. With ``s`` invariant each holds iff ``D(r) = 0``.
    """
    f = A.field
    r = _square(A, r)
    s = f.reduce(r + r.T)
    T = r.T
    ssucc, sprec, sdot = ad_products(A, s)
    rb = ReportBuilder(f)
    for label, c, first, second, prod in (
            ("AD5", A.succ, -_r_star(f, T, A.R_dot), _l_star(f, T, A.L_prec), ssucc),
            ("AD6", A.prec, _r_star(f, T, A.R_succ), -_l_star(f, T, A.L_dot), sprec),
            ("AD8", A.dot, -_r_star(f, T, A.R_prec), -_l_star(f, T, A.L_succ), sdot)):
        rb.equal(label, _product(f, T, T, c), _apply(f, T, f.reduce(first + second - prod)), nwit=2)
    return rb.build()


def check_ad_relative_rb_as_printed(A: AntiDendAlgebra, r) -> Report:
    """The same three identities with the operator signs ``(+R*, -L*, +product)``
    written in the weight-one statement; kept to exhibit counterexamples."""
    f = A.field
    r = _square(A, r)
    s = f.reduce(r + r.T)
    T = r.T
    ssucc, sprec, sdot = ad_products(A, s)
    rb = ReportBuilder(f)
    for label, c, first, second, prod in (
            ("AD5", A.succ, _r_star(f, T, A.R_dot), -_l_star(f, T, A.L_prec), ssucc),
            ("AD6", A.prec, -_r_star(f, T, A.R_succ), _l_star(f, T, A.L_dot), sprec),
            ("AD8", A.dot, _r_star(f, T, A.R_prec), _l_star(f, T, A.L_succ), sdot)):
        rb.equal(label, _product(f, T, T, c), _apply(f, T, f.reduce(first + second + prod)), nwit=2)
    return rb.build()


def check_skew_relative_rb(A: AntiDendAlgebra, r) -> Report:
    """Weight-zero relative Rota-Baxter conditions for ``T_r`` (``r`` skew):
    ``SK.dot`` for ``(A*, -R_<*, -L_>*)`` on ``(A, .)`` and ``SK.succ``/``SK.prec``
    for ``(A*, -R_.*, L_<*, R_>*, -L_.*)``."""
    f = A.field
    r = _square(A, r)
    T = r.T
    rb = ReportBuilder(f)
    rb.equal("SK.dot", _product(f, T, T, A.dot),
             _apply(f, T, f.reduce(-_r_star(f, T, A.R_prec) - _l_star(f, T, A.L_succ))), nwit=2)
    M = AModuleAlgebra(dual_representation_of_regular(A))
    rel = check_relative_rb(A, M, T, 0)
    return rb.build().merge(Report(f, tuple(
        type(x)(x.condition.replace("RRB.", "SK."), x.witness, x.left, x.right) for x in rel.failures)))


# -- bilinear forms ---------------------------------------------------------

def _check_form(B, omega):
    _same_field(B, omega)
    if omega.dim != B.dim:
        raise DimensionMismatch(f"form of dimension {omega.dim} on an algebra of dimension {B.dim}")


def _form3(f, W, first, second):
    """``omega(first[a,b], second[a,b])`` for coordinate arrays ``[..., k]``."""
    return f.einsum("...i,ij,...j->...", first, W, second)


def check_connes_cocycle(B, omega: BilinearForm) -> Report:
    """Symmetry (``CC.sym``) and the cyclic identity (``CC.cyc``) on basis triples."""
    _check_form(B, omega)
    f = B.field
    W = omega.matrix
    rb = ReportBuilder(f)
    rb.equal("CC.sym", W, W.T, nwit=2)
    c = B.dot
    # omega(e_x e_y, e_z) = sum_k c[x,y,k] W[k,z]
    w = f.einsum("xyk,kz->xyz", c, W)
    rb.zero("CC.cyc", f.reduce(w + np.transpose(w, (2, 0, 1)) + np.transpose(w, (1, 2, 0))), nwit=3)
    return rb.build()


def check_quadratic(A: AntiDendAlgebra, omega: BilinearForm) -> Report:
    """Symmetry, nondegeneracy and the invariance identities
    ``omega(x > y, z) = -omega(y, z . x)`` (``C1.succ``) and
    ``omega(x < y, z) = -omega(x, y . z)`` (``C1.prec``)."""
    _check_form(A, omega)
    f = A.field
    W = omega.matrix
    rb = ReportBuilder(f)
    rb.equal("Q.sym", W, W.T, nwit=2)
    if not omega.nondegenerate:
        rb.fail("Q.nondeg", (), (rank(f, W),), (omega.dim,))
    lhs_s = f.einsum("xyk,kz->xyz", A.succ, W)
    rhs_s = f.reduce(-f.einsum("yk,zxk->xyz", W, A.dot))
    lhs_p = f.einsum("xyk,kz->xyz", A.prec, W)
    rhs_p = f.reduce(-f.einsum("xk,yzk->xyz", W, A.dot))
    rb.equal("C1.succ", lhs_s, rhs_s, nwit=3)
    rb.equal("C1.prec", lhs_p, rhs_p, nwit=3)
    return rb.build()


def induce_from_connes(B: AssocAlgebra, omega: BilinearForm) -> AntiDendAlgebra:
    """The unique products with ``omega(x > y, z) = -omega(y, z . x)`` and
    ``omega(x < y, z) = -omega(x, y . z)``."""
    _check_form(B, omega)
    f = B.field
    if not omega.nondegenerate:
        raise Degenerate("bilinear form is degenerate")
    report = check_connes_cocycle(B, omega)
    if not report.ok:
        raise NotACocycle("form is not a commutative Connes cocycle", report)
    W = omega.matrix
    Winv = invert(f, W)
    # (succ[x,y,:] W)[z] = b[x,y,z]  =>  succ[x,y,:] = b[x,y,:] W^{-1}
    b_s = f.reduce(-f.einsum("yk,zxk->xyz", W, B.dot))
    b_p = f.reduce(-f.einsum("xk,yzk->xyz", W, B.dot))
    return AntiDendAlgebra(f, f.einsum("xyz,zk->xyk", b_s, Winv), f.einsum("xyz,zk->xyk", b_p, Winv))


def _fs(f, P, W, lam):
    return f.reduce(P.T @ W + W @ P + lam * W)


def check_qrb(A: AntiDendAlgebra, P: RBOperator, omega: BilinearForm) -> Report:
    """Quadratic, Rota-Baxter, and ``omega(Px, y) + omega(x, Py) + lambda omega(x, y) = 0`` (``Fs``)."""
    _check_op(A, P)
    _check_form(A, omega)
    f = A.field
    rb = ReportBuilder(f)
    rb.zero("Fs", _fs(f, P.matrix, omega.matrix, P.weight), nwit=2)
    return rb.build().merge(check_quadratic(A, omega), check_rota_baxter(A, P))


def check_qrb_assoc(B: AssocAlgebra, P: RBOperator, omega: BilinearForm) -> Report:
    """The associative counterpart: Rota-Baxter on ``(A, .)``, Connes cocycle and ``Fs``."""
    _check_op(B, P)
    _check_form(B, omega)
    f = B.field
    rb = ReportBuilder(f)
    rb.zero("Fs", _fs(f, P.matrix, omega.matrix, P.weight), nwit=2)
    report = rb.build().merge(check_connes_cocycle(B, omega), check_rota_baxter_assoc(B, P),
                              check_associative(B))
    if not omega.nondegenerate:
        extra = ReportBuilder(f)
        extra.fail("Q.nondeg", (), (rank(f, omega.matrix),), (omega.dim,))
        report = report.merge(extra.build())
    return report


def check_qf1(A: AntiDendAlgebra, r, omega: BilinearForm, sign: int = -1) -> Report:
    """With ``P = T_r omega#``: ``P(x) o P(y) = P(P(x) o y + x o P(y) - x o T_s omega#(y))``
    for ``o`` in ``>`` (``Nd3``) and ``<`` (``Nd4``), ``s = r + tau(r)``.

    The minus sign makes the last term ``lambda x o y`` when ``T_s omega# = -lambda I``;
    ``sign=+1`` evaluates the opposite convention.
    """
    _check_form(A, omega)
    f = A.field
    r = _square(A, r)
    sharp = omega.sharp
    P = f.matmul(r.T, sharp)
    Q = f.matmul(f.reduce(r + r.T).T, sharp)
    rb = ReportBuilder(f)
    for label, c in (("Nd3", A.succ), ("Nd4", A.prec)):
        inner = f.reduce(f.einsum("ia,ibk->abk", P, c) + f.einsum("jb,ajk->abk", P, c)
                         + sign * f.einsum("jb,ajk->abk", Q, c))
        rb.equal(label, _product(f, P, P, c), _apply(f, P, inner), nwit=2)
    return rb.build()


def factorizable_to_qrb(A: AntiDendAlgebra, r, weight):
    """``omega# = -lambda T_s^{-1}`` and ``P = T_r omega#`` for factorizable ``r``."""
    f = A.field
    lam = f.scalar(weight)
    if lam == 0:
        raise ZeroWeight("the correspondence needs a non-zero weight")
    r = _square(A, r)
    _require_factorizable(A, r)
    sharp = f.reduce(-lam * invert(f, f.reduce(r + r.T).T))
    omega = BilinearForm(f, sharp.T)
    return RBOperator(f, f.matmul(r.T, sharp), lam), omega


def qrb_to_factorizable(A: AntiDendAlgebra, P: RBOperator, omega: BilinearForm) -> np.ndarray:
    """The ``r`` with ``T_r = P (omega#)^{-1}``."""
    if P.weight == 0:
        raise ZeroWeight("the correspondence needs a non-zero weight")
    report = check_qrb(A, P, omega)
    if not report.ok:
        raise NotQRB("not a quadratic Rota-Baxter anti-dendriform algebra", report)
    f = A.field
    return f.matmul(P.matrix, invert(f, omega.sharp)).T.copy()


def semidirect_qrb(A: AntiDendAlgebra, P: RBOperator):
    """``(A x A*, Q, omega, r)`` with ``Q = P (+) -(P* + lambda I)``, the hyperbolic
    form ``omega(x + zeta, y + eta) = <x, eta> + <y, zeta>`` and
    ``r = sum_i e_i* (x) P(e_i) - (P + lambda I)(e_i) (x) e_i*``."""
    report = check_rota_baxter(A, P)
    if not report.ok:
        raise NotRotaBaxter("not a Rota-Baxter operator", report)
    f, n = A.field, A.dim
    D = double_algebra(Bialgebra(A, zero_coalgebra(n, f)))
    lam = P.weight
    eye = f.eye(n)
    Pm = P.matrix
    Q = block(f, [[Pm, 0], [0, f.reduce(-(Pm.T + lam * eye))]])
    W = block(f, [[0, eye], [eye, 0]])
    r = block(f, [[0, f.reduce(-(Pm + lam * eye))], [Pm.T, 0]])
    return D, RBOperator(f, Q, lam), BilinearForm(f, W), r


def zero_qrb(n: int, field: Field, weight=1):
    """``Z_n`` with ``omega = I`` and ``P = -(lambda/2) I`` (characteristic not 2)."""
    lam = field.scalar(weight)
    half = field.inv(field.scalar(2))
    P = field.reduce(field.eye(n) * field.scalar(-lam * half))
    return zero_algebra(n, field), RBOperator(field, P, lam), BilinearForm(field, field.eye(n))


__all__ = [
    "BilinearForm", "RBOperator", "AModuleAlgebra", "check_rota_baxter", "check_rota_baxter_assoc",
    "rb_companion", "check_relative_rb", "semidirect_sum", "check_a_anti_dendriform",
    "dual_representation_of_regular", "ad_products", "check_ad_alternative_forms",
    "dual_module_algebra", "check_ad_relative_rb", "check_ad_relative_rb_as_printed",
    "check_skew_relative_rb", "check_connes_cocycle", "check_quadratic", "induce_from_connes",
    "check_qrb", "check_qrb_assoc", "check_qf1", "factorizable_to_qrb", "qrb_to_factorizable",
    "semidirect_qrb", "zero_qrb",
]
