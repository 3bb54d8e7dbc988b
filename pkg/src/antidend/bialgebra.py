"""Coalgebras, bialgebra compatibility, coboundary coproducts and the double.

A coalgebra stores ``dsucc[k, i, j]`` with
``Delta_>(e_k) = sum dsucc[k, i, j] e_i (x) e_j``. Its dual products on
``A*`` are ``e_i* > e_j* = sum_k dsucc[k, i, j] e_k*``; the coalgebra is an
anti-dendriform coalgebra exactly when that dual algebra satisfies the
anti-dendriform axioms.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .algebra import AntiDendAlgebra, _same_field, check_anti_dendriform
from .errors import DimensionMismatch, NotABialgebra
from .fields import Field
from .linalg import transpose
from .report import Report, ReportBuilder


@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: Field
    dsucc: np.ndarray
    dprec: np.ndarray

    def __post_init__(self):
        for name in ("dsucc", "dprec"):
            arr = self.field.coerce(getattr(self, name))
            if arr.ndim != 3 or len(set(arr.shape)) != 1:
                raise DimensionMismatch(f"{name} must be an n x n x n array")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.dsucc.shape != self.dprec.shape:
            raise DimensionMismatch("coproducts have different dimensions")

    @property
    def dim(self) -> int:
        return self.dsucc.shape[0]

    def __eq__(self, other):
        return (isinstance(other, Coalgebra) and self.field == other.field
                and np.array_equal(self.dsucc, other.dsucc) and np.array_equal(self.dprec, other.dprec))

    __hash__ = None


def zero_coalgebra(n: int, field: Field) -> Coalgebra:
    return Coalgebra(field, field.zeros((n, n, n)), field.zeros((n, n, n)))


def dualize(C: Coalgebra) -> AntiDendAlgebra:
    """The algebra on ``A*`` whose products are the linear duals of the coproducts."""
    return AntiDendAlgebra(C.field, np.transpose(C.dsucc, (1, 2, 0)), np.transpose(C.dprec, (1, 2, 0)))


def codualize(A: AntiDendAlgebra) -> Coalgebra:
    """Inverse of :func:`dualize`."""
    return Coalgebra(A.field, np.transpose(A.succ, (2, 0, 1)), np.transpose(A.prec, (2, 0, 1)))


def check_coalgebra(C: Coalgebra) -> Report:
    return check_anti_dendriform(dualize(C))


@dataclass(frozen=True, eq=False)
class Bialgebra:
    algebra: AntiDendAlgebra
    coalgebra: Coalgebra
    validated: bool = False

    def __post_init__(self):
        _same_field(self.algebra, self.coalgebra)
        if self.algebra.dim != self.coalgebra.dim:
            raise DimensionMismatch("algebra and coalgebra dimensions differ")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def validate(self) -> "Bialgebra":
        report = check_bialgebra(self)
        if not report.ok:
            raise NotABialgebra("not an anti-dendriform bialgebra", report)
        return replace(self, validated=True)

    def __eq__(self, other):
        return (isinstance(other, Bialgebra) and self.algebra == other.algebra
                and self.coalgebra == other.coalgebra)

    __hash__ = None


def zero_bialgebra(n: int, field: Field) -> Bialgebra:
    from .algebra import zero_algebra
    return Bialgebra(zero_algebra(n, field), zero_coalgebra(n, field))


def check_compatibility(B: Bialgebra) -> Report:
    """The six compatibility conditions ``DB1.1`` .. ``DB1.6`` on every basis pair.

    Witness ``(a, b)`` means ``x = e_a, y = e_b``; values are 2-tensors.
    """
    A, C = B.algebra, B.coalgebra
    f = A.field
    S, Q, D = A.succ, A.prec, A.dot
    Ds, Dp = C.dsucc, C.dprec
    Dd = f.reduce(Ds + Dp)
    T = transpose

    # broadcasting helpers: objects indexed by x (axis 0) or y (axis 1)
    def X(stack):
        return stack[:, None]

    def Y(stack):
        return stack[None, :]

    def lft(M, t):  # (M (x) I) t
        return f.matmul(M, t)

    def rgt(M, t):  # (I (x) M) t
        return f.matmul(t, T(M))

    def delta_of(c, delta):  # Delta(e_a o e_b)
        return f.einsum("abk,kij->abij", c, delta)

    rb = ReportBuilder(f)
    rb.equal("DB1.1", delta_of(D, Dp),
             f.reduce(lft(Y(A.R_dot), X(Dp)) - rgt(X(A.L_succ), Y(Dp))), nwit=2)
    rb.equal("DB1.2", delta_of(D, Ds),
             f.reduce(rgt(X(A.L_dot), Y(Ds)) - lft(Y(A.R_prec), X(Ds))), nwit=2)
    rb.equal("DB1.3", delta_of(Q, Dd),
             f.reduce(lft(Y(A.R_prec), X(Dd)) - rgt(X(A.L_prec), Y(Ds))), nwit=2)
    rb.equal("DB1.4", delta_of(S, Dd),
             f.reduce(rgt(X(A.L_succ), Y(Dd)) - lft(Y(A.R_succ), X(Dp))), nwit=2)
    rb.zero("DB1.5", f.reduce(
        lft(X(A.L_succ), Y(Dd)) + lft(Y(A.R_succ), X(T(Ds)))
        - rgt(Y(A.L_prec), X(T(Dp))) - rgt(X(A.R_prec), Y(Dd))), nwit=2)
    rb.zero("DB1.6", f.reduce(
        rgt(Y(A.R_dot), X(Ds)) + lft(Y(A.L_succ), X(Ds))
        - T(rgt(X(A.R_prec), Y(Dp))) - T(lft(X(A.L_dot), Y(Dp)))), nwit=2)
    return rb.build()


def check_bialgebra(B: Bialgebra) -> Report:
    """Algebra axioms, coalgebra axioms (``co.*``) and the six compatibility conditions."""
    report = check_compatibility(B)
    if not B.algebra.validated:
        report = report.merge(check_anti_dendriform(B.algebra))
    return report.merge(check_coalgebra(B.coalgebra).prefixed("co."))


def coboundary_coproducts(A: AntiDendAlgebra, r: np.ndarray) -> Coalgebra:
    """``Delta_>(x) = -(R_<(x) (x) I + I (x) L_.(x)) r`` and
    ``Delta_<(x) = (R_.(x) (x) I + I (x) L_>(x)) r``, for ``x`` running over the basis."""
    f = A.field
    r = f.coerce(r)
    if r.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"r has shape {r.shape}, algebra has dimension {A.dim}")
    T = transpose
    dsucc = f.reduce(-(f.matmul(A.R_prec, r) + f.matmul(r, T(A.L_dot))))
    dprec = f.reduce(f.matmul(A.R_dot, r) + f.matmul(r, T(A.L_succ)))
    return Coalgebra(f, dsucc, dprec)


def coboundary_bialgebra(A: AntiDendAlgebra, r: np.ndarray) -> Bialgebra:
    return Bialgebra(A, coboundary_coproducts(A, r))


def check_coboundary_conditions(A: AntiDendAlgebra, r: np.ndarray) -> Report:
    """The six conditions ``CD3`` .. ``CD8`` characterising coboundary bialgebras.

    ``CD3``/``CD4`` are checked on basis pairs ``(x, y)``; ``CD5`` .. ``CD8`` on
    basis vectors ``x``.
    """
    from .ybe import ybe_residuals
    f = A.field
    r = f.coerce(r)
    if r.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"r has shape {r.shape}, algebra has dimension {A.dim}")
    T = transpose
    s = f.reduce(r + r.T)

    def X(stack):
        return stack[:, None]

    def Y(stack):
        return stack[None, :]

    def both(M1, M2, t):  # (M1 (x) M2) t
        return f.matmul(f.matmul(M1, t), T(M2))

    rb = ReportBuilder(f)
    Ls_x_Rs_y = f.matmul(X(A.L_succ), Y(A.R_succ))
    Rp_x_Lp_y = f.matmul(X(A.R_prec), Y(A.L_prec))
    cd3 = (f.matmul(Ls_x_Rs_y, s)
           - both(Y(A.R_succ), X(A.R_prec), s)
           + f.matmul(s, T(Rp_x_Lp_y))
           - both(X(A.L_succ), Y(A.L_prec), s))
    rb.zero("CD3", f.reduce(cd3), nwit=2)

    u = f.reduce(f.matmul(A.L_succ, s) + f.matmul(s, T(A.R_dot)))  # indexed by y
    cd4 = f.matmul(X(A.R_prec), Y(u)) + f.matmul(Y(u), T(X(A.L_dot)))
    rb.zero("CD4", f.reduce(cd4), nwit=2)

    d, d1, d2 = ybe_residuals(A, r)

    def first(stack, t):  # (M (x) I (x) I) t for every basis x
        return f.einsum("xip,pjk->xijk", stack, t)

    def third(stack, t):  # (I (x) I (x) M) t
        return f.einsum("xkp,ijp->xijk", stack, t)

    rb.zero("CD5", f.reduce(first(A.R_prec, d1) - third(A.L_succ, d1)), nwit=1)
    rb.zero("CD6", f.reduce(third(A.L_dot, d2) + first(A.R_prec, d2)), nwit=1)
    rb.zero("CD7", f.reduce(first(A.R_dot, d) + third(A.L_succ, d)), nwit=1)
    rb.equal("CD8", first(A.R_prec, d2), third(A.L_succ, d), nwit=1)
    return rb.build()


def double_algebra(B: Bialgebra, *, require_valid: bool = False) -> AntiDendAlgebra:
    """The double ``A (+) A*``; basis ``e_1..e_n`` followed by ``e_1*..e_n*``.

    ``A*`` acts on ``A`` through the dual of its regular representation and
    vice versa; all dual operators are matrix transposes.
    """
    if require_valid and not B.validated:
        B = B.validate()
    A = B.algebra
    Ad = dualize(B.coalgebra)
    f = A.field
    n = A.dim
    T = transpose
    succ = f.zeros((2 * n,) * 3)
    prec = f.zeros((2 * n,) * 3)
    a, d = slice(0, n), slice(n, 2 * n)

    # products of two vectors of A, and of two vectors of A*
    succ[a, a, a] = A.succ
    prec[a, a, a] = A.prec
    succ[d, d, d] = Ad.succ
    prec[d, d, d] = Ad.prec

    # x in A times b in A*:   x > b = L*_<(b) x  -  (R*_< + R*_>)(x) b   (A*-ops on A, A-ops on A*)
    #                         x < b = -(L*_< + L*_>)(b) x  +  R*_>(x) b
    # stacks are indexed [operator argument, row, column]; the product e_i o e_j has
    # coordinates column i of the operator for e_j (or column j of that for e_i)
    def cols(stack):  # out[i, j, k] = stack[j][k, i]: operator indexed by the *second* factor
        return np.transpose(stack, (2, 0, 1))

    def cols_first(stack):  # out[i, j, k] = stack[i][k, j]: operator indexed by the first factor
        return np.transpose(stack, (0, 2, 1))

    # e_i (A) with e_j* (A*)
    succ[a, d, a] = cols(T(Ad.L_prec))
    succ[a, d, d] = f.reduce(-cols_first(T(A.R_dot)))
    prec[a, d, a] = f.reduce(-cols(T(Ad.L_dot)))
    prec[a, d, d] = cols_first(T(A.R_succ))

    # e_i* (A*) with e_j (A):  a > y = -(R*_< + R*_>)(a) y + L*_<(y) a
    #                          a < y = R*_>(a) y - (L*_< + L*_>)(y) a
    succ[d, a, a] = f.reduce(-cols_first(T(Ad.R_dot)))
    succ[d, a, d] = cols(T(A.L_prec))
    prec[d, a, a] = cols_first(T(Ad.R_succ))
    prec[d, a, d] = f.reduce(-cols(T(A.L_dot)))
    return AntiDendAlgebra(f, succ, prec)
