"""Yang-Baxter type residuals, invariance, classification and factorization.

Dual-space conventions: for a 2-tensor ``r`` the operator ``T_r: A* -> A`` has
matrix ``r.T`` (so ``T_r(e_a*) = sum_j r[a, j] e_j``). Evaluations on dual
basis pairs ``(e_a*, e_b*)`` produce arrays ``out[a, b, k]`` holding the k-th
coordinate of the value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AntiDendAlgebra, check_homomorphism, direct_sum
from .bialgebra import Bialgebra, coboundary_bialgebra, double_algebra, dualize, coboundary_coproducts
from .errors import DimensionMismatch, NotFactorizable, UnknownPattern
from .linalg import invert, is_invertible, solve, block
from .report import Failure, Report, ReportBuilder

LISTED_PATTERNS = ("12*13", "23*12", "31*23", "21*13", "32*21", "31*32",
                   "13*32", "23*21", "21*31", "23*13", "12*31")

_PATTERN = re.compile(r"^([123])([123])\s*[*∗]\s*([123])([123])$")
_PRODUCTS = {">": "succ", "succ": "succ", "<": "prec", "prec": "prec", ".": "dot", "dot": "dot"}


def _parse_pattern(pattern: str):
    m = _PATTERN.match(pattern.strip())
    if not m:
        raise UnknownPattern(f"malformed pattern {pattern!r}")
    x, y, z, w = (int(g) for g in m.groups())
    if x == y or z == w:
        raise UnknownPattern(f"pattern {pattern!r} repeats a leg inside one tensor")
    shared = {x, y} & {z, w}
    if len(shared) != 1:
        raise UnknownPattern(f"pattern {pattern!r} must share exactly one leg")
    return (x, y), (z, w), shared.pop()


def _structure(A: AntiDendAlgebra, which: str) -> np.ndarray:
    try:
        return getattr(A, _PRODUCTS[which])
    except KeyError:
        raise UnknownPattern(f"unknown product {which!r}; use '>', '<' or '.'") from None


def _square(A: AntiDendAlgebra, r, what="r") -> np.ndarray:
    r = A.field.coerce(r)
    if r.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"{what} has shape {r.shape}, algebra has dimension {A.dim}")
    return r


def tensor_pair_product(A: AntiDendAlgebra, r, s, pattern: str, which: str) -> np.ndarray:
    """``r_{xy} * s_{zw}`` as a 3-tensor.

    ``r_{xy}`` puts the first factor of ``r`` on leg ``x`` and the second on
    leg ``y``. On the leg shared by both tensors the product of the element of
    ``r`` (left) with the element of ``s`` (right) is taken.
    """
    (x, y), (z, w), shared = _parse_pattern(pattern)
    r = _square(A, r)
    s = _square(A, s, "s")
    c = _structure(A, which)
    first = {x: "p", y: "q"}
    second = {z: "u", w: "v"}
    lhs1 = "".join("f" if leg == shared else first[leg] for leg in (x, y))
    lhs2 = "".join("g" if leg == shared else second[leg] for leg in (z, w))
    out = "".join("k" if leg == shared else (first.get(leg) or second[leg]) for leg in (1, 2, 3))
    return A.field.einsum(f"{lhs1},{lhs2},fgk->{out}", r, s, c)


def ybe_residuals(A: AntiDendAlgebra, r):
    """``(D, D1, D2)`` where

    * ``D  = r12 . r13 + r23 > r12 - r13 < r23``
    * ``D1 = r23 . r12 + r13 > r23 + r12 < r13``
    * ``D2 = r13 . r23 - r12 > r13 + r23 < r12``
    """
    f = A.field
    r = _square(A, r)

    def p(pattern, which):
        return tensor_pair_product(A, r, r, pattern, which)

    d = f.reduce(p("12*13", ".") + p("23*12", ">") - p("13*23", "<"))
    d1 = f.reduce(p("23*12", ".") + p("13*23", ">") + p("12*13", "<"))
    d2 = f.reduce(p("13*23", ".") - p("12*13", ">") + p("23*12", "<"))
    return d, d1, d2


def t_operator(r) -> np.ndarray:
    """Matrix of ``T_r: A* -> A``."""
    r = np.asarray(r)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise DimensionMismatch(f"expected a square 2-tensor, got shape {r.shape}")
    return r.T.copy()


# -- evaluation helpers on dual basis pairs --------------------------------

def _r_star(f, U, stack):
    """``R*(U e_a*) e_b*``: operator argument from the first slot."""
    return f.einsum("ca,cbk->abk", U, stack)


def _l_star(f, V, stack):
    """``L*(V e_b*) e_a*``: operator argument from the second slot."""
    return f.einsum("cb,cak->abk", V, stack)


def _apply(f, T, w):
    return f.einsum("km,abm->abk", T, w)


def _product(f, U, V, c):
    """``U(e_a*) o V(e_b*)``."""
    return f.einsum("ia,jb,ijk->abk", U, V, c)


def _op_then_T(f, stack, T):
    """``M(e_a) T(e_b*)`` for the stack of operators ``M``."""
    return f.einsum("akm,mb->abk", stack, T)


def _T_of_dual(f, T, stack):
    """``T(M*(e_a) e_b*)``."""
    return f.einsum("km,abm->abk", T, stack)


def check_invariant(A: AntiDendAlgebra, t) -> Report:
    """``(R_<(x) (x) I + I (x) L_.(x)) t = 0`` (``IE3``) and
    ``(R_.(x) (x) I + I (x) L_>(x)) t = 0`` (``IE4``) for every basis ``x``."""
    f = A.field
    t = _square(A, t, "t")
    rb = ReportBuilder(f)
    rb.zero("IE3", f.reduce(f.matmul(A.R_prec, t) + f.matmul(t, np.swapaxes(A.L_dot, 1, 2))), nwit=1)
    rb.zero("IE4", f.reduce(f.matmul(A.R_dot, t) + f.matmul(t, np.swapaxes(A.L_succ, 1, 2))), nwit=1)
    return rb.build()


def check_invariant_dual(A: AntiDendAlgebra, r) -> Report:
    """Dual pairing form of invariance on ``(zeta, eta)`` (``IE5``, ``IE6``)."""
    f = A.field
    r = _square(A, r)
    Tr, Tt = r.T, r
    rb = ReportBuilder(f)
    rb.equal("IE5", _r_star(f, Tr, A.R_dot), f.reduce(-_l_star(f, Tt, A.L_prec)), nwit=2)
    rb.equal("IE6", _r_star(f, Tr, A.R_succ), f.reduce(-_l_star(f, Tt, A.L_dot)), nwit=2)
    return rb.build()


def check_invariant_operator(A: AntiDendAlgebra, r) -> Report:
    """Operator form on ``(x, zeta)``: ``L_.(x) T_r = -T_r R*_<(x)`` and
    ``L_>(x) T_r = -T_r R*_.(x)`` (``IE7.1``, ``IE7.2``)."""
    f = A.field
    r = _square(A, r)
    Tr = r.T
    rb = ReportBuilder(f)
    rb.equal("IE7.1", _op_then_T(f, A.L_dot, Tr), f.reduce(-_T_of_dual(f, Tr, A.R_prec)), nwit=2)
    rb.equal("IE7.2", _op_then_T(f, A.L_succ, Tr), f.reduce(-_T_of_dual(f, Tr, A.R_dot)), nwit=2)
    return rb.build()


def check_invariant_adjoint(A: AntiDendAlgebra, t) -> Report:
    """``T_t L*_.(x) = -R_<(x) T_t`` and ``T_t L*_>(x) = -R_.(x) T_t`` (``IE9.1``, ``IE9.2``).

    Equivalent to invariance when ``t`` is symmetric.
    """
    f = A.field
    t = _square(A, t, "t")
    Tt = t.T
    rb = ReportBuilder(f)
    rb.equal("IE9.1", _T_of_dual(f, Tt, A.L_dot), f.reduce(-_op_then_T(f, A.R_prec, Tt)), nwit=2)
    rb.equal("IE9.2", _T_of_dual(f, Tt, A.L_succ), f.reduce(-_op_then_T(f, A.R_dot, Tt)), nwit=2)
    return rb.build()


def check_invariant_consequences(A: AntiDendAlgebra, t) -> Report:
    """The three identities ``IE11`` .. ``IE13`` that follow from invariance of a symmetric ``t``."""
    f = A.field
    t = _square(A, t, "t")
    Tt = t.T
    rb = ReportBuilder(f)
    rb.equal("IE11", _op_then_T(f, A.L_prec, Tt), _T_of_dual(f, Tt, A.R_succ), nwit=2)
    rb.equal("IE12", _T_of_dual(f, Tt, A.L_prec), _op_then_T(f, A.R_succ, Tt), nwit=2)
    rb.equal("IE13", _r_star(f, Tt, A.R_prec), _l_star(f, Tt, A.L_succ), nwit=2)
    return rb.build()


def symmetric_part(r) -> np.ndarray:
    r = np.asarray(r)
    return r + r.T


def induced_dual_products(A: AntiDendAlgebra, r) -> AntiDendAlgebra:
    """The products ``>_r`` and ``<_r`` on ``A*`` (basis ``e_1*..e_n*``)."""
    f = A.field
    r = _square(A, r)
    Tr, Tt = r.T, r
    succ = f.reduce(-_r_star(f, Tr, A.R_dot) - _l_star(f, Tt, A.L_prec))
    prec = f.reduce(_r_star(f, Tr, A.R_succ) + _l_star(f, Tt, A.L_dot))
    return AntiDendAlgebra(f, succ, prec)


def induced_dot(A: AntiDendAlgebra, r) -> np.ndarray:
    """``zeta ._r eta = L*_>(T_tau(r) eta) zeta - R*_<(T_r zeta) eta``."""
    f = A.field
    r = _square(A, r)
    return f.reduce(_l_star(f, r, A.L_succ) - _r_star(f, r.T, A.R_prec))


def ya_operator_forms(A: AntiDendAlgebra, r) -> dict:
    """Both sides of the six operator equations on ``A*`` tied to ``D``, ``D1``, ``D2``.

    Keys ``"a"`` .. ``"f"``; values are ``(residual name, left, right)`` with
    arrays indexed ``[a, b, k]`` for ``eta = e_a*``, ``zeta = e_b*``.
    """
    f = A.field
    r = _square(A, r)
    Tr, Tt = r.T, r
    Rs, Rp, Rd = A.R_succ, A.R_prec, A.R_dot
    Ls, Lp, Ld = A.L_succ, A.L_prec, A.L_dot
    neg = lambda x: f.reduce(-x)  # noqa: E731
    return {
        "a": ("D", _product(f, Tt, Tt, A.dot),
              _apply(f, Tt, f.reduce(_r_star(f, Tr, Rp) - _l_star(f, Tt, Ls)))),
        "b": ("D", _product(f, Tr, Tr, A.prec),
              _apply(f, Tr, f.reduce(_r_star(f, Tr, Rs) + _l_star(f, Tt, Ld)))),
        "c": ("D1", _product(f, Tr, Tr, A.succ),
              neg(_apply(f, Tr, f.reduce(_l_star(f, Tt, Lp) + _r_star(f, Tr, Rd))))),
        "d": ("D1", _product(f, Tt, Tt, A.prec),
              neg(_apply(f, Tt, f.reduce(_l_star(f, Tt, Ld) + _r_star(f, Tr, Rs))))),
        "e": ("D2", _product(f, Tr, Tr, A.dot),
              _apply(f, Tr, f.reduce(_l_star(f, Tt, Ls) - _r_star(f, Tr, Rp)))),
        "f": ("D2", _product(f, Tt, Tt, A.succ),
              _apply(f, Tt, f.reduce(_l_star(f, Tt, Lp) + _r_star(f, Tr, Rd)))),
    }


@dataclass(frozen=True)
class Classification:
    skew: bool
    sym_part_invariant: bool
    ybe: bool
    d1_zero: bool
    d2_zero: bool
    quasi_triangular: bool
    triangular: bool
    factorizable: bool
    witnesses: tuple = dc_field(default=(), compare=False)

    FLAGS = ("skew", "sym_part_invariant", "ybe", "d1_zero", "d2_zero",
             "quasi_triangular", "triangular", "factorizable")

    def flags(self) -> dict:
        return {name: getattr(self, name) for name in self.FLAGS}


def _first_nonzero(name, t):
    idx = np.argwhere(np.asarray(t) != 0)
    return [Failure(name, tuple(int(i) for i in idx[0]), (t[tuple(idx[0])],), (0,))] if len(idx) else []


def classify_r(A: AntiDendAlgebra, r) -> Classification:
    """Compute every flag independently, then cross-check the implication
    ``invariant symmetric part and D = 0  =>  D1 = D2 = 0``; a breach is
    recorded as an ``internal`` witness rather than trusted away."""
    f = A.field
    r = _square(A, r)
    s = f.reduce(r + r.T)
    skew = f.is_zero(s)
    inv_report = check_invariant(A, s)
    spi = inv_report.ok
    d, d1, d2 = ybe_residuals(A, r)
    ybe, d1z, d2z = f.is_zero(d), f.is_zero(d1), f.is_zero(d2)
    qt = ybe and spi
    witnesses = list(inv_report.failures[:1]) + _first_nonzero("D", d)
    if qt and not (d1z and d2z):
        witnesses.append(Failure("internal.D1D2", (), (int(d1z), int(d2z)), (1, 1)))
    return Classification(
        skew=skew, sym_part_invariant=spi, ybe=ybe, d1_zero=d1z, d2_zero=d2z,
        quasi_triangular=qt, triangular=qt and skew,
        factorizable=qt and is_invertible(f, s.T),
        witnesses=tuple(witnesses))


def _require_factorizable(A, r):
    cls = classify_r(A, r)
    if not cls.factorizable:
        bad = [name for name in ("ybe", "sym_part_invariant") if not getattr(cls, name)]
        reason = ", ".join(f"not {b}" for b in bad) or "T_(r+tau(r)) is singular"
        raise NotFactorizable(f"r is not factorizable ({reason})")
    return cls


_SPLIT_CACHE: dict = {}


def _content_key(*arrays):
    return tuple((a.shape, tuple(a.ravel().tolist())) for a in arrays)


def _inverse_sym_operator(A: AntiDendAlgebra, r) -> np.ndarray:
    """``T_s^{-1}`` for factorizable ``r``; the check is memoized on content."""
    f = A.field
    key = (f.tag,) + _content_key(A.succ, A.prec, r)
    inv = _SPLIT_CACHE.get(key)
    if inv is None:
        _require_factorizable(A, r)
        inv = invert(f, f.reduce(r + r.T).T)
        if len(_SPLIT_CACHE) >= 128:
            _SPLIT_CACHE.clear()
        _SPLIT_CACHE[key] = inv
    return inv


def factorize(A: AntiDendAlgebra, r, x):
    """Split ``x = x1 - x2`` with ``x1 = T_r T_s^{-1} x`` and ``x2 = -T_tau(r) T_s^{-1} x``
    where ``s = r + tau(r)``."""
    f = A.field
    r = _square(A, r)
    inv = _inverse_sym_operator(A, r)
    x = f.coerce(x)
    if x.shape != (A.dim,):
        raise DimensionMismatch(f"vector has shape {x.shape}, expected ({A.dim},)")
    zeta = f.matmul(inv, x)
    return f.matmul(r.T, zeta), f.reduce(-f.matmul(r, zeta))


def in_image_pair(A: AntiDendAlgebra, r, x1, x2) -> bool:
    """Whether ``(x1, x2) = (T_r zeta, -T_tau(r) zeta)`` for some ``zeta``."""
    f = A.field
    r = _square(A, r)
    stacked = np.concatenate([r.T, f.reduce(-r)], axis=0)
    return solve(f, stacked, np.concatenate([f.coerce(x1), f.coerce(x2)])) is not None


def canonical_double_r(B: Bialgebra):
    """The double ``D = A (+) A*`` with ``r = sum e_i (x) e_i*``."""
    D = double_algebra(B, require_valid=True)
    n = B.dim
    f = B.field
    r = f.zeros((2 * n, 2 * n))
    for i in range(n):
        r[i, n + i] = 1
    return D, f.coerce(r)


def double_iso_phi(A: AntiDendAlgebra, r) -> np.ndarray:
    """Matrix of ``phi(x, zeta) = (x + T_r zeta, x - T_tau(r) zeta)``."""
    f = A.field
    r = _square(A, r)
    _require_factorizable(A, r)
    eye = f.eye(A.dim)
    return block(f, [[eye, r.T], [eye, f.reduce(-r)]])


def check_double_iso(A: AntiDendAlgebra, r) -> Report:
    """``phi`` as an algebra map from the double of ``(A, Delta_r)`` to ``A (+) A``."""
    phi = double_iso_phi(A, r)
    D = double_algebra(coboundary_bialgebra(A, r))
    return check_homomorphism(phi, D, direct_sum(A, A))


__all__ = [
    "LISTED_PATTERNS", "tensor_pair_product", "ybe_residuals", "t_operator",
    "check_invariant", "check_invariant_dual", "check_invariant_operator",
    "check_invariant_adjoint", "check_invariant_consequences", "induced_dual_products",
    "induced_dot", "ya_operator_forms", "Classification", "classify_r", "factorize",
    "in_image_pair", "canonical_double_r", "double_iso_phi", "check_double_iso",
    "dualize", "coboundary_coproducts",
]
