"""Anti-dendriform algebras, their associative algebras, and representations.

An algebra of dimension ``n`` is given by structure constants
``succ[i, j, k]`` and ``prec[i, j, k]``:
``e_i > e_j = sum_k succ[i, j, k] e_k`` and likewise for ``<``.

Every axiom check evaluates both sides of each identity on all basis
tuples at once; by multilinearity this is a complete check.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, NotAnAlgebra, UnknownVariant
from .fields import Field
from .linalg import transpose
from .report import Report, ReportBuilder


def left_stack(c: np.ndarray) -> np.ndarray:
    """``out[a]`` is the matrix of ``y -> e_a * y`` for the product with constants ``c``."""
    return np.ascontiguousarray(np.transpose(c, (0, 2, 1)))


def right_stack(c: np.ndarray) -> np.ndarray:
    """``out[a]`` is the matrix of ``y -> y * e_a``."""
    return np.ascontiguousarray(np.transpose(c, (1, 2, 0)))


def _frozen(field: Field, data, ndim: int, what: str) -> np.ndarray:
    arr = field.coerce(data)
    if arr.ndim != ndim or len(set(arr.shape)) != 1:
        raise DimensionMismatch(f"{what} must be a cube of rank {ndim}, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


def _same_field(*objs):
    fields = {o.field for o in objs}
    if len(fields) != 1:
        raise FieldMismatch(f"operands live over different fields: {sorted(f.tag for f in fields)}")


@dataclass(frozen=True, eq=False)
class AntiDendAlgebra:
    field: Field
    succ: np.ndarray
    prec: np.ndarray
    validated: bool = False
    name: str | None = None

    def __post_init__(self):
        succ = _frozen(self.field, self.succ, 3, "succ constants")
        prec = _frozen(self.field, self.prec, 3, "prec constants")
        if succ.shape != prec.shape:
            raise DimensionMismatch("succ and prec constants have different dimensions")
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "prec", prec)

    @property
    def dim(self) -> int:
        return self.succ.shape[0]

    @cached_property
    def dot(self) -> np.ndarray:
        return self.field.reduce(self.succ + self.prec)

    # operator stacks, indexed by basis vector
    @cached_property
    def L_succ(self):
        return left_stack(self.succ)

    @cached_property
    def R_succ(self):
        return right_stack(self.succ)

    @cached_property
    def L_prec(self):
        return left_stack(self.prec)

    @cached_property
    def R_prec(self):
        return right_stack(self.prec)

    @cached_property
    def L_dot(self):
        return left_stack(self.dot)

    @cached_property
    def R_dot(self):
        return right_stack(self.dot)

    def op(self, which: str, side: str, x) -> np.ndarray:
        """Matrix of ``L_which(x)`` or ``R_which(x)`` for a coordinate vector ``x``."""
        stack = getattr(self, f"{side}_{which}")
        return self.field.einsum("a,akj->kj", np.asarray(x), stack)

    def mul(self, which: str, x, y) -> np.ndarray:
        c = getattr(self, which)
        return self.field.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), c)

    def validate(self) -> "AntiDendAlgebra":
        """Return a copy flagged as validated, or raise :class:`NotAnAlgebra`."""
        report = check_anti_dendriform(self)
        if not report.ok:
            raise NotAnAlgebra("not an anti-dendriform algebra", report)
        return replace(self, validated=True)

    def __eq__(self, other):
        return (isinstance(other, AntiDendAlgebra) and self.field == other.field
                and np.array_equal(self.succ, other.succ) and np.array_equal(self.prec, other.prec))

    def __hash__(self):
        return hash((self.field, self.succ.tobytes(), self.prec.tobytes()))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<AntiDendAlgebra{label} dim={self.dim} over {self.field.tag}>"


@dataclass(frozen=True, eq=False)
class AssocAlgebra:
    field: Field
    dot: np.ndarray
    validated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "dot", _frozen(self.field, self.dot, 3, "dot constants"))

    @property
    def dim(self) -> int:
        return self.dot.shape[0]

    @cached_property
    def L_dot(self):
        return left_stack(self.dot)

    @cached_property
    def R_dot(self):
        return right_stack(self.dot)

    def __eq__(self, other):
        return (isinstance(other, AssocAlgebra) and self.field == other.field
                and np.array_equal(self.dot, other.dot))

    def __hash__(self):
        return hash((self.field, self.dot.tobytes()))


@dataclass(frozen=True, eq=False)
class Representation:
    """Four stacks of ``m x m`` matrices, one matrix per basis vector of the algebra."""

    field: Field
    lsucc: np.ndarray
    rsucc: np.ndarray
    lprec: np.ndarray
    rprec: np.ndarray

    def __post_init__(self):
        shapes = set()
        for name in ("lsucc", "rsucc", "lprec", "rprec"):
            arr = getattr(self, name)
            arr = self.field.coerce(arr)
            if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
                raise DimensionMismatch(f"{name} must be a stack of square matrices")
            arr.flags.writeable = False
            shapes.add(arr.shape)
            object.__setattr__(self, name, arr)
        if len(shapes) != 1:
            raise DimensionMismatch("representation stacks disagree in shape")

    @property
    def module_dim(self) -> int:
        return self.lsucc.shape[1]

    @property
    def algebra_dim(self) -> int:
        return self.lsucc.shape[0]

    @property
    def ldot(self):
        return self.field.reduce(self.lsucc + self.lprec)

    @property
    def rdot(self):
        return self.field.reduce(self.rsucc + self.rprec)

    def dual(self) -> "Representation":
        """The dual representation on ``V*`` (item (c) of the dual-representation family)."""
        f = self.field
        t = transpose
        return Representation(
            f,
            f.reduce(-(t(self.rprec) + t(self.rsucc))),
            t(self.lprec).copy(),
            t(self.rsucc).copy(),
            f.reduce(-(t(self.lprec) + t(self.lsucc))),
        )

    def __eq__(self, other):
        return isinstance(other, Representation) and self.field == other.field and all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("lsucc", "rsucc", "lprec", "rprec"))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class AssocRepresentation:
    """A bimodule ``(V, l, r)`` over an associative algebra."""

    field: Field
    left: np.ndarray
    right: np.ndarray

    @property
    def module_dim(self) -> int:
        return self.left.shape[1]


# --------------------------------------------------------------------------
# axiom checks


def _require_dims(a, b, what):
    if a != b:
        raise DimensionMismatch(f"{what}: {a} != {b}")


def check_anti_dendriform(A: AntiDendAlgebra) -> Report:
    """Check both axiom families on every basis triple ``(x, y, z)``.

    Condition ``A1.k`` is the k-th equality of the four-term chain
    ``x>(y>z) = -(x.y)>z = -x<(y.z) = (x<y)<z``; ``A2`` is
    ``(x>y)<z = x>(y<z)``.
    """
    f = A.field
    S, Q, D = A.succ, A.prec, A.dot
    rb = ReportBuilder(f)
    rb.chain("A1", [
        f.einsum("bck,akm->abcm", S, S),
        f.reduce(-np.einsum("abk,kcm->abcm", D, S)),
        f.reduce(-np.einsum("bck,akm->abcm", D, Q)),
        f.einsum("abk,kcm->abcm", Q, Q),
    ], nwit=3)
    rb.equal("A2", f.einsum("abk,kcm->abcm", S, Q), f.einsum("bck,akm->abcm", Q, S), nwit=3)
    return rb.build()


def check_associative(B) -> Report:
    """Associativity of ``B.dot`` on every basis triple (accepts either algebra type)."""
    f = B.field
    D = B.dot
    rb = ReportBuilder(f)
    rb.equal("assoc", f.einsum("abk,kcm->abcm", D, D), f.einsum("bck,akm->abcm", D, D), nwit=3)
    return rb.build()


def associated_associative(A: AntiDendAlgebra) -> AssocAlgebra:
    return AssocAlgebra(A.field, A.dot)


def regular_representation(A: AntiDendAlgebra) -> Representation:
    return Representation(A.field, A.L_succ, A.R_succ, A.L_prec, A.R_prec)


def check_representation(A: AntiDendAlgebra, V: Representation) -> Report:
    """Evaluate the four representation families on all basis pairs ``(x, y)``.

    Witness ``(a, b)`` stands for ``x = e_a, y = e_b``.
    """
    _same_field(A, V)
    _require_dims(A.dim, V.algebra_dim, "representation indexed by the wrong algebra")
    f = A.field
    S, Q, D = A.succ, A.prec, A.dot
    ls, rs, lp, rp = V.lsucc, V.rsucc, V.lprec, V.rprec
    ld, rd = V.ldot, V.rdot

    def comp(X, Y):
        # X(e_a) Y(e_b)
        return f.matmul(X[:, None], Y[None, :])

    def comp_rev(X, Y):
        # X(e_b) Y(e_a)
        return f.matmul(X[None, :], Y[:, None])

    def at(c, stack):
        # stack(e_a * e_b) for the product with constants c
        return f.einsum("abk,kij->abij", c, stack)

    rb = ReportBuilder(f)
    rb.chain("R1", [comp(ls, ls), f.reduce(-at(D, ls)), f.reduce(-comp(lp, ld)), at(Q, lp)], nwit=2)
    rb.chain("R2", [at(S, rs), f.reduce(-comp_rev(rs, rd)), f.reduce(-at(D, rp)), comp_rev(rp, rp)], nwit=2)
    rb.chain("R3", [comp(ls, rs), f.reduce(-comp_rev(rs, ld)),
                    f.reduce(-comp(lp, rd)), comp_rev(rp, lp)], nwit=2)
    rb.equal("R4.1", at(S, lp), comp(ls, lp), nwit=2)
    rb.equal("R4.2", comp_rev(rp, rs), at(Q, rs), nwit=2)
    rb.equal("R4.3", comp_rev(rp, ls), comp(ls, rp), nwit=2)
    return rb.build()


def check_assoc_representation(B, V: AssocRepresentation) -> Report:
    """Bimodule laws ``l(xy) = l(x)l(y)``, ``r(xy) = r(y)r(x)``, ``l(x)r(y) = r(y)l(x)``."""
    f = B.field
    D = B.dot
    l, r = V.left, V.right
    rb = ReportBuilder(f)
    rb.equal("AR.1", f.einsum("abk,kij->abij", D, l), f.matmul(l[:, None], l[None, :]), nwit=2)
    rb.equal("AR.2", f.einsum("abk,kij->abij", D, r), f.matmul(r[None, :], r[:, None]), nwit=2)
    rb.equal("AR.3", f.matmul(l[:, None], r[None, :]), f.matmul(r[None, :], l[:, None]), nwit=2)
    return rb.build()


DERIVED_VARIANTS = ("assoc-a", "assoc-b", "dual-c", "assoc-dual-d", "assoc-dual-e")


def derived_representations(A: AntiDendAlgebra, V: Representation, variant: str):
    """Representations built from ``V``.

    ``assoc-a``      ``(V, -l>, -r<)`` over ``(A, .)``
    ``assoc-b``      ``(V, l> + l<, r> + r<)`` over ``(A, .)``
    ``dual-c``       the dual representation of ``(A, >, <)`` on ``V*``
    ``assoc-dual-d`` ``(V*, -r<*, -l>*)`` over ``(A, .)``
    ``assoc-dual-e`` ``(V*, r<* + r>*, l<* + l>*)`` over ``(A, .)``, the dual of ``assoc-b``
    """
    _same_field(A, V)
    f = V.field
    t = transpose
    if variant == "assoc-a":
        return AssocRepresentation(f, f.reduce(-V.lsucc), f.reduce(-V.rprec))
    if variant == "assoc-b":
        return AssocRepresentation(f, V.ldot, V.rdot)
    if variant == "dual-c":
        return V.dual()
    if variant == "assoc-dual-d":
        return AssocRepresentation(f, f.reduce(-t(V.rprec)), f.reduce(-t(V.lsucc)))
    if variant == "assoc-dual-e":
        return AssocRepresentation(f, t(V.rdot).copy(), t(V.ldot).copy())
    raise UnknownVariant(f"unknown variant {variant!r}; expected one of {DERIVED_VARIANTS}")


def check_homomorphism(fmap, src, dst, which: str = "both") -> Report:
    """Check ``f(x o y) = f(x) o f(y)`` on basis pairs.

    ``which="both"`` checks ``>`` and ``<`` (both algebras anti-dendriform);
    ``which="dot"`` checks the associative products only.
    """
    _same_field(src, dst)
    f = src.field
    fmap = np.asarray(fmap)
    if fmap.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"map of shape {fmap.shape} does not go from dim {src.dim} to dim {dst.dim}")
    if which == "both":
        products = ("succ", "prec")
    elif which == "dot":
        products = ("dot",)
    else:
        raise UnknownVariant(f"which must be 'both' or 'dot', got {which!r}")
    rb = ReportBuilder(f)
    for name in products:
        cs, cd = getattr(src, name), getattr(dst, name)
        rb.equal(f"hom.{name}",
                 f.einsum("abk,mk->abm", cs, fmap),
                 f.einsum("ia,jb,ijm->abm", fmap, fmap, cd), nwit=2)
    return rb.build()


def direct_sum(A: AntiDendAlgebra, B: AntiDendAlgebra) -> AntiDendAlgebra:
    """``A (+) B`` with componentwise products; basis of ``A`` first."""
    _same_field(A, B)
    f = A.field
    n, m = A.dim, B.dim
    succ = f.zeros((n + m,) * 3)
    prec = f.zeros((n + m,) * 3)
    succ[:n, :n, :n] = A.succ
    prec[:n, :n, :n] = A.prec
    succ[n:, n:, n:] = B.succ
    prec[n:, n:, n:] = B.prec
    return AntiDendAlgebra(f, succ, prec)


def zero_algebra(n: int, field: Field) -> AntiDendAlgebra:
    return AntiDendAlgebra(field, field.zeros((n, n, n)), field.zeros((n, n, n)), name=f"Z{n}")
