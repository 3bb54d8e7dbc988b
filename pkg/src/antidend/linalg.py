"""Exact dense matrix and tensor routines.

Conventions used throughout the package:

* A matrix ``M`` of a linear map sends the j-th source basis vector to
  ``sum_i M[i, j] * (i-th target basis vector)``.
* A tensor ``r`` of shape ``(n, n)`` stands for ``sum r[i, j] e_i (x) e_j``;
  shape ``(n, n, n)`` likewise for three legs.
* Dual maps are transposes; ``None`` in an operator slot means the identity.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, SingularMatrix
from .fields import Field


def transpose(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2)


def tau(r: np.ndarray) -> np.ndarray:
    """The flip ``a (x) b -> b (x) a``."""
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise DimensionMismatch(f"tau needs a square 2-tensor, got shape {r.shape}")
    return r.T.copy()


def _reduced_echelon(field: Field, m: np.ndarray):
    """Gauss-Jordan elimination with first-nonzero pivoting.

    Returns the reduced rows (lists of scalars) and the pivot columns.
    """
    rows = [[field.scalar(v) for v in row] for row in np.asarray(m)]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.scalar(v * inv) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [field.scalar(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(field: Field, m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(_reduced_echelon(field, m)[1])


def invert(field: Field, m: np.ndarray) -> np.ndarray:
    """Exact inverse; raises :class:`SingularMatrix` when ``det(m) == 0``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"cannot invert a matrix of shape {m.shape}")
    n = m.shape[0]
    augmented = np.concatenate([m, field.eye(n)], axis=1)
    rows, pivots = _reduced_echelon(field, augmented)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return field.array([row[n:] for row in rows])


def is_invertible(field: Field, m: np.ndarray) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(field, m) == m.shape[0]


def solve(field: Field, m: np.ndarray, b: np.ndarray):
    """One exact solution ``x`` of ``m @ x == b`` (free variables set to zero), or ``None``."""
    m = np.asarray(m)
    b = np.asarray(b)
    if m.shape[0] != b.shape[0]:
        raise DimensionMismatch("right-hand side does not match the matrix rows")
    ncols = m.shape[1]
    augmented = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    rows, pivots = _reduced_echelon(field, augmented)
    if ncols in pivots:
        return None
    x = field.zeros(ncols)
    for row, c in zip(rows, pivots):
        x[c] = row[ncols]
    return x


def in_column_space(field: Field, m: np.ndarray, v: np.ndarray) -> bool:
    return solve(field, m, v) is not None


def _check_slot(op, size, leg):
    if op is not None and (op.ndim != 2 or op.shape[1] != size):
        raise DimensionMismatch(f"operator on leg {leg} has shape {op.shape}, tensor leg has {size}")


def act2(field: Field, first, second, t: np.ndarray) -> np.ndarray:
    """``(first (x) second) t`` for a 2-tensor ``t``."""
    _check_slot(first, t.shape[0], 1)
    _check_slot(second, t.shape[1], 2)
    out = t
    if first is not None:
        out = field.matmul(first, out)
    if second is not None:
        out = field.matmul(out, second.T)
    return out


def act3(field: Field, ops, t: np.ndarray) -> np.ndarray:
    """``(M1 (x) M2 (x) M3) t``, contracting each operator against its leg."""
    if len(ops) != 3 or t.ndim != 3:
        raise DimensionMismatch("act3 needs three operator slots and a 3-tensor")
    m1, m2, m3 = ops
    for leg, (op, size) in enumerate(zip(ops, t.shape), start=1):
        _check_slot(op, size, leg)
    out = t
    if m1 is not None:
        out = field.einsum("ip,pjk->ijk", m1, out)
    if m2 is not None:
        out = field.einsum("jp,ipk->ijk", m2, out)
    if m3 is not None:
        out = field.einsum("kp,ijp->ijk", m3, out)
    return out


def block(field: Field, blocks) -> np.ndarray:
    """Assemble a block matrix from a nested list; ``0`` entries become zero blocks."""
    heights = [next(b.shape[0] for b in row if not isinstance(b, int)) for row in blocks]
    widths = [next(row[j].shape[1] for row in blocks if not isinstance(row[j], int))
              for j in range(len(blocks[0]))]
    out = field.zeros((sum(heights), sum(widths)))
    r0 = 0
    for row, h in zip(blocks, heights):
        c0 = 0
        for b, w in zip(row, widths):
            if not isinstance(b, int):
                out[r0:r0 + h, c0:c0 + w] = b
            c0 += w
        r0 += h
    return out
