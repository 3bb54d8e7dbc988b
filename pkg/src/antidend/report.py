"""Pass/fail verdicts with basis-index witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import Field


@dataclass(frozen=True, order=True)
class Failure:
    """One violated equality.

    ``witness`` holds the basis indices the identity was evaluated on;
    ``left`` and ``right`` are the two sides as flat coordinate tuples.
    """

    condition: str
    witness: tuple
    left: tuple = dc_field(compare=False)
    right: tuple = dc_field(compare=False)


@dataclass(frozen=True)
class Report:
    field: Field
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def conditions(self) -> set:
        return {f.condition for f in self.failures}

    def merge(self, *others: "Report") -> "Report":
        failures = list(self.failures)
        for other in others:
            failures.extend(other.failures)
        return Report(self.field, tuple(sorted(failures)))

    def prefixed(self, prefix: str) -> "Report":
        return Report(self.field, tuple(sorted(
            Failure(f"{prefix}{f.condition}", f.witness, f.left, f.right) for f in self.failures)))

    def __str__(self):
        if self.ok:
            return "pass"
        lines = [f"fail ({len(self.failures)} violations)"]
        fmt = self.field.format
        for f in self.failures[:20]:
            left = ", ".join(fmt(v) for v in f.left)
            right = ", ".join(fmt(v) for v in f.right)
            lines.append(f"  {f.condition} at {f.witness}: [{left}] != [{right}]")
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join(lines)


class ReportBuilder:
    """Collect failures from whole-tensor comparisons.

    Both sides of an identity are evaluated at once for every basis tuple;
    the leading ``len(witness axes)`` axes index the tuple and the remaining
    axes hold the coordinates of the value.
    """

    def __init__(self, field: Field):
        self.field = field
        self.failures: list[Failure] = []

    def equal(self, condition: str, left, right, nwit: int) -> bool:
        left = np.asarray(left)
        right = np.asarray(right)
        if left.shape != right.shape:
            left, right = np.broadcast_arrays(left, right)
        diff = left != right
        if diff.ndim > nwit:
            diff = diff.reshape(diff.shape[:nwit] + (-1,)).any(axis=-1)
        if nwit == 0:
            bad = [()] if np.any(diff) else []
        else:
            bad = np.argwhere(diff)
        for idx in bad:
            idx = tuple(int(i) for i in idx)
            self.failures.append(Failure(
                condition, idx,
                tuple(np.asarray(left[idx]).reshape(-1).tolist()),
                tuple(np.asarray(right[idx]).reshape(-1).tolist()),
            ))
        return len(bad) == 0

    def zero(self, condition: str, value, nwit: int) -> bool:
        value = np.asarray(value)
        return self.equal(condition, value, self.field.zeros(value.shape), nwit)

    def chain(self, condition: str, sides, nwit: int) -> bool:
        """Consecutive equalities ``sides[0] = sides[1] = ...`` labelled ``condition.1``, ..."""
        ok = True
        for i in range(len(sides) - 1):
            ok &= self.equal(f"{condition}.{i + 1}", sides[i], sides[i + 1], nwit)
        return ok

    def fail(self, condition: str, witness=(), left=(), right=()):
        self.failures.append(Failure(condition, tuple(witness), tuple(left), tuple(right)))

    def build(self) -> Report:
        return Report(self.field, tuple(sorted(self.failures)))
