"""Exhaustive enumeration over prime fields.

Algebras are enumerated in lexicographic order of the flattened constant
vector ``(succ[0,0,0], ..., succ[n-1,n-1,n-1], prec[0,0,0], ...)`` with digits
ascending. The axioms are quadratic in the constants; each polynomial is
checked as soon as its highest-index variable has been assigned, which prunes
whole subtrees while keeping the order.
"""
from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .algebra import AntiDendAlgebra
from .errors import BadPrime, BudgetExceeded, UnknownVariant
from .fields import Field, PrimeField
from .ybe import Classification, classify_r

DEFAULT_BUDGET = 10 ** 7
BUDGET_ENV = "ANTIDEND_SEARCH_BUDGET"
TARGETS = ("algebras", "ybe-solutions")


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchSpec:
    target: str
    dim: int
    field: Field
    base: Optional[AntiDendAlgebra] = None
    filter: Optional[str] = None
    budget: Optional[int] = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise UnknownVariant(f"unknown search target {self.target!r}")
        if not isinstance(self.field, PrimeField):
            raise BadPrime("searches run over prime fields only")
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if self.filter is not None and self.filter not in Classification.FLAGS:
            raise UnknownVariant(f"unknown flag {self.filter!r}; expected one of {Classification.FLAGS}")
        if self.target == "ybe-solutions":
            if self.base is None:
                raise ValueError("a ybe search needs a base algebra")
            if self.base.field != self.field or self.base.dim != self.dim:
                raise ValueError("base algebra does not match the search field and dimension")

    @property
    def unknowns(self) -> int:
        return 2 * self.dim ** 3 if self.target == "algebras" else self.dim ** 2

    @property
    def candidates(self) -> int:
        return self.field.p ** self.unknowns

    def effective_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()

    def check_budget(self):
        if self.candidates > self.effective_budget():
            raise BudgetExceeded(
                f"{self.field.p}^{self.unknowns} = {self.candidates} candidates exceed the budget "
                f"of {self.effective_budget()}")

    def describe(self) -> dict:
        out = {"target": self.target, "dim": self.dim, "field": self.field.tag}
        if self.filter:
            out["filter"] = self.filter
        return out


# -- axiom polynomials -------------------------------------------------------

def _axiom_polynomials(n: int):
    """Quadratic polynomials (``{(a, b): coef}`` with ``a <= b``) whose common
    zeros are exactly the anti-dendriform structures of dimension ``n``."""
    N = n ** 3

    def S(i, j, k):
        return i * n * n + j * n + k

    def P(i, j, k):
        return N + S(i, j, k)

    polys = []
    for x, y, z, k in itertools.product(range(n), repeat=4):
        terms = defaultdict(lambda: defaultdict(int))

        def add(name, coef, a, b):
            key = (a, b) if a <= b else (b, a)
            terms[name][key] += coef

        for m in range(n):
            add("a", 1, S(y, z, m), S(x, m, k))            # x > (y > z)
            for prod in (S, P):
                add("b", 1, prod(x, y, m), S(m, z, k))     # (x . y) > z
                add("c", 1, prod(y, z, m), P(x, m, k))     # x < (y . z)
            add("d", 1, P(x, y, m), P(m, z, k))            # (x < y) < z
            add("e", 1, S(x, y, m), P(m, z, k))            # (x > y) < z
            add("g", 1, P(y, z, m), S(x, m, k))            # x > (y < z)

        for combo in ((("a", 1), ("b", 1)), (("c", 1), ("b", -1)),
                      (("c", 1), ("d", 1)), (("e", 1), ("g", -1))):
            poly = defaultdict(int)
            for name, sign in combo:
                for key, coef in terms[name].items():
                    poly[key] += sign * coef
            poly = {key: c for key, c in poly.items() if c}
            if poly:
                polys.append(poly)
    return polys


class _Compiled:
    def __init__(self, n: int, p: int):
        self.p = p
        self.nvars = 2 * n ** 3
        by_last = [[] for _ in range(self.nvars)]
        seen = set()
        for poly in _axiom_polynomials(n):
            reduced = tuple(sorted((a, b, c % p) for (a, b), c in poly.items() if c % p))
            if not reduced or reduced in seen:
                continue
            seen.add(reduced)
            by_last[max(b for _, b, _ in reduced)].append(reduced)
        self.by_last = by_last

    def ok_at(self, v, depth) -> bool:
        p = self.p
        for poly in self.by_last[depth]:
            if sum(c * v[a] * v[b] for a, b, c in poly) % p:
                return False
        return True

    def solutions(self, prefix=()):
        """All solution vectors extending ``prefix``, in lexicographic order."""
        p, nvars = self.p, self.nvars
        v = list(prefix) + [0] * (nvars - len(prefix))
        for d in range(len(prefix)):
            if not self.ok_at(v, d):
                return
        start = len(prefix)
        if start == nvars:
            yield tuple(v)
            return
        stack_digit = [0] * nvars
        depth = start
        stack_digit[depth] = 0
        while depth >= start:
            digit = stack_digit[depth]
            if digit == p:
                depth -= 1
                if depth >= start:
                    stack_digit[depth] += 1
                continue
            v[depth] = digit
            if self.ok_at(v, depth):
                if depth == nvars - 1:
                    yield tuple(v)
                    stack_digit[depth] += 1
                else:
                    depth += 1
                    stack_digit[depth] = 0
            else:
                stack_digit[depth] += 1


def _vector_to_algebra(field, n, vec) -> AntiDendAlgebra:
    arr = np.array(vec, dtype=np.int64).reshape(2, n, n, n)
    return AntiDendAlgebra(field, arr[0], arr[1], validated=True)


def _shard(args):
    n, p, prefix = args
    return list(_Compiled(n, p).solutions(prefix))


def enumerate_algebras(spec: SearchSpec, workers: int = 1) -> Iterator[AntiDendAlgebra]:
    """Every anti-dendriform algebra of dimension ``spec.dim`` over ``spec.field``.

    With ``workers > 1`` the tree is split by the first constant and the shards
    are merged back in order, so the stream is identical.
    """
    if spec.target != "algebras":
        raise UnknownVariant("spec target must be 'algebras'")
    spec.check_budget()
    n, p, field = spec.dim, spec.field.p, spec.field
    if n == 0:
        yield _vector_to_algebra(field, 0, ())
        return
    if workers > 1:
        prefixes = [(d,) for d in range(p)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for shard in pool.map(_shard, [(n, p, pre) for pre in prefixes]):
                for vec in shard:
                    yield _vector_to_algebra(field, n, vec)
        return
    for vec in _Compiled(n, p).solutions():
        yield _vector_to_algebra(field, n, vec)


def count_algebras(spec: SearchSpec, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_algebras(spec, workers))


def enumerate_ybe(spec: SearchSpec) -> Iterator[tuple]:
    """``(r, classification)`` for every ``r`` solving ``D(r) = 0`` on the base
    algebra, optionally restricted to those with ``spec.filter`` set."""
    if spec.target != "ybe-solutions":
        raise UnknownVariant("spec target must be 'ybe-solutions'")
    spec.check_budget()
    A, n, p = spec.base, spec.dim, spec.field.p
    for digits in itertools.product(range(p), repeat=n * n):
        r = spec.field.coerce(np.array(digits, dtype=np.int64).reshape(n, n))
        cls = classify_r(A, r)
        if not cls.ybe:
            continue
        if spec.filter and not getattr(cls, spec.filter):
            continue
        yield r, cls


__all__ = ["SearchSpec", "DEFAULT_BUDGET", "BUDGET_ENV", "default_budget", "enumerate_algebras",
           "count_algebras", "enumerate_ybe"]
