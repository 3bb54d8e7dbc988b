"""Exact scalar fields: the rationals and prime fields.

Arrays over a field are numpy arrays. Rational arrays hold
:class:`fractions.Fraction` objects (``dtype=object``); prime-field arrays
hold canonical residues in ``[0, p)``, as ``int64`` when products of a few
residues cannot overflow and as Python ints otherwise.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BadPrime, ScalarSyntaxError

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")

# residues below this bound are stored as int64; a contraction of up to four
# factors over 32^2 terms then stays far below 2**63
_INT64_PRIME_BOUND = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of :data:`QQ` and :class:`PrimeField`."""

    tag: str
    dtype: type

    def scalar(self, value):
        raise NotImplementedError

    def reduce(self, arr):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def array(self, data) -> np.ndarray:
        """Coerce nested data (ints, Fractions, field elements) into a canonical array."""
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=self.dtype)
        flat_in = arr.reshape(-1)
        flat_out = out.reshape(-1)
        for idx, v in enumerate(flat_in):
            flat_out[idx] = self.scalar(v)
        return out

    def coerce(self, data) -> np.ndarray:
        """Like :meth:`array`, with a fast path for integer arrays over a prime field."""
        if (self.dtype is not object and isinstance(data, np.ndarray)
                and np.issubdtype(data.dtype, np.integer)):
            return self.reduce(data.astype(self.dtype))
        return self.array(data)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def is_zero(self, arr) -> bool:
        return not np.any(np.asarray(arr) != 0)

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        """Exact ``np.einsum`` followed by reduction into the field."""
        return self.reduce(np.einsum(subscripts, *operands))

    def matmul(self, a, b) -> np.ndarray:
        return self.reduce(np.matmul(a, b))

    def __repr__(self):
        return f"<field {self.tag}>"


class Rationals(Field):
    tag = "Q"
    dtype = object

    def scalar(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot interpret {value!r} as a rational number")

    def reduce(self, arr):
        return arr

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        # clear denominators and contract over Python ints, which is far
        # cheaper than Fraction arithmetic in the inner loop
        scaled, scale = [], 1
        for op in operands:
            op = np.asarray(op, dtype=object)
            den = math.lcm(1, *(Fraction(v).denominator for v in op.flat))
            scaled.append(np.frompyfunc(lambda v, d=den: int(Fraction(v) * d), 1, 1)(op).astype(object)
                          if op.size else op)
            scale *= den
        out = np.einsum(subscripts, *scaled, optimize=len(operands) > 2)
        if np.ndim(out) == 0:
            return Fraction(int(out), scale)
        return np.frompyfunc(lambda v: Fraction(int(v), scale), 1, 1)(out).astype(object)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(x)

    def parse(self, text: str):
        m = _RATIONAL.match(text.strip())
        if not m:
            raise ScalarSyntaxError(f"invalid rational scalar {text!r}")
        num = int(m.group(1))
        if m.group(2) is None:
            return Fraction(num)
        den = int(m.group(2))
        if den == 0:
            raise ScalarSyntaxError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def __reduce__(self):
        return (_rationals, ())

    def format(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise BadPrime(f"{p} is not prime")
        self.p = p
        self.tag = f"p{p}"
        self.dtype = np.int64 if p < _INT64_PRIME_BOUND else object

    def scalar(self, value):
        p = self.p
        if isinstance(value, (int, np.integer)):
            return int(value) % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot interpret {value!r} as an element of F_{p}")

    def reduce(self, arr):
        return arr % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, -1, self.p)

    def parse(self, text: str):
        m = _RATIONAL.match(text.strip())
        if not m:
            raise ScalarSyntaxError(f"invalid residue {text!r} for F_{self.p}")
        num = int(m.group(1))
        if m.group(2) is None:
            return num % self.p
        den = int(m.group(2))
        if den % self.p == 0:
            raise ScalarSyntaxError(f"denominator of {text!r} vanishes in F_{self.p}")
        return num * pow(den, -1, self.p) % self.p

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


def _rationals():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str) -> Field:
    """``"Q"`` for the rationals, ``"pN"`` for the prime field of order N."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    if tag[:1] in ("p", "F") and tag[1:].isdigit():
        return GF(int(tag[1:]))
    raise BadPrime(f"unknown field tag {tag!r}")
