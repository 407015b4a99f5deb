"""Scalar backends: exact numbers in Q(sqrt t) and plain floats.

Every geometric object in the package is generic over its coefficient type.
A *field* object decides which type is used and how zero is tested:

* :class:`ExactField` works with :class:`fractions.Fraction` and, when ``t``
  is not the square of a rational, with :class:`Surd` (``a + b*sqrt(t)``).
* :class:`FloatField` works with Python floats and a tolerance.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, float, "Surd"]


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Return the exact square root of ``q`` if it is a rational square."""
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Surd:
    """Element ``a + b*sqrt(t)`` of the quadratic field Q(sqrt t).

    ``t`` must not be a rational square; :class:`ExactField` guarantees this
    so that ``(a, b) == (0, 0)`` exactly when the value is zero.
    """

    __slots__ = ("a", "b", "t")

    def __init__(self, a, b, t):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.t = Fraction(t)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.t != self.t and other.b and self.b:
                raise ValueError(f"mixing Q(sqrt {self.t}) with Q(sqrt {other.t})")
            return other
        if isinstance(other, (int, Rational)):
            return Surd(other, 0, self.t)
        return NotImplemented

    def _t_with(self, other: "Surd") -> Fraction:
        return self.t if self.b else other.t

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self._t_with(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.t)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        t = self._t_with(o)
        return Surd(self.a * o.a + self.b * o.b * t, self.a * o.b + self.b * o.a, t)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.a * self.a - self.b * self.b * self.t
        if norm == 0:
            raise ZeroDivisionError("Surd division by zero")
        return Surd(self.a / norm, -self.b / norm, self.t)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Surd(1, 0, self.t)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, float):
            return float(self) == other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.t))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.t)

    def __abs__(self):
        return abs(float(self))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, t={self.t})"

    def __str__(self):
        return format_scalar(self)


def format_scalar(x: Number) -> str:
    """Canonical text form: ``"3/2"``, ``"-2*sqrt(1/5)"``, ``"1+1/2*sqrt(2)"``."""
    if isinstance(x, Surd):
        if x.b == 0:
            return str(x.a)
        root = f"sqrt({x.t})"
        if x.b == 1:
            irr = root
        elif x.b == -1:
            irr = "-" + root
        else:
            irr = f"{x.b}*{root}"
        if x.a == 0:
            return irr
        return f"{x.a}{'' if irr.startswith('-') else '+'}{irr}"
    if isinstance(x, float):
        return repr(x)
    return str(Fraction(x))


_SURD_RE = re.compile(
    r"^\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)(?=[+-]|\s*$))?\s*"
    r"(?:(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<t>\d+(?:/\d+)?)\))?\s*$"
)


def parse_scalar(text: str) -> Number:
    """Inverse of :func:`format_scalar` (also accepts plain float literals)."""
    text = text.strip()
    m = _SURD_RE.match(text)
    if m and (m.group("a") is not None or m.group("t") is not None):
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        if m.group("t") is None:
            return a
        bs = m.group("b")
        if bs in ("", "+", None):
            b = Fraction(1)
        elif bs == "-":
            b = Fraction(-1)
        else:
            b = Fraction(bs)
        t = Fraction(m.group("t"))
        root = rational_sqrt(t)
        if root is not None:
            return a + b * root
        return Surd(a, b, t) if b else a
    return float(text)


class ExactField:
    """Exact arithmetic in Q(sqrt t); falls back to Q when t is a square."""

    mode = "exact"

    def __init__(self, t=1):
        t = Fraction(t)
        if t <= 0:
            raise ValueError("t must be positive")
        self.t = t
        self._root = rational_sqrt(t)

    def __call__(self, x) -> Number:
        if isinstance(x, (Surd, Fraction)):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, float):
            return Fraction(x)
        return Fraction(x)

    def sqrt_t(self) -> Number:
        if self._root is not None:
            return self._root
        return Surd(0, 1, self.t)

    def sqrt(self, x) -> Number:
        """Square root of a rational ``x`` if it lies in this field."""
        x = Fraction(x) if not isinstance(x, Surd) else x
        if isinstance(x, Surd):
            if x.b != 0:
                raise ValueError(f"no square root of {x} in Q(sqrt {self.t})")
            x = x.a
        r = rational_sqrt(x)
        if r is not None:
            return r
        r = rational_sqrt(x / self.t)
        if r is not None:
            return r * self.sqrt_t()
        raise ValueError(f"sqrt({x}) is not in Q(sqrt {self.t})")

    @staticmethod
    def is_zero(x) -> bool:
        return x == 0

    @staticmethod
    def magnitude(x) -> float:
        return abs(float(x))

    def __repr__(self):
        return f"ExactField(t={self.t})"


class FloatField:
    """Double precision with a fixed zero tolerance."""

    mode = "float"

    def __init__(self, t=1.0, tol: float = 1e-9):
        t = float(Fraction(t)) if not isinstance(t, float) else t
        if t <= 0:
            raise ValueError("t must be positive")
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        self.t = t
        self.tol = tol

    def __call__(self, x) -> float:
        if isinstance(x, str):
            return float(parse_scalar(x))
        return float(x)

    def sqrt_t(self) -> float:
        return math.sqrt(self.t)

    @staticmethod
    def sqrt(x) -> float:
        return math.sqrt(float(x))

    def is_zero(self, x) -> bool:
        return abs(float(x)) <= self.tol

    @staticmethod
    def magnitude(x) -> float:
        return abs(float(x))

    def __repr__(self):
        return f"FloatField(t={self.t}, tol={self.tol})"


Field = Union[ExactField, FloatField]


def make_field(mode: str, t, tol: float = 1e-9) -> Field:
    if mode == "exact":
        return ExactField(t)
    if mode == "float":
        return FloatField(t, tol)
    raise ValueError(f"unknown mode {mode!r}")
