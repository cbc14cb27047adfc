"""Gaussian rational scalars: exact values a + b*i with rational a, b.

All scalar values in the library are of this type; no floats anywhere.
The components are gcd-reduced rationals with positive denominator, which
the rational backend guarantees.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import isqrt
from numbers import Rational

from .errors import ParseError
from .rationals import RAT_ZERO, Rat


def _new(re, im) -> GaussianRational:
    s = GaussianRational.__new__(GaussianRational)
    s.re = re
    s.im = im
    return s


class GaussianRational:
    """Immutable a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(RAT_ZERO) else Rat(re)
        self.im = im if type(im) is type(RAT_ZERO) else Rat(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _new(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b or d:
            return _new(a * c - b * d, a * d + b * c)
        return _new(a * c, RAT_ZERO)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        c, d = other.re, other.im
        if not (c or d):
            raise ZeroDivisionError("division by zero scalar")
        if d:
            n = c * c + d * d
            return self * _new(c / n, -d / n)
        return _new(self.re / c, self.im / c)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> GaussianRational:
        return _new(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __getstate__(self):
        return (self.re, self.im)

    def __setstate__(self, state):
        self.re, self.im = state


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)):
        return _new(Rat(value), RAT_ZERO)
    return None


def qi(re_num, re_den=1, im_num=0, im_den=1) -> GaussianRational:
    """Shorthand constructor from integer components."""
    return _new(Rat(re_num, re_den), Rat(im_num, im_den))


_RAT = r"-?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    rf"^(?:(?P<re>{_RAT})(?:\s*(?P<sign>[+-])\s*(?P<im>{_RAT})\s*i)?|(?P<imonly>{_RAT})\s*i)$"
)


def _parse_rat(text: str):
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ZeroDivisionError
        return Rat(int(num), int(den))
    return Rat(int(text))


def parse_scalar(text: str) -> GaussianRational:
    """Parse 'p', 'p/q', 'p/q + r/s i' or 'r/s i' (signs in numerators)."""
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ParseError(f"malformed scalar {text!r}")
    try:
        if m.group("imonly") is not None:
            return _new(RAT_ZERO, _parse_rat(m.group("imonly")))
        re_part = _parse_rat(m.group("re"))
        if m.group("im") is None:
            return _new(re_part, RAT_ZERO)
        im_part = _parse_rat(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
        return _new(re_part, im_part)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in scalar {text!r}") from None


def format_scalar(value: GaussianRational) -> str:
    """Canonical text form; real scalars omit the imaginary part."""
    re_, im = value.re, value.im
    if not im:
        num, den = re_.numerator, re_.denominator
        return str(num) if den == 1 else f"{num}/{den}"
    re_text = f"{re_.numerator}/{re_.denominator}"
    sign = "+" if im >= 0 else "-"
    im_abs = abs(im)
    return f"{re_text} {sign} {im_abs.numerator}/{im_abs.denominator} i"


def decimal_magnitude(value: GaussianRational, digits: int = 12) -> str:
    """Deterministic decimal approximation of |value| (no floats)."""
    scale = 10**digits
    re_, im = value.re, value.im
    if not im:
        num, den = abs(re_).numerator, abs(re_).denominator
        scaled = num * scale // den
    else:
        mag2 = re_ * re_ + im * im
        f = Fraction(int(mag2.numerator), int(mag2.denominator))
        scaled = isqrt(f.numerator * scale * scale // f.denominator)
    whole, frac = divmod(scaled, scale)
    return f"{whole}.{frac:0{digits}d}"
