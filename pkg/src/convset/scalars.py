"""Coefficient backends: exact Gaussian rationals and fixed-precision floats."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from gmpy2 import mpq

__all__ = [
    "QQi",
    "Backend",
    "RATIONAL",
    "float_backend",
    "to_mpq",
    "parse_complex",
    "log_abs",
]


def to_mpq(value) -> mpq:
    """Exact conversion of int, Fraction, float, mpq or decimal/"p/q" string."""
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            return mpq(value)
        return mpq(Fraction(value))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return mpq(value)
    return mpq(value)


class QQi:
    """Exact complex number with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(_Q0) else to_mpq(re)
        self.im = im if type(im) is type(_Q0) else to_mpq(im)

    @classmethod
    def coerce(cls, value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, complex):
            return cls(to_mpq(value.real), to_mpq(value.imag))
        if isinstance(value, str):
            re_, im_ = parse_complex(value)
            return cls(re_, im_)
        if isinstance(value, (int, float, Fraction)) or type(value) is type(_Q0):
            return cls(to_mpq(value), _Q0)
        raise TypeError(f"cannot convert {type(value).__name__} exactly")

    def __add__(self, other):
        if type(other) is not QQi:
            other = QQi.coerce(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not QQi:
            other = QQi.coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not QQi:
            other = QQi.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return QQi(a * c, _Q0)
        return QQi(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not QQi:
            other = QQi.coerce(other)
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("exact complex division by zero")
        a, b = self.re, self.im
        return QQi((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return QQi(1) / (self ** (-e))
        result, base = QQi(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not QQi:
            try:
                other = QQi.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


_Q0 = mpq(0)

_COMPLEX_RE = re.compile(
    r"""^\s*(?P<re>[+-]?[^+\-j\s]+(?:[eE][+-]?\d+)?)?
        \s*(?:(?P<im>[+-]?\s*[^+\-j\s]*(?:[eE][+-]?\d+)?)j)?\s*$""",
    re.X,
)


def parse_complex(text: str) -> tuple[mpq, mpq]:
    """Parse "1/2", "-0.25", "3j", "1+2j", "1/3-1/4j" into exact (re, im)."""
    m = _COMPLEX_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse complex number {text!r}")
    re_ = to_mpq(m.group("re")) if m.group("re") else _Q0
    im_txt = m.group("im")
    if im_txt is None:
        im_ = _Q0
    else:
        im_txt = im_txt.replace(" ", "")
        if im_txt in ("", "+"):
            im_ = mpq(1)
        elif im_txt == "-":
            im_ = mpq(-1)
        else:
            im_ = to_mpq(im_txt)
    return re_, im_


@lru_cache(maxsize=None)
def _float_context(precision: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx


@dataclass(frozen=True)
class Backend:
    """Coefficient field of a series: ``rational`` (exact) or ``float``."""

    kind: str = "rational"
    precision: int = 128

    def __post_init__(self):
        if self.kind not in ("rational", "float"):
            raise ValueError(f"unknown backend {self.kind!r}")
        if self.kind == "float" and self.precision < 53:
            raise ValueError("float backend precision must be at least 53 bits")

    @property
    def exact(self) -> bool:
        return self.kind == "rational"

    @property
    def context(self) -> mpmath.MPContext:
        return _float_context(self.precision)

    def coerce(self, value):
        if self.exact:
            return QQi.coerce(value)
        ctx = self.context
        if isinstance(value, QQi):
            return ctx.mpc(_mpq_to_mpf(ctx, value.re), _mpq_to_mpf(ctx, value.im))
        if isinstance(value, str):
            re_, im_ = parse_complex(value)
            return ctx.mpc(_mpq_to_mpf(ctx, re_), _mpq_to_mpf(ctx, im_))
        if type(value) is type(_Q0) or isinstance(value, Fraction):
            return ctx.mpc(_mpq_to_mpf(ctx, to_mpq(value)))
        return ctx.mpc(value)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def label(self) -> str:
        return "rational" if self.exact else f"float{self.precision}"


def _mpq_to_mpf(ctx, q: mpq):
    return ctx.mpf(int(q.numerator)) / ctx.mpf(int(q.denominator))


RATIONAL = Backend("rational")


def float_backend(precision: int = 128) -> Backend:
    return Backend("float", precision)


def log_abs(c) -> float:
    """log|c| as a float, without overflow for huge exact values; -inf at zero."""
    if isinstance(c, QQi):
        a2 = c.abs2()
        if not a2:
            return -math.inf
        return 0.5 * (math.log(int(a2.numerator)) - math.log(int(a2.denominator)))
    a = abs(c)
    if not a:
        return -math.inf
    if isinstance(a, (int, float)):
        return math.log(a)
    return float(mpmath.log(a))

