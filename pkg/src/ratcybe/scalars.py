"""Exact Gaussian-rational scalars.

Real values are plain ``gmpy2.mpq`` rationals; values with a nonzero
imaginary part are :class:`Gaussian` instances.  ``Gaussian(a, 0)`` collapses
to an ``mpq`` so every scalar has exactly one representation and structural
equality is field equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

from .errors import InputError

__all__ = [
    "Gaussian",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "to_scalar",
    "div",
    "format_scalar",
    "scalar_to_json",
    "is_scalar",
]


class Gaussian:
    """a + b*i with a, b rational and b != 0."""

    __slots__ = ("re", "im")

    def __new__(cls, re, im=0):
        re = mpq(re)
        im = mpq(im)
        if not im:
            return re
        self = object.__new__(cls)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __add__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Gaussian(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Gaussian(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Gaussian(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        return Gaussian(self.re * c - self.im * d, self.re * d + self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _divide(self.re, self.im, p[0], p[1])

    def __rtruediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _divide(p[0], p[1], self.re, self.im)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** -n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if _parts(other) is not None:
            return False  # other is real, self is not
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Gaussian({format_scalar(self.re)!r}, {format_scalar(self.im)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[mpq, Gaussian]

ZERO = mpq(0)
ONE = mpq(1)
I = Gaussian(0, 1)

_RATIONAL_TYPES = (int, Fraction, type(ZERO))


def _parts(x):
    if isinstance(x, _RATIONAL_TYPES):
        return x, 0
    if isinstance(x, Gaussian):
        return x.re, x.im
    return None


def _divide(a, b, c, d):
    den = c * c + d * d
    if not den:
        raise ZeroDivisionError("division by zero scalar")
    return Gaussian(mpq(a * c + b * d) / den, mpq(b * c - a * d) / den)


def is_scalar(x) -> bool:
    return isinstance(x, (type(ZERO), Gaussian))


def div(a, b):
    """Exact quotient; never produces a float even for two ints."""
    if isinstance(b, Gaussian) or isinstance(a, Gaussian):
        return to_scalar(a) / to_scalar(b)
    if not b:
        raise ZeroDivisionError("division by zero scalar")
    return mpq(a) / mpq(b)


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _parse_rational(text: str):
    m = _RAT_RE.match(text)
    if not m:
        raise InputError(f"bad rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return mpq(num, den)


def to_scalar(x) -> Scalar:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``{"re", "im"}`` dicts."""
    if isinstance(x, bool):
        raise InputError("booleans are not scalars")
    if isinstance(x, type(ZERO)) or isinstance(x, Gaussian):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return _parse_rational(x)
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra:
            raise InputError(f"unexpected scalar keys {sorted(extra)}")
        re_ = to_scalar(x.get("re", 0))
        im_ = to_scalar(x.get("im", 0))
        if isinstance(re_, Gaussian) or isinstance(im_, Gaussian):
            raise InputError("nested complex scalar")
        return Gaussian(re_, im_)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return mpq(int(x.numerator), int(x.denominator))
    raise InputError(f"cannot interpret {x!r} as an exact scalar")


def _fmt_rat(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``p/q`` with the sign on the numerator, ``a+bi`` if complex."""
    if isinstance(x, Gaussian):
        re_, im_ = x.re, x.im
        im_abs = _fmt_rat(abs(im_))
        im_txt = ("" if im_abs == "1" else im_abs) + "i"
        if not re_:
            return ("-" if im_ < 0 else "") + im_txt
        return f"{_fmt_rat(re_)}{'-' if im_ < 0 else '+'}{im_txt}"
    return _fmt_rat(x)


def scalar_to_json(x):
    if isinstance(x, Gaussian):
        return {"re": _fmt_rat(x.re), "im": _fmt_rat(x.im)}
    return _fmt_rat(x)
