"""Hyper-dual numbers for exact first and second derivatives.

A hyper-dual number ``a + b e1 + c e2 + d e1 e2`` with ``e1**2 = e2**2 = 0``
carries a value, two directional first derivatives and the mixed second
derivative. Seeding ``x_i + e1`` and ``x_j + e2`` and evaluating a function
built from the operations below yields ``f``, ``df/dx_i``, ``df/dx_j`` and
``d2f/dx_i dx_j`` with no truncation error.

The elementary functions (:func:`sin`, :func:`cos`, ...) accept plain floats
as well, so metric evaluators can be written once and used for both float
and derivative evaluation.
"""
from __future__ import annotations

import math
from numbers import Real

__all__ = [
    "HyperDual",
    "seed",
    "value",
    "sin",
    "cos",
    "tan",
    "sqrt",
    "exp",
    "log",
]


class HyperDual:
    __slots__ = ("re", "e1", "e2", "e12")

    def __init__(self, re: float, e1: float = 0.0, e2: float = 0.0, e12: float = 0.0):
        self.re = float(re)
        self.e1 = float(e1)
        self.e2 = float(e2)
        self.e12 = float(e12)

    def __repr__(self) -> str:
        return f"HyperDual({self.re!r}, {self.e1!r}, {self.e2!r}, {self.e12!r})"

    # f(x) for a scalar function with derivatives f0, f1, f2 at x.re
    def _chain(self, f0: float, f1: float, f2: float) -> HyperDual:
        return HyperDual(
            f0,
            f1 * self.e1,
            f1 * self.e2,
            f1 * self.e12 + f2 * self.e1 * self.e2,
        )

    def __neg__(self) -> HyperDual:
        return HyperDual(-self.re, -self.e1, -self.e2, -self.e12)

    def __pos__(self) -> HyperDual:
        return self

    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.re + other.re, self.e1 + other.e1,
                             self.e2 + other.e2, self.e12 + other.e12)
        if isinstance(other, Real):
            return HyperDual(self.re + other, self.e1, self.e2, self.e12)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.re - other.re, self.e1 - other.e1,
                             self.e2 - other.e2, self.e12 - other.e12)
        if isinstance(other, Real):
            return HyperDual(self.re - other, self.e1, self.e2, self.e12)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return HyperDual(other - self.re, -self.e1, -self.e2, -self.e12)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.re * other.re,
                self.re * other.e1 + self.e1 * other.re,
                self.re * other.e2 + self.e2 * other.re,
                self.re * other.e12 + self.e1 * other.e2
                + self.e2 * other.e1 + self.e12 * other.re,
            )
        if isinstance(other, Real):
            return HyperDual(self.re * other, self.e1 * other,
                             self.e2 * other, self.e12 * other)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> HyperDual:
        if self.re == 0.0:
            raise ZeroDivisionError("hyper-dual division by zero")
        inv = 1.0 / self.re
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other.reciprocal()
        if isinstance(other, Real):
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Real):
            return other * self.reciprocal()
        return NotImplemented

    def __pow__(self, exponent):
        if isinstance(exponent, HyperDual):
            return exp(exponent * log(self))
        if isinstance(exponent, int) and exponent >= 0:
            result = HyperDual(1.0)
            base = self
            n = exponent
            while n:
                if n & 1:
                    result = result * base
                base = base * base
                n >>= 1
            return result
        x = self.re
        r = float(exponent)
        return self._chain(x ** r, r * x ** (r - 1.0), r * (r - 1.0) * x ** (r - 2.0))

    # comparisons look at the real part only, enough for branch choices
    def __lt__(self, other):
        return self.re < value(other)

    def __le__(self, other):
        return self.re <= value(other)

    def __gt__(self, other):
        return self.re > value(other)

    def __ge__(self, other):
        return self.re >= value(other)

    def __float__(self) -> float:
        return self.re


def seed(x: float, d1: bool = False, d2: bool = False) -> HyperDual:
    """Lift ``x`` to a hyper-dual number perturbed along e1 and/or e2."""
    return HyperDual(x, 1.0 if d1 else 0.0, 1.0 if d2 else 0.0, 0.0)


def value(x) -> float:
    return x.re if isinstance(x, HyperDual) else float(x)


def sin(x):
    if isinstance(x, HyperDual):
        s, c = math.sin(x.re), math.cos(x.re)
        return x._chain(s, c, -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, HyperDual):
        s, c = math.sin(x.re), math.cos(x.re)
        return x._chain(c, -s, -c)
    return math.cos(x)


def tan(x):
    if isinstance(x, HyperDual):
        t = math.tan(x.re)
        sec2 = 1.0 + t * t
        return x._chain(t, sec2, 2.0 * t * sec2)
    return math.tan(x)


def sqrt(x):
    if isinstance(x, HyperDual):
        r = math.sqrt(x.re)
        return x._chain(r, 0.5 / r, -0.25 / (r * x.re))
    return math.sqrt(x)


def exp(x):
    if isinstance(x, HyperDual):
        e = math.exp(x.re)
        return x._chain(e, e, e)
    return math.exp(x)


def log(x):
    if isinstance(x, HyperDual):
        return x._chain(math.log(x.re), 1.0 / x.re, -1.0 / (x.re * x.re))
    return math.log(x)
