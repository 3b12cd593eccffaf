"""Exact scalars: Gaussian rationals and their dual-number (jet) extension.

All arithmetic in the library happens over Q(i), represented by a pair of
``fractions.Fraction`` values, so every identity is decidable by ``==``.
Jets carry an infinitesimal tangent component (epsilon^2 = 0) and are used to
push tangent vectors through the nonlinear constructions exactly.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


class GaussianRational:
    """Element re + im*i of Q(i); components stay in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # -- coercion -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(other)
        return None

    # -- ring/field operations ------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates -----------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IUNIT = GaussianRational(0, 1)


class Jet:
    """Dual number val + epsilon*tan over Q(i), epsilon^2 = 0."""

    __slots__ = ("val", "tan")

    def __init__(self, val, tan=0):
        self.val = as_exact(val)
        self.tan = as_exact(tan)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Jet):
            return other
        g = GaussianRational._coerce(other)
        if g is None:
            return None
        return Jet(g)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val + o.val, self.tan + o.tan)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val - o.val, self.tan - o.tan)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val * o.val, self.val * o.tan + self.tan * o.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        v = self.val / o.val
        return Jet(v, (self.tan - v * o.tan) / o.val)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Jet(-self.val, -self.tan)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.val == o.val and self.tan == o.tan

    def __hash__(self):
        return hash((self.val, self.tan))

    def __bool__(self):
        return bool(self.val) or bool(self.tan)

    def __repr__(self):
        return f"({self.val!r} + e*{self.tan!r})"


def as_exact(x) -> GaussianRational:
    """Coerce an int/Fraction/GaussianRational to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def as_scalar(x):
    """Coerce to a library scalar, letting jets pass through unchanged."""
    if isinstance(x, Jet):
        return x
    return as_exact(x)


def val_of(x) -> GaussianRational:
    """Value part: the identity on exact scalars, .val on jets."""
    return x.val if isinstance(x, Jet) else as_exact(x)


def tan_of(x) -> GaussianRational:
    """Tangent part: zero on exact scalars, .tan on jets."""
    return x.tan if isinstance(x, Jet) else ZERO


def is_invertible(x) -> bool:
    """Usable as an elimination pivot: nonzero value part."""
    return bool(val_of(x))
