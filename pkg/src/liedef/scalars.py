"""Exact scalars: rationals and Gaussian rationals.

Rationals are `fractions.Fraction` (already normalized, positive denominator).
Gaussian rationals a + b*i get a small immutable class that interoperates with
Fraction and int in mixed arithmetic, so matrices and polynomials can be
written once and instantiated over either field.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Parse a rational from int, Fraction, or a "p/q" / "p" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" when the denominator is 1)."""
    x = Fraction(x)
    return str(x)


def is_rational_square(x: Fraction):
    """Return sqrt(x) as a Fraction if x is a perfect rational square, else None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class GaussRat:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # -- structure ---------------------------------------------------------

    def is_real(self) -> bool:
        return self.im == 0

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2 = o.norm2()
        if n2 == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        c = o.conj()
        num = self * c
        return GaussRat(num.re / n2, num.im / n2)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # real values must hash like the Fraction they equal
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


GI_ZERO = GaussRat(0)
GI_ONE = GaussRat(1)
GI_I = GaussRat(0, 1)


def gauss(x) -> GaussRat:
    """Coerce int / Fraction / GaussRat to GaussRat."""
    if isinstance(x, GaussRat):
        return x
    return GaussRat(Fraction(x))


def gauss_str(x: GaussRat) -> dict:
    """Serialize a Gaussian rational as {"re": "p/q", "im": "p/q"}."""
    x = gauss(x)
    return {"re": rat_str(x.re), "im": rat_str(x.im)}


def gauss_parse(d) -> GaussRat:
    if isinstance(d, dict):
        return GaussRat(rat(d.get("re", 0)), rat(d.get("im", 0)))
    return gauss(rat(d))
