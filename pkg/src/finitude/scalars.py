"""Gaussian rationals: exact complex scalars with rational real and imaginary parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "Gaussian"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Gaussian:
    """An element re + im*i of Q(i).

    Instances are immutable and hashable; comparison with ints and Fractions
    works when the imaginary part is zero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; pass Gaussian(re, im)")
        return cls(x, 0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return Gaussian(self.re * o.re)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        d = o.abs_sq()
        if not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return Gaussian(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return Gaussian(1) / self**(-n)
        out = Gaussian(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        """re^2 + im^2, the squared modulus (always rational)."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def real(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    # comparisons ----------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"Gaussian({self.re})"
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # serialization --------------------------------------------------------

    def to_json(self) -> list[int]:
        """[num, den] for real values, [re_num, re_den, im_num, im_den] otherwise."""
        if not self.im:
            return [self.re.numerator, self.re.denominator]
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, data) -> "Gaussian":
        if isinstance(data, (int, str)):
            return cls(data)
        if len(data) == 2:
            return cls(Fraction(data[0], data[1]))
        if len(data) != 4:
            raise ValueError(f"scalar must be [re_num, re_den, im_num, im_den], got {data!r}")
        return cls(Fraction(data[0], data[1]), Fraction(data[2], data[3]))


ZERO = Gaussian(0)
ONE = Gaussian(1)
I = Gaussian(0, 1)


def rational_json(x: Fraction) -> list[int]:
    x = _frac(x)
    return [x.numerator, x.denominator]
