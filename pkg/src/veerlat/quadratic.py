"""Exact arithmetic in Q(sqrt(d)) for eigen-slopes of integer 2x2 matrices.

Only what slope comparison needs: ring operations, division, sign and floor.
Every decision is made with integers; nothing here touches floats except
``__float__``, which is for display.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt


def _is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _sign_of(x, y, d):
    """Sign of x + y*sqrt(d) for rationals x, y."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if (x > 0) == (y > 0):
        return 1 if x > 0 else -1
    # opposite signs: compare squares
    diff = x * x - y * y * d
    if diff == 0:
        return 0
    if x > 0:
        return 1 if diff > 0 else -1
    return -1 if diff > 0 else 1


@total_ordering
class QuadraticIrrational:
    """The number a + b*sqrt(d) with rational a, b and an integer d > 1.

    d must not be a perfect square; it is not reduced further.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        if d <= 1 or _is_square(d):
            raise ValueError(f"radicand {d} must be a positive non-square")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticIrrational(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticIrrational(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticIrrational(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticIrrational(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        num = self * o.conjugate()
        return QuadraticIrrational(num.a / n, num.b / n, self.d)

    def __rtruediv__(self, other):
        return QuadraticIrrational(other, 0, self.d) / self

    def sign(self):
        return _sign_of(self.a, self.b, self.d)

    def is_rational(self):
        return self.b == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __floor__(self):
        # estimate with an integer square root, then correct by exact sign tests
        den = self.a.denominator * self.b.denominator
        big_a = self.a * den
        big_b = self.b * den
        root = isqrt(int(big_b * big_b) * self.d)
        est = (int(big_a) + (root if big_b >= 0 else -root)) // den
        while (self - est).sign() < 0:
            est -= 1
        while (self - (est + 1)).sign() >= 0:
            est += 1
        return est

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticIrrational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"
