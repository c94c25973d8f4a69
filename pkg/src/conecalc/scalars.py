"""Exact scalars beyond Q: Gaussian rationals and sums of square roots.

Laplace transforms over lower-dimensional cones pick up factors like
sqrt(2) from the induced Lebesgue measure, and the spectral parameter is
complex, so coefficients live in Q(i)[sqrt(2), sqrt(3), ...].
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from sympy import factorint

from .linalg import as_fraction


class Gaussian:
    """a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not accepted")
        return cls(x, 0)

    def __add__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        o = Gaussian.coerce(other)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        o = Gaussian.coerce(other)
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Gaussian.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        o = Gaussian.coerce(other)
        return Gaussian(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def inverse(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re / other, self.im / other)
        return self * Gaussian.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Gaussian(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Surd):
            return other == self
        try:
            o = Gaussian.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"Gaussian({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*I"


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * r with r squarefree; returns (s, r)."""
    s, r = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


class Surd:
    """Finite sum of Gaussian multiples of square roots of squarefree integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        clean = {}
        for r, c in (parts or {}).items():
            c = Gaussian.coerce(c)
            if c:
                clean[r] = clean.get(r, Gaussian(0)) + c
        self.parts = {r: c for r, c in sorted(clean.items()) if c}

    @classmethod
    def coerce(cls, x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return cls({1: Gaussian.coerce(x)})

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """Exact square root of a nonnegative rational."""
        q = as_fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        if q == 0:
            return cls()
        # sqrt(a/b) = sqrt(a*b)/b
        s, r = _squarefree_split(q.numerator * q.denominator)
        return cls({r: Gaussian(Fraction(s, q.denominator))})

    def __add__(self, other):
        o = Surd.coerce(other)
        merged = dict(self.parts)
        for r, c in o.parts.items():
            merged[r] = merged.get(r, Gaussian(0)) + c
        return Surd(merged)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: -c for r, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Surd):
            c = Gaussian.coerce(other)
            return Surd({r: v * c for r, v in self.parts.items()})
        out = {}
        for r1, c1 in self.parts.items():
            for r2, c2 in other.parts.items():
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                out[r] = out.get(r, Gaussian(0)) + c1 * c2 * g
        return Surd(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if len(other.parts) != 1:
                raise ZeroDivisionError("division by a multi-term surd")
            (r, c), = other.parts.items()
            # 1/(c sqrt r) = sqrt r / (c r)
            return self * Surd({r: (c * r).inverse()})
        c = Gaussian.coerce(other).inverse()
        return self * c

    def __eq__(self, other):
        try:
            o = Surd.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.parts == o.parts

    def __hash__(self):
        if not self.parts:
            return hash(0)
        if list(self.parts) == [1]:
            return hash(self.parts[1])
        return hash(tuple(self.parts.items()))

    def __bool__(self):
        return bool(self.parts)

    def __complex__(self):
        return sum((complex(c) * math.sqrt(r) for r, c in self.parts.items()), 0j)

    def rational_part(self):
        """Value as a Gaussian when no irrational root is present."""
        if set(self.parts) <= {1}:
            return self.parts.get(1, Gaussian(0))
        return None

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for r, c in self.parts.items():
            cs = str(c)
            if r == 1:
                chunks.append(cs)
            else:
                chunks.append(f"({cs})*sqrt({r})")
        return " + ".join(chunks)


def simplify(x):
    """Collapse a Surd with only a rational root to Gaussian, and a real
    Gaussian to Fraction."""
    if isinstance(x, Surd):
        g = x.rational_part()
        if g is None:
            return x
        x = g
    if isinstance(x, Gaussian) and x.im == 0:
        return x.re
    return x


def to_complex(x) -> complex:
    if isinstance(x, (Gaussian, Surd)):
        return complex(x)
    return complex(float(x))


def exp_complex(z) -> complex:
    return cmath.exp(to_complex(z))
