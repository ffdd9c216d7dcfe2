"""Dense univariate polynomials and rational functions over Fraction.

Just enough field arithmetic for exact identities of rational functions:
normalization divides out the gcd and makes the denominator monic, so a
vanishing difference reduces to a literally zero numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import Series

__all__ = ["Poly", "RatF"]

ZERO = Fraction(0)
ONE = Fraction(1)


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self):
        return "Poly(" + ", ".join(map(str, self.c)) + ")"

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        return Poly([(self.c[i] if i < len(self.c) else ZERO)
                     + (other.c[i] if i < len(other.c) else ZERO)
                     for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly([])
            out = [ZERO] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if a == 0:
                    continue
                for j, b in enumerate(other.c):
                    if b != 0:
                        out[i + j] += a * b
            return Poly(out)
        return Poly([Fraction(other) * x for x in self.c])

    __rmul__ = __mul__

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [ZERO] * max(len(rem) - len(other.c) + 1, 0)
        d = other.c
        while len(rem) >= len(d) and any(x != 0 for x in rem):
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - len(d)
            factor = rem[-1] / d[-1]
            q[shift] = factor
            for i, b in enumerate(d):
                rem[shift + i] -= factor * b
            rem.pop()
        return Poly(q), Poly(rem)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.c[-1])  # monic

    def deriv(self) -> "Poly":
        return Poly([i * x for i, x in enumerate(self.c)][1:])

    def eval_series(self, s: Series) -> Series:
        """Horner evaluation at a series argument."""
        acc = Series.const(0, s.order + max(0, -min(0, s.valuation)) + 1)
        for coeff in reversed(self.c or [ZERO]):
            acc = acc * s + coeff
        return acc

    def __call__(self, x: Fraction) -> Fraction:
        acc = ZERO
        for coeff in reversed(self.c or [ZERO]):
            acc = acc * x + coeff
        return acc


@dataclass(frozen=True)
class RatF:
    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatF":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return cls(Poly([]), Poly([1]))
        g = num.gcd(den)
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
        lead = den.c[-1]
        return cls(num * (1 / lead), den * (1 / lead))

    @classmethod
    def from_laurent(cls, coeffs: dict[int, Fraction]) -> "RatF":
        """A Laurent polynomial sum c_k t^k as a rational function of t."""
        if not coeffs:
            return cls.zero()
        shift = max(0, -min(coeffs))
        num = [ZERO] * (shift + max(coeffs) + 1)
        for k, v in coeffs.items():
            num[k + shift] += Fraction(v)
        return cls.make(Poly(num), Poly.monomial(shift))

    @classmethod
    def zero(cls) -> "RatF":
        return cls(Poly([]), Poly([1]))

    @classmethod
    def const(cls, v) -> "RatF":
        return cls.make(Poly([v]), Poly([1]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatF") -> "RatF":
        return RatF.make(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    def __neg__(self) -> "RatF":
        return RatF(-self.num, self.den)

    def __sub__(self, other: "RatF") -> "RatF":
        return self + (-other)

    def __mul__(self, other) -> "RatF":
        if isinstance(other, RatF):
            return RatF.make(self.num * other.num, self.den * other.den)
        return RatF.make(self.num * other, self.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatF") -> "RatF":
        return RatF.make(self.num * other.den, self.den * other.num)

    def deriv(self) -> "RatF":
        return RatF.make(self.num.deriv() * self.den - self.num * self.den.deriv(),
                         self.den * self.den)

    def eval_series(self, s: Series) -> Series:
        return self.num.eval_series(s) * self.den.eval_series(s).inverse()

    def __repr__(self):
        return f"RatF({self.num!r} / {self.den!r})"
