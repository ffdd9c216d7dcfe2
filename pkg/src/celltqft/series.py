"""Truncated Laurent series with exact rational coefficients.

A `Series` stores finitely many known coefficients c_e (e any integer,
bounded below) together with a truncation order: coefficients at exponents
below `order` are complete, everything at or above `order` is unknown (as
opposed to zero).  All arithmetic propagates the truncation order soundly,
and `coeff` refuses to report anything beyond it, so a computed value can
never silently depend on discarded tail terms.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Series", "TruncationError"]

ZERO = Fraction(0)


class TruncationError(ArithmeticError):
    """A coefficient beyond the valid truncation order was requested."""


class Series:
    __slots__ = ("c", "order")

    def __init__(self, coeffs: dict[int, Fraction], order: int):
        self.order = order
        self.c = {e: v for e, v in coeffs.items() if v != 0 and e < order}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls({}, order)

    @classmethod
    def const(cls, value, order: int) -> "Series":
        return cls({0: Fraction(value)}, order)

    @classmethod
    def x(cls, order: int, k: int = 1, coeff=1) -> "Series":
        return cls({k: Fraction(coeff)}, order)

    @classmethod
    def from_pairs(cls, pairs, order: int) -> "Series":
        d: dict[int, Fraction] = {}
        for e, v in pairs:
            d[int(e)] = d.get(int(e), ZERO) + Fraction(v)
        return cls(d, order)

    # -- inspection ---------------------------------------------------------

    @property
    def valuation(self) -> int:
        """Lower bound for the order of vanishing: the least known exponent,
        or the truncation order when no term is known."""
        return min(self.c) if self.c else self.order

    def coeff(self, e: int) -> Fraction:
        if e >= self.order:
            raise TruncationError(
                f"coefficient at z^{e} requested but series only valid below "
                f"z^{self.order}")
        return self.c.get(e, ZERO)

    def residue(self) -> Fraction:
        return self.coeff(-1)

    def items(self):
        return sorted(self.c.items())

    def is_known_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        return (isinstance(other, Series) and self.order == other.order
                and self.c == other.c)

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.c.items()))))

    def __repr__(self):
        terms = " + ".join(f"({v})z^{e}" for e, v in self.items()) or "0"
        return f"<{terms} + O(z^{self.order})>"

    # -- arithmetic -----------------------------------------------------------

    def truncate(self, order: int) -> "Series":
        return Series(self.c, min(self.order, order))

    def __neg__(self) -> "Series":
        return Series({e: -v for e, v in self.c.items()}, self.order)

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other, self.order)
        order = min(self.order, other.order)
        d = dict(self.c)
        for e, v in other.c.items():
            d[e] = d.get(e, ZERO) + v
        return Series(d, order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series)
                       else Series.const(-Fraction(other), self.order))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            f = Fraction(other)
            if f == 0:
                return Series({}, self.order)  # scalar zero: order unchanged
            return Series({e: f * v for e, v in self.c.items()}, self.order)
        order = min(self.order + other.valuation, other.order + self.valuation)
        d: dict[int, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                if e < order:
                    d[e] = d.get(e, ZERO) + v1 * v2
        return Series(d, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def shift(self, k: int) -> "Series":
        """Multiply by z^k."""
        return Series({e + k: v for e, v in self.c.items()}, self.order + k)

    def deriv(self) -> "Series":
        return Series({e - 1: e * v for e, v in self.c.items() if e != 0},
                      self.order - 1)

    def inverse(self) -> "Series":
        if not self.c:
            raise TruncationError("cannot invert a series with no known terms")
        v = min(self.c)
        lead = self.c[v]
        # normalize to 1 + q with q of positive valuation
        norm = {e - v: coeff / lead for e, coeff in self.c.items()}
        nord = self.order - v
        inv = {0: Fraction(1)}
        for m in range(1, nord):
            s = ZERO
            for k, val in norm.items():
                if 0 < k <= m:
                    s += val * inv.get(m - k, ZERO)
            if s:
                inv[m] = -s
        return Series({e - v: val / lead for e, val in inv.items()}, nord - v)

    def pow(self, k: int) -> "Series":
        if k == 0:
            return Series.const(1, self.order - self.valuation + 1)
        base = self if k > 0 else self.inverse()
        k = abs(k)
        acc = None
        while k:
            if k & 1:
                acc = base if acc is None else acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def compose(self, inner: "Series") -> "Series":
        """self(inner); the inner series must have positive valuation."""
        if inner.valuation < 1:
            raise ValueError("composition needs an inner series in O(z)")
        cap = min(self.order * max(inner.valuation, 1), inner.order)
        acc = Series.zero(cap)
        if not self.c:
            return acc
        pows: dict[int, Series] = {}

        def ipow(k: int) -> Series:
            if k not in pows:
                pows[k] = inner.pow(k)
            return pows[k]

        for e, v in self.c.items():
            if e == 0:
                acc = acc + Series.const(v, cap)
            else:
                acc = acc + ipow(e) * v
        return acc.truncate(cap)
