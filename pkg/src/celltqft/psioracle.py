"""Small-case oracle for psi-class intersection numbers.

Deliberately tiny and independent of every other pipeline in this package:
only the two lowest Virasoro-type constraints are implemented.

* string equation:  <tau_0 tau_{d_1}...tau_{d_n}> = sum_j <... tau_{d_j - 1} ...>
* dilaton equation: <tau_1 tau_{d_1}...tau_{d_n}> = (2g - 2 + n) <tau_{d_1}...>,
  whose constraint carries a constant term that pins the one case the plain
  equation cannot reach: <tau_1>_{1,1} = 1/24.

Together with the base case <tau_0^3>_{0,3} = 1 these determine every
bracket that contains some index 0 or 1; anything else raises OracleScope.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

__all__ = ["psi_intersection", "OracleScope", "genus0_closed_form"]


class OracleScope(ValueError):
    """The bracket is outside what string + dilaton can reach."""


def psi_intersection(g: int, ds) -> Fraction:
    """<tau_{d_1} ... tau_{d_n}>_{g,n}, zero unless sum d_i = 3g - 3 + n."""
    ds = tuple(sorted(int(d) for d in ds))
    if g < 0 or any(d < 0 for d in ds):
        return Fraction(0)
    n = len(ds)
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable case")
    if sum(ds) != 3 * g - 3 + n:
        return Fraction(0)
    return _reduce(g, ds)


@lru_cache(maxsize=None)
def _reduce(g: int, ds: tuple[int, ...]) -> Fraction:
    n = len(ds)
    if (g, ds) == (0, (0, 0, 0)):
        return Fraction(1)
    if (g, ds) == (1, (1,)):
        return Fraction(1, 24)
    if 0 in ds:
        rest = list(ds)
        rest.remove(0)
        total = Fraction(0)
        for j in range(len(rest)):
            lowered = rest[:j] + [rest[j] - 1] + rest[j + 1:]
            if any(d < 0 for d in lowered):
                continue
            if 2 * g - 2 + len(lowered) <= 0:
                continue
            total += _reduce(g, tuple(sorted(lowered)))
        return total
    if 1 in ds:
        rest = list(ds)
        rest.remove(1)
        if 2 * g - 2 + len(rest) <= 0:
            raise OracleScope(f"dilaton cannot reduce (g={g}, ds={ds})")
        return (2 * g - 2 + (n - 1)) * _reduce(g, tuple(sorted(rest)))
    raise OracleScope(
        f"bracket (g={g}, ds={ds}) has no tau_0 or tau_1 slot; "
        "outside the small-case oracle")


def genus0_closed_form(ds) -> Fraction:
    """<tau_{d_1}...tau_{d_n}>_{0,n} = (n-3)! / prod d_i! when sum d = n - 3.

    Used only to cross-examine the oracle itself in tests.
    """
    ds = tuple(int(d) for d in ds)
    n = len(ds)
    if n < 3 or sum(ds) != n - 3:
        return Fraction(0)
    denom = 1
    for d in ds:
        denom *= factorial(d)
    return Fraction(factorial(n - 3), denom)
