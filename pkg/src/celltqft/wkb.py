"""Order-by-order residual check of the quantum curve for map counting.

The exponential assembly

    Z(x, hbar) = exp( sum_{g,n} hbar^{2g-2+n} F_{g,n}(x,...,x) / n! )

collects the principal diagonal of the generating functions into
log Z = sum_{m >= 0} hbar^{m-1} S_m(x), with S_m the total contribution of
complexity 2g - 2 + n = m - 1.  Applying the operator

    hbar^2 d^2/dx^2 + hbar x d/dx + 1

and dividing by Z gives, order by order in hbar,

    r_k = sum_{a+b=k} S_a' S_b' + S_{k-1}'' + x S_k' + [k = 0],

which must vanish identically; only derivatives of the S_m enter, so the
unstable constants of integration never matter.  Everything is carried out
as exact rational functions of the curve coordinate t (x-derivatives via
dt/dx = -(t^2-1)^2 / 8t).

The two unstable inputs are pinned, not assumed:

* S_0' = -(t+1)/(t-1), the curve branch whose expansion has x^{-1}
  principal part -(1/x) - sum_m C_m x^{-2m-1}; its x^{-2m-1} tail matches
  the derivative of the one-vertex counting series (checked in tests), and
  the extra -1/x is forced by the vanishing of r_0 (the quadratic relation
  S_0'^2 + x S_0' + 1 = 0).
* S_1' = -(t+1)^3 (t-1) / (16 t^2) = (1/2) d/dx log(dz/dx) for the large
  branch z = (t-1)/(t+1); its expansion equals the derivative of half the
  diagonal two-vertex counting series, and r_1 = 0 pins the normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalan import dt_dx, f_polynomial, x_of_t
from .ratfun import Poly, RatF

__all__ = ["s0_prime", "s1_prime", "s_prime_list", "wkb_residual", "WkbOrder"]


def s0_prime() -> RatF:
    return RatF.make(Poly([-1, -1]), Poly([-1, 1]))     # -(t+1)/(t-1)


def s1_prime() -> RatF:
    num = Poly([1, 1]) * Poly([1, 1]) * Poly([1, 1]) * Poly([-1, 1])
    return RatF.make(-1 * num, Poly([0, 0, 16]))        # -(t+1)^3(t-1)/(16 t^2)


def _x_derivative(f: RatF) -> RatF:
    return dt_dx() * f.deriv()


def _diagonal(poly: dict) -> RatF:
    """F(t, t, ..., t) of a symmetric Laurent polynomial given by orbits."""
    from .catalan import expand_orbit_monomials
    diag: dict[int, Fraction] = {}
    for exps, c in expand_orbit_monomials(poly).items():
        k = sum(exps)
        diag[k] = diag.get(k, Fraction(0)) + c
    return RatF.from_laurent(diag)


def s_prime_list(max_m: int, fit_options: dict | None = None) -> list[RatF]:
    """x-derivatives S_m' for m = 0..max_m; m >= 2 pulls in the Laurent
    polynomials of all (g, n) with 2g - 2 + n = m - 1."""
    fit_options = fit_options or {}
    out = [s0_prime(), s1_prime()]
    fact = [1, 1]
    for k in range(2, max_m + 2):
        fact.append(fact[-1] * k)
    for m in range(2, max_m + 1):
        total = RatF.zero()
        complexity = m - 1
        for g in range(0, complexity // 2 + 2):
            n = complexity + 2 - 2 * g
            if n < 1:
                continue
            poly = f_polynomial(g, n, **fit_options)
            total = total + _diagonal(poly) * Fraction(1, fact[n])
        out.append(_x_derivative(total))
    return out[:max_m + 1]


@dataclass(frozen=True)
class WkbOrder:
    order: int
    residual: RatF

    @property
    def vanishes(self) -> bool:
        return self.residual.is_zero()


def wkb_residual(max_order: int, fit_options: dict | None = None) -> list[WkbOrder]:
    """Residual coefficients of hbar^0 .. hbar^{max_order}.

    Order k needs S_0 .. S_k, i.e. generating-function data through
    complexity 2g - 2 + n <= k - 1; every returned order is fully
    determined by that data and must vanish."""
    if max_order < 0:
        raise ValueError("order must be non-negative")
    sp = s_prime_list(max_order, fit_options)
    spp = [_x_derivative(f) for f in sp]
    x = x_of_t()
    out = []
    for k in range(max_order + 1):
        res = RatF.zero()
        for a in range(k + 1):
            res = res + sp[a] * sp[k - a]
        if k >= 1:
            res = res + spp[k - 1]
        res = res + x * sp[k]
        if k == 0:
            res = res + RatF.const(1)
        out.append(WkbOrder(k, res))
    return out
