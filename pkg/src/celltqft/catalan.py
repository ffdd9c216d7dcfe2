"""Generating functions of arrowed-graph counts and their Laurent form.

The degree-profile counts assemble into series

    F_{g,n}(x_1,...,x_n) = sum_mu  count(g,n,mu) / (mu_1...mu_n) *
                           x_1^{-mu_1} ... x_n^{-mu_n}.

After the change of variable

    x = (t+1)/(t-1) + (t-1)/(t+1) = 2 (t^2 + 1)/(t^2 - 1),

with the branch fixed so that t -> 1+ as x -> +infinity along the counting
series, every stable F_{g,n} becomes a Laurent polynomial in the t_i.  The
polynomial is recovered here by an exact linear fit against the x-expansion
and verified on surplus coefficients, never assumed.

Its top-degree part (total degree 6g - 6 + 3n, odd exponents 2d_i + 1) is a
generating polynomial of the psi-class intersection numbers
<tau_{d_1}...tau_{d_n}>; `intersection_numbers` inverts that normalization.

Independently, the same numbers sit in the leading poles of the correlators
of the local spectral curve at the branch points of x = z + 1/z: in the
chart s = z - 1 the curve data is x = s^2/(1+s), y = s/(1+s) (the second
branch point carries the same normalized germ via the exact (x, y) ->
(-x, -y) symmetry), t = -1 - 2/s, and the correlator coefficient of
prod s_i^{-(2 d_i + 2)} equals

    (-1)^n / 2^{2g-2+n} * <tau_{d_1}...tau_{d_n}> * prod (2 d_i + 1)!!.

`intersection_from_toprec` reads the numbers off that way, giving a second,
independent pipeline for the same quantities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

from .eco import count
from .ratfun import Poly, RatF
from .series import Series
from .spectral import CorrelatorTable, Disc, LocalSpectralCurve, toprec_run

__all__ = [
    "catalan_number", "f_series", "xt_substitution", "f_polynomial",
    "top_degree_part", "intersection_numbers", "catalan_local_curve",
    "intersection_from_toprec", "transported_negative_part",
    "PolynomialityError",
]

ZERO = Fraction(0)


class PolynomialityError(ArithmeticError):
    """The Laurent-polynomial fit is inconsistent with the counting series."""


def catalan_number(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


# ---------------------------------------------------------------------------
# series data
# ---------------------------------------------------------------------------

def f_series(g: int, n: int, max_degree_sum: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of prod x_i^{-mu_i} for all profiles with sum mu bounded."""
    out: dict[tuple[int, ...], Fraction] = {}
    for mu in _profiles(n, max_degree_sum):
        c = count(g, n, mu)
        if c:
            denom = 1
            for m in mu:
                denom *= m
            out[mu] = Fraction(c, denom)
    return out


def _profiles(n, max_sum):
    def rec(prefix, remaining, slots):
        if slots == 0:
            if len(prefix) == n:
                yield tuple(prefix)
            return
        for m in range(1, remaining - (slots - 1) + 1):
            yield from rec(prefix + [m], remaining - m, slots - 1)

    for total in range(n, max_sum + 1):
        yield from rec([], total, n)


class XTSubstitution:
    """The coordinate change and its series data.

    x_of_t is the rational form of x(t); t_of_x expands t on the counting
    branch (t -> -1) as a series in u = 1/x.  Powers are cached.
    """

    def __init__(self, order: int, x_of_t_: RatF, t_of_x: Series):
        self.order = order
        self.x_of_t = x_of_t_
        self.t_of_x = t_of_x
        self._pows: dict[int, Series] = {0: Series.const(1, order)}

    def t_power(self, e: int) -> Series:
        if e not in self._pows:
            self._pows[e] = self.t_of_x.pow(e)
        return self._pows[e]


def x_of_t() -> RatF:
    return RatF.make(Poly([2, 0, 2]), Poly([-1, 0, 1]))   # 2(t^2+1)/(t^2-1)


def dt_dx() -> RatF:
    # inverse of dx/dt = -8t/(t^2-1)^2
    return RatF.make(Poly([1, 0, -2, 0, 1]), Poly([0, -8]))


def xt_substitution(order: int) -> XTSubstitution:
    """Series of the counting branch: w(u) = sum C_m u^{2m+1} solves
    w + 1/w = 1/u, and t = (w + 1)/(w - 1) -> -1 as x -> +infinity.

    Of the two branches t -> +-1 over large x, this is the one on which the
    top-degree normalization returns the intersection numbers themselves
    (the opposite branch flips every odd monomial and so their signs); it
    also matches the branch-point chart t = -1 - 2/s used for the spectral
    side.
    """
    w = Series({2 * m + 1: Fraction(catalan_number(m))
                for m in range(order // 2 + 1)}, order)
    one = Series.const(1, order)
    t = (w + one) * (w - one).inverse()
    return XTSubstitution(order, x_of_t(), t.truncate(order))


# ---------------------------------------------------------------------------
# Laurent-polynomial fit
# ---------------------------------------------------------------------------

def _orbits(n: int, exponents, flip: bool):
    """Symmetric-monomial orbits: multisets of exponents, optionally glued
    with their sign-flipped mirror (F is invariant under all t_i -> 1/t_i)."""
    seen = set()
    orbits = []
    for combo in combinations_with_replacement(sorted(exponents), n):
        if combo in seen:
            continue
        mirror = tuple(sorted(-e for e in combo))
        group = (combo,) if (not flip or mirror == combo) else (combo, mirror)
        for c in group:
            seen.add(c)
        orbits.append(group)
    return orbits


def _orbit_coefficient(sub: XTSubstitution, orbit, mu) -> Fraction:
    """Coefficient of prod x_i^{-mu_i} in the symmetrized basis element."""
    total = ZERO
    for combo in orbit:
        for perm in set(permutations(combo)):
            prod = Fraction(1)
            for e, m in zip(perm, mu):
                prod *= sub.t_power(e).coeff(m)
                if prod == 0:
                    break
            total += prod
    return total


@lru_cache(maxsize=None)
def f_polynomial(g: int, n: int, degree_bound: int | None = None,
                 surplus: int | None = None) -> dict[tuple[int, ...], Fraction]:
    """F_{g,n} as a Laurent polynomial: map from exponent tuples (sorted
    descending) to coefficients, one entry per monomial.

    The fit matches the polynomial's expansion against the counting series
    on every profile coefficient, including profiles where some mu_i = 0
    (there the series has coefficient zero, since each F vanishes as any
    x_i goes to infinity); this pins cross terms and the constant, so the
    result reproduces the series identically, not just on positive
    profiles.  The ansatz is inversion-symmetric (t_i -> 1/t_i, which is
    the x_i -> -x_i parity of the counts) with per-variable degree at most
    `degree_bound` (default 6g - 6 + 3n), first with odd exponents and
    zero, then with all exponents; at least `surplus` extra matched
    coefficients per variable (default 5) are verified.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError("Laurent polynomiality holds for 2g - 2 + n > 0")
    d_max = 6 * g - 6 + 3 * n if degree_bound is None else degree_bound
    surplus = 5 if surplus is None else surplus
    odd0 = [e for e in range(-d_max, d_max + 1) if e % 2 or e == 0]
    full = list(range(-d_max, d_max + 1))
    last_error = None
    for exponents, flip in ((odd0, True), (full, True), (full, False)):
        try:
            return _fit(g, n, exponents, flip, surplus)
        except PolynomialityError as exc:
            last_error = exc
    raise PolynomialityError(
        f"no Laurent polynomial of degree <= {d_max} matches F_{{{g},{n}}}: "
        f"{last_error}")


def _solve_rank(rows, rhs):
    """Gauss-Jordan returning (solution or None, rank, consistent)."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    nrows, ncols = len(m), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    consistent = all(m[i][ncols] == 0 for i in range(r, nrows))
    if not consistent or r < ncols:
        return None, r, consistent
    sol = [ZERO] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol, r, True


def _series_rhs(g, n, mu) -> Fraction:
    """Expansion coefficient of the counting series at the given profile:
    count/prod(mu) on positive profiles, zero whenever some mu_i = 0."""
    if any(m == 0 for m in mu):
        return ZERO
    c = count(g, n, mu)
    denom = 1
    for m in mu:
        denom *= m
    return Fraction(c, denom)


def _fit(g, n, exponents, flip, surplus):
    orbits = _orbits(n, exponents, flip)
    unknowns = len(orbits)
    cap = n
    rows, rhs, mus_done = [], [], set()
    cap_limit = 8 * (max(abs(e) for e in exponents) + n) + 24
    while True:
        cap += 2
        if cap > cap_limit:
            raise PolynomialityError(
                f"rank plateaued below {unknowns} within degree sum {cap_limit}")
        sub = xt_substitution(cap + 2)
        fresh = sorted(
            (mu for mu in combinations_with_replacement(range(0, cap + 1), n)
             if sum(mu) <= cap and sum(mu) % 2 == 0 and mu not in mus_done),
            key=sum)
        for mu in fresh:
            mus_done.add(mu)
            rows.append([_orbit_coefficient(sub, orbit, mu) for orbit in orbits])
            rhs.append(_series_rhs(g, n, mu))
        if len(rows) < unknowns + surplus * n:
            continue
        sol, rank, consistent = _solve_rank(rows, rhs)
        if not consistent:
            raise PolynomialityError("linear fit is inconsistent")
        if sol is None:
            continue  # rank-deficient so far; add more expansion orders
        if len(rows) < rank + surplus * n:
            continue
        for row, b in zip(rows, rhs):
            if sum((c * s for c, s in zip(row, sol)), ZERO) != b:
                raise PolynomialityError("surplus coefficient mismatch")
        poly: dict[tuple[int, ...], Fraction] = {}
        for orbit, coeff in zip(orbits, sol):
            if coeff == 0:
                continue
            for combo in orbit:
                poly[tuple(sorted(combo, reverse=True))] = coeff
        return poly


def expand_orbit_monomials(poly: dict) -> dict[tuple[int, ...], Fraction]:
    """Full (non-orbit) monomial dict of a symmetric Laurent polynomial."""
    out: dict[tuple[int, ...], Fraction] = {}
    for combo, coeff in poly.items():
        for perm in set(permutations(combo)):
            out[perm] = coeff
    return out


def top_degree_part(poly: dict) -> tuple[int, dict]:
    """(total degree, monomials) of the highest-total-degree stratum."""
    if not poly:
        raise ValueError("empty polynomial")
    top = max(sum(e) for e in poly)
    return top, {e: c for e, c in poly.items() if sum(e) == top}


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def intersection_numbers(g: int, n: int, poly: dict | None = None,
                         **fit_options) -> dict[tuple[int, ...], Fraction]:
    """<tau_{d_1}...tau_{d_n}> for sum d = 3g - 3 + n, from the top-degree
    stratum of the Laurent polynomial.

    Inverts   c(2d_1+1, ..., 2d_n+1) = (-1)^n / 2^{2g-2+n} *
              <tau_d> prod |2d_i - 1|!! / 2^{2d_i+1}.
    """
    if poly is None:
        poly = f_polynomial(g, n, **fit_options)
    degree, top = top_degree_part(poly)
    expected = 6 * g - 6 + 3 * n
    if degree != expected:
        raise PolynomialityError(
            f"top degree {degree} != 6g-6+3n = {expected}")
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, c in top.items():
        if any(e <= 0 or e % 2 == 0 for e in exps):
            raise PolynomialityError(
                f"top-degree monomial {exps} is not of shape (2d+1 > 0)")
        ds = tuple((e - 1) // 2 for e in exps)
        val = c * (-1) ** n * Fraction(2) ** (2 * g - 2 + n)
        for d in ds:
            val *= Fraction(2 ** (2 * d + 1), _double_factorial(2 * d - 1))
        out[ds] = val
    return out


# ---------------------------------------------------------------------------
# the local spectral curve at the branch points of x = z + 1/z
# ---------------------------------------------------------------------------

def catalan_local_curve(truncation: int = 30) -> LocalSpectralCurve:
    """Two discs, one per branch point z = +1, -1 of x = z + 1/z.

    Chart at z = 1: s = z - 1 gives x - 2 = s^2/(1+s) and, with y the
    derivative d/dx of the disc generating function (y = -1/z globally),
    y + 1 = s/(1+s).  The z = -1 germ equals the same pair after the exact
    kernel symmetry (x, y) -> (-x, -y), so both discs carry identical data.
    """
    n = truncation
    x = Series({k: Fraction((-1) ** k) for k in range(2, n)}, n)
    y = Series({k: Fraction((-1) ** (k + 1)) for k in range(1, n)}, n)
    disc = Disc(x, y)
    return LocalSpectralCurve((disc, disc), n)


def intersection_from_toprec(g: int, n: int,
                             table: CorrelatorTable | None = None,
                             truncation: int = 30) -> dict[tuple[int, ...], Fraction]:
    """Read <tau_d> off the leading poles of the Catalan-curve correlators."""
    if table is None:
        table = toprec_run(catalan_local_curve(truncation),
                           max_complexity=2 * g - 2 + n)
    coeffs = table.entry(g, n, (0,) * n)
    out: dict[tuple[int, ...], Fraction] = {}
    scale = Fraction((-1) ** n) * Fraction(2) ** (2 * g - 2 + n)
    for ds in combinations_with_replacement(range(3 * g - 2 + n), n):
        if sum(ds) != 3 * g - 3 + n:
            continue
        key = tuple(-(2 * d + 2) for d in sorted(ds, reverse=True))
        c = coeffs.get(key, ZERO)
        val = c * scale
        for d in ds:
            val /= _double_factorial(2 * d + 1)
        out[tuple(sorted(ds, reverse=True))] = val
    return out


def transported_negative_part(poly: dict) -> dict[tuple[int, ...], Fraction]:
    """All-variables-negative part of d_1...d_n F in the branch chart.

    Substituting t = -1 - 2/s turns a positive power t^e into a Laurent
    polynomial in 1/s, and d/ds of it carries only exponents in
    [-e-1, -2]; non-positive powers of t only produce exponents >= 0.  The
    local-curve correlators live entirely in the all-negative sector, which
    this transport computes exactly (monomial by monomial).
    """
    out: dict[tuple[int, ...], Fraction] = {}
    cache: dict[int, dict[int, Fraction]] = {}

    def dts_pow(e: int) -> dict[int, Fraction]:
        # d/ds of t(s)^e for e > 0, with t = -1 - 2/s = -(1 + 2/s)
        if e not in cache:
            sign = (-1) ** e
            cache[e] = {-j - 1: sign * Fraction(comb(e, j) * 2 ** j * (-j))
                        for j in range(1, e + 1)}
        return cache[e]

    for exps, coeff in expand_orbit_monomials(poly).items():
        if any(e <= 0 for e in exps):
            continue
        acc = {(): coeff}
        for f in (dts_pow(e) for e in exps):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for k, v in acc.items():
                for e, w in f.items():
                    nxt[k + (e,)] = v * w
            acc = nxt
        for k, v in acc.items():
            out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v != 0}
