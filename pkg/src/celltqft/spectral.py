"""Topological recursion on local spectral curves, plain and algebra-twisted.

A local spectral curve is a disjoint union of discs, each carrying series
data x(z) = z^2 + a_3 z^3 + ... and y(z) = z + b_2 z^2 + ... (an optional
holomorphic addition to the Cauchy kernel is supported and defaults to
zero).  The deck involution sigma solves x(sigma(z)) = x(z) with
sigma(z) = -z + O(z^2).

Correlators W_{g,n} for 2g - 2 + n > 0 are computed from

    W_{g,n}(z_1,...) = sum_discs Res_{z->0} K(z, z_1) [
        W_{g-1,n+1}(z, sigma(z), z_2,...)
        + sum'  W_{g1,|I|+1}(z, z_I) W_{g2,|J|+1}(sigma(z), z_J) ],

    K(z, z_1) = (1/(z_1 - sigma(z)) - 1/(z_1 + ...)) omitting differentials
              = omega^{sigma(z)-z}(z_1) / (2 (y(sigma(z)) - y(z)) dx(z)),

with W_{0,2} the Cauchy kernel dz_1 dz_2/(z_1 - z_2)^2 on each disc and
zero across discs, and the primed sum excluding (0, emptyset) parts.  The
residue is the z^{-1} coefficient with everything expanded for |z| < |z_i|.
The factor 2 and the orientation are fixed so that the Airy-curve values
W_{0,3} = -(1/2) prod dz_i/z_i^2 and W_{1,1} = -(1/16) dz/z^4 hold; these
are pinned by hand-computed tests.

With zero cross-disc W_{0,2} all mixed-disc correlators vanish, so the
table stores one coefficient dict per disc; entries are coefficients of
prod z_i^{e_i} dz_i and carry only negative exponents.

The twisted variant couples a commutative Frobenius algebra: the kernel
contracts the first input color through the coproduct, the initial data is
W_{0,2} * eta, and the output factorizes as W_{g,n} times the closed TQFT
correlator (checked coefficientwise in the tests).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .frobenius import FrobeniusAlgebra, comultiply_terms
from .series import Series, TruncationError

__all__ = [
    "Disc", "LocalSpectralCurve", "airy_curve", "involution",
    "w02_entry", "DiscContext", "toprec_run", "twisted_toprec_run",
    "CorrelatorTable", "TwistedCorrelatorTable",
]

ZERO = Fraction(0)


@dataclass(frozen=True)
class Disc:
    x: Series
    y: Series
    kernel_extra: Series | None = None   # holomorphic 1-form added to the kernel


@dataclass(frozen=True)
class LocalSpectralCurve:
    discs: tuple[Disc, ...]
    truncation: int

    def __post_init__(self):
        if not self.discs:
            raise ValueError("curve needs at least one disc")
        if self.truncation < 6:
            raise ValueError("truncation too small to be useful")
        for d in self.discs:
            if d.x.coeff(0) != 0 or d.x.coeff(1) != 0 or d.x.coeff(2) != 1:
                raise ValueError("x must be z^2 + O(z^3)")
            if d.y.coeff(0) != 0 or d.y.coeff(1) != 1:
                raise ValueError("y must be z + O(z^2)")

    @property
    def r(self) -> int:
        return len(self.discs)


def airy_curve(truncation: int = 24) -> LocalSpectralCurve:
    n = truncation
    return LocalSpectralCurve((Disc(Series.x(n, 2), Series.x(n, 1)),), n)


def involution(curve: LocalSpectralCurve, alpha: int) -> Series:
    """The deck transformation: sigma(z) = -z + O(z^2) with x(sigma) = x."""
    x = curve.discs[alpha].x
    n = curve.truncation
    sigma = Series.x(n, 1, -1)
    xp = x.deriv()
    for _ in range(n):        # Newton; the valuation of the defect doubles
        defect = x.compose(sigma) - x
        if defect.is_known_zero():
            break
        sigma = sigma - defect / xp.compose(sigma)
    defect = x.compose(sigma) - x
    if not defect.is_known_zero():
        raise ArithmeticError("involution iteration did not converge; "
                              "malformed x series")
    return sigma.truncate(n)


def w02_entry(curve: LocalSpectralCurve, alpha: int, beta: int,
              terms: int | None = None) -> dict[tuple[int, int], Fraction]:
    """Coefficients of W_{0,2}(z_1, z_2)/(dz_1 dz_2) on discs (alpha, beta),
    expanded in the region |z_2| < |z_1|:
    1/(z_1 - z_2)^2 = sum_k (k+1) z_2^k z_1^{-k-2}; zero across discs."""
    if alpha != beta:
        return {}
    k_max = curve.truncation if terms is None else terms
    return {(-k - 2, k): Fraction(k + 1) for k in range(k_max)}


# ---------------------------------------------------------------------------
# per-disc recursion context
# ---------------------------------------------------------------------------

class DiscContext:
    """Cached series data one disc needs to run the recursion."""

    def __init__(self, curve: LocalSpectralCurve, alpha: int):
        disc = curve.discs[alpha]
        n = curve.truncation
        self.N = n
        self.z = Series.x(n, 1)
        self.sigma = involution(curve, alpha)
        self.sigma_p = self.sigma.deriv()
        y_sig = disc.y.compose(self.sigma)
        dy = y_sig - disc.y
        if dy.valuation != 1 or dy.coeff(1) != -2:
            raise ArithmeticError("y(sigma(z)) - y(z) must start at -2z")
        self.denom = (dy * disc.x.deriv()) * 2       # 2 (y(sigma) - y) x'
        self.denom_inv = self.denom.inverse()        # valuation -2
        self.kernel_extra = disc.kernel_extra
        self._zpow: dict[int, Series] = {}
        self._spow: dict[int, Series] = {}
        self._sub: dict[int, Series] = {}

    def zpow(self, k: int) -> Series:
        if k not in self._zpow:
            self._zpow[k] = self.z.pow(k)
        return self._zpow[k]

    def spow(self, k: int) -> Series:
        if k not in self._spow:
            self._spow[k] = self.sigma.pow(k)
        return self._spow[k]

    def w02_self(self) -> Series:
        """W_{0,2}(z, sigma(z)) divided by dz^2: sigma'/(z - sigma)^2."""
        diff = self.z - self.sigma
        return self.sigma_p * (diff * diff).inverse()

    def substitute(self, k: int, use_sigma: bool) -> Series:
        """z^k, or sigma(z)^k sigma'(z) for the slot carrying sigma."""
        if not use_sigma:
            return self.zpow(k)
        if k not in self._sub:
            self._sub[k] = self.spow(k) * self.sigma_p
        return self._sub[k]

    def extract(self, bracket: Series) -> dict[int, Fraction]:
        """Residues against the kernel: for each k >= 1 the coefficient of
        z_1^{-k-1} is Res_z (sigma^k - z^k) * bracket / denom."""
        p = bracket * self.denom_inv
        out: dict[int, Fraction] = {}
        if not p.c:
            return out
        for k in range(1, -p.valuation):
            r = ((self.spow(k) - self.zpow(k)) * p).residue()
            if r:
                out[-k - 1] = r
        if self.kernel_extra is not None and not self.kernel_extra.is_known_zero():
            r = p.residue()
            if r:
                for e, v in self.kernel_extra.items():
                    out[e] = out.get(e, ZERO) + v * r
        return out


# ---------------------------------------------------------------------------
# plain correlators
# ---------------------------------------------------------------------------

def _stable_pairs(m_max: int):
    """(g, n) with 2g - 2 + n = m for m = 1..m_max, in complexity order."""
    for m in range(1, m_max + 1):
        for g in range(0, (m + 1) // 2 + 1):
            n = m + 2 - 2 * g
            if n >= 1:
                yield m, g, n


def _splits(n: int):
    """Bipartitions (I, J) of spectator positions {0..n-2}, as index tuples."""
    idx = tuple(range(n - 1))
    for size in range(n):
        for I in combinations(idx, size):
            J = tuple(i for i in idx if i not in I)
            yield I, J


class CorrelatorTable:
    """Correlators of one run; per (g, n) one coefficient dict per disc.

    Mixed-disc entries vanish identically (zero cross-disc W_{0,2}), so
    `entry` returns {} unless all labels agree.
    """

    def __init__(self, curve: LocalSpectralCurve):
        self.curve = curve
        self.per_disc: dict[tuple[int, int], list[dict]] = {}

    def entry(self, g: int, n: int, disc_labels: tuple[int, ...]) -> dict:
        if len(set(disc_labels)) != 1:
            return {}
        return self.per_disc[(g, n)][disc_labels[0]]

    def pairs(self):
        return sorted(self.per_disc)


def _compute_disc(ctx: DiscContext, g: int, n: int, lookup) -> dict:
    """One W_{g,n} on one disc; `lookup(g', n')` returns earlier tables."""
    bracket: dict[tuple[int, ...], Series] = {}

    def add(key, series):
        cur = bracket.get(key)
        bracket[key] = series if cur is None else cur + series

    if g >= 1:
        if (g - 1, n + 1) == (0, 2):
            add((), ctx.w02_self())
        else:
            for exps, c in lookup(g - 1, n + 1).items():
                s = ctx.substitute(exps[0], False) * ctx.substitute(exps[1], True)
                add(exps[2:], s * c)

    for I, J in _splits(n):
        for gq in range(g + 1):
            g1, g2 = gq, g - gq
            if (g1 == 0 and not I) or (g2 == 0 and not J):
                continue
            f1 = _factor(ctx, lookup, g1, I, use_sigma=False)
            if not f1:
                continue
            f2 = _factor(ctx, lookup, g2, J, use_sigma=True)
            for (t1, s1) in f1.items():
                for (t2, s2) in f2.items():
                    merged = [0] * (n - 1)
                    for pos, e in zip(I, t1):
                        merged[pos] = e
                    for pos, e in zip(J, t2):
                        merged[pos] = e
                    add(tuple(merged), s1 * s2)

    out: dict[tuple[int, ...], Fraction] = {}
    for spect, series in bracket.items():
        for e1, c in ctx.extract(series).items():
            key = (e1,) + spect
            out[key] = out.get(key, ZERO) + c
    return {k: v for k, v in out.items() if v != 0}


def _factor(ctx: DiscContext, lookup, g1: int, I, use_sigma: bool) -> dict:
    """One bracket factor W_{g1,|I|+1}(z or sigma(z), z_I) as a map from
    spectator exponent tuples to z-series."""
    n1 = len(I) + 1
    if (g1, n1) == (0, 2):
        sub = {}
        for k in range(ctx.N):
            sub[(-k - 2,)] = ctx.substitute(k, use_sigma) * (k + 1)
        return sub
    table = lookup(g1, n1)
    out: dict[tuple[int, ...], Series] = {}
    for exps, c in table.items():
        s = ctx.substitute(exps[0], use_sigma) * c
        key = exps[1:]
        cur = out.get(key)
        out[key] = s if cur is None else cur + s
    return out


def _window(g_max, n_max, max_complexity):
    """Dependency-closed set of (g, n) targets, yielded in complexity order.

    With a complexity cap the window is {1 <= 2g - 2 + n <= M}, which is
    closed under the recursion (each dependency drops the complexity by 1).
    Otherwise it is {g <= g_max, n <= n_max} closed under the genus-dropping
    step (g, n) -> (g - 1, n + 1).
    """
    if max_complexity is not None:
        for m, g, n in _stable_pairs(max_complexity):
            yield m, g, n
        return
    m_max = max(2 * g_max - 2 + n_max, 1)
    for m, g, n in _stable_pairs(m_max):
        if g <= g_max and n <= n_max + (g_max - g):
            yield m, g, n


def toprec_run(curve: LocalSpectralCurve, g_max: int = 0, n_max: int = 1,
               max_complexity: int | None = None) -> CorrelatorTable:
    """Correlators in complexity order 2g - 2 + n = 1, 2, ...

    Either give (g_max, n_max) or a flat complexity cap.  A truncation
    shortfall surfaces as a TruncationError naming the order.
    """
    if max_complexity is None and (g_max < 0 or n_max < 1):
        raise ValueError("need g_max >= 0 and n_max >= 1")
    table = CorrelatorTable(curve)
    contexts = [DiscContext(curve, a) for a in range(curve.r)]
    for m, g, n in _window(g_max, n_max, max_complexity):
        per_disc = []
        for alpha, ctx in enumerate(contexts):
            def lookup(g2, n2, _a=alpha):
                return table.per_disc[(g2, n2)][_a]
            per_disc.append(_compute_disc(ctx, g, n, lookup))
        table.per_disc[(g, n)] = per_disc
    return table


# ---------------------------------------------------------------------------
# twisted correlators
# ---------------------------------------------------------------------------

class TwistedCorrelatorTable:
    """Per (g, n): one dict per disc mapping basis index tuples to
    coefficient dicts (same shape as the plain correlators)."""

    def __init__(self, curve: LocalSpectralCurve, algebra: FrobeniusAlgebra):
        self.curve = curve
        self.algebra = algebra
        self.per_disc: dict[tuple[int, int], list[dict]] = {}

    def entry(self, g: int, n: int, disc_labels, basis_labels) -> dict:
        if len(set(disc_labels)) != 1:
            return {}
        return self.per_disc[(g, n)][disc_labels[0]].get(tuple(basis_labels), {})


def _compute_disc_twisted(ctx: DiscContext, alg: FrobeniusAlgebra, eta,
                          g: int, n: int, lookup) -> dict:
    r = alg.dim
    out: dict[tuple[int, ...], dict] = {}
    for i1 in range(r):
        bracket: dict[tuple, Series] = {}

        def add(key, series):
            cur = bracket.get(key)
            bracket[key] = series if cur is None else cur + series

        for a, b, w in comultiply_terms(alg, alg.basis_vector(i1)):
            if g >= 1:
                if (g - 1, n + 1) == (0, 2):
                    if eta[a][b] != 0:
                        add(((), ()), ctx.w02_self() * (w * eta[a][b]))
                else:
                    sub = lookup(g - 1, n + 1)
                    for btuple, coeffs in sub.items():
                        if btuple[0] != a or btuple[1] != b:
                            continue
                        for exps, c in coeffs.items():
                            s = (ctx.substitute(exps[0], False)
                                 * ctx.substitute(exps[1], True))
                            add((exps[2:], btuple[2:]), s * (c * w))
            for I, J in _splits(n):
                for gq in range(g + 1):
                    g1, g2 = gq, g - gq
                    if (g1 == 0 and not I) or (g2 == 0 and not J):
                        continue
                    f1 = _factor_twisted(ctx, alg, eta, lookup, g1, I, a, False)
                    if not f1:
                        continue
                    f2 = _factor_twisted(ctx, alg, eta, lookup, g2, J, b, True)
                    for (t1, b1), s1 in f1.items():
                        for (t2, b2), s2 in f2.items():
                            merged = [0] * (n - 1)
                            mb = [0] * (n - 1)
                            for pos, e, bi in zip(I, t1, b1):
                                merged[pos] = e
                                mb[pos] = bi
                            for pos, e, bi in zip(J, t2, b2):
                                merged[pos] = e
                                mb[pos] = bi
                            add((tuple(merged), tuple(mb)), s1 * s2 * w)

        for (spect, btail), series in bracket.items():
            for e1, c in ctx.extract(series).items():
                key_b = (i1,) + btail
                key_e = (e1,) + spect
                slot = out.setdefault(key_b, {})
                slot[key_e] = slot.get(key_e, ZERO) + c
    return {b: {k: v for k, v in coeffs.items() if v != 0}
            for b, coeffs in out.items()
            if any(v != 0 for v in coeffs.values())}


def _factor_twisted(ctx, alg, eta, lookup, g1, I, front, use_sigma) -> dict:
    n1 = len(I) + 1
    r = alg.dim
    if (g1, n1) == (0, 2):
        sub = {}
        for j in range(r):
            if eta[front][j] == 0:
                continue
            for k in range(ctx.N):
                sub[((-k - 2,), (j,))] = (ctx.substitute(k, use_sigma)
                                          * ((k + 1) * eta[front][j]))
        return sub
    table = lookup(g1, n1)
    out: dict[tuple, Series] = {}
    for btuple, coeffs in table.items():
        if btuple[0] != front:
            continue
        for exps, c in coeffs.items():
            s = ctx.substitute(exps[0], use_sigma) * c
            key = (exps[1:], btuple[1:])
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
    return out


def twisted_toprec_run(curve: LocalSpectralCurve, alg: FrobeniusAlgebra,
                       g_max: int = 0, n_max: int = 1,
                       max_complexity: int | None = None) -> TwistedCorrelatorTable:
    """Algebra-twisted correlators; initial data W_{0,2} * eta per disc."""
    from .frobenius import validate, CommutativityError
    rep = validate(alg)
    if not rep.ok or not alg.commutative:
        raise CommutativityError("twisted recursion needs a validated "
                                 "commutative Frobenius algebra")
    table = TwistedCorrelatorTable(curve, alg)
    contexts = [DiscContext(curve, a) for a in range(curve.r)]
    for m, g, n in _window(g_max, n_max, max_complexity):
        per_disc = []
        for alpha, ctx in enumerate(contexts):
            def lookup(g2, n2, _a=alpha):
                return table.per_disc[(g2, n2)][_a]
            per_disc.append(_compute_disc_twisted(ctx, alg, rep.eta, g, n, lookup))
        table.per_disc[(g, n)] = per_disc
    return table


# ---------------------------------------------------------------------------
# JSON schema: { "discs": [ { "x": [[exp, "p/q"], ...], "y": [...] } ],
#                "truncation": N }
# ---------------------------------------------------------------------------

def curve_to_json_dict(curve: LocalSpectralCurve) -> dict:
    return {
        "discs": [{"x": [[e, str(v)] for e, v in d.x.items()],
                   "y": [[e, str(v)] for e, v in d.y.items()]}
                  for d in curve.discs],
        "truncation": curve.truncation,
    }


def curve_from_json_dict(d: dict) -> LocalSpectralCurve:
    try:
        n = int(d["truncation"])
        discs = tuple(
            Disc(Series.from_pairs(item["x"], n), Series.from_pairs(item["y"], n))
            for item in d["discs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed curve JSON: {exc}") from exc
    return LocalSpectralCurve(discs, n)


def curve_loads(text: str) -> LocalSpectralCurve:
    return curve_from_json_dict(json.loads(text))


def correlators_to_json_dict(table: CorrelatorTable) -> dict:
    out = {}
    for (g, n), per_disc in sorted(table.per_disc.items()):
        entries = []
        for alpha, coeffs in enumerate(per_disc):
            for exps, c in sorted(coeffs.items()):
                entries.append({"discs": [alpha] * n, "exponents": list(exps),
                                "value": str(c)})
        out[f"{g},{n}"] = entries
    return out
