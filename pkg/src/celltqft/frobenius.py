"""Finite-dimensional Frobenius algebras over exact rationals.

An algebra is given by a basis e_1,...,e_r, structure constants c_{ij}^k
with e_i e_j = sum_k c_{ij}^k e_k, and a counit vector eps_i = eps(e_i).
The counit induces the bilinear form eta(u, v) = eps(u v); the algebra is
Frobenius when eta is non-degenerate.  All scalars are `fractions.Fraction`
(reduced, exact); no floating point is used anywhere.

Every value here is immutable after construction, so instances are safe to
share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, reduced-fraction strings like "-3/4", or Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def _vec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(scalar(x) for x in xs)


class NonDegeneracyError(ValueError):
    """The bilinear form eta is singular."""


class CommutativityError(ValueError):
    """A TQFT operation was invoked on a non-commutative algebra."""


# ---------------------------------------------------------------------------
# exact linear algebra helpers (small dense systems)
# ---------------------------------------------------------------------------

def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a (possibly overdetermined) exact linear system; None if
    inconsistent or underdetermined."""
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
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    if len(pivots) < ncols:
        return None
    sol = [ZERO] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def _invert(mat: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...] | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(mat)
    m = [list(row) + [ONE if i == j else ZERO for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(tuple(row[n:]) for row in m)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusAlgebra:
    """Basis presentation of a finite-dimensional algebra with counit."""

    dim: int
    basis: tuple[str, ...]
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]  # mult[i][j][k] = c_{ij}^k
    counit: tuple[Fraction, ...]
    commutative: bool = True

    def __post_init__(self):
        r = self.dim
        if r < 1:
            raise ValueError("dimension must be positive")
        if len(self.basis) != r or len(self.counit) != r:
            raise ValueError("basis/counit length does not match dim")
        if len(self.mult) != r or any(len(p) != r for p in self.mult) or any(
                len(q) != r for p in self.mult for q in p):
            raise ValueError("structure constants must be an r*r*r array")

    @classmethod
    def from_data(cls, basis, mult, counit, commutative=True) -> "FrobeniusAlgebra":
        r = len(basis)
        m = tuple(tuple(_vec(mult[i][j]) for j in range(r)) for i in range(r))
        return cls(r, tuple(str(b) for b in basis), m, _vec(counit), bool(commutative))

    # -- elementwise operations ------------------------------------------

    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Product of two order-1 elements given by coefficient vectors."""
        r = self.dim
        if len(u) != r or len(v) != r:
            raise ValueError("coefficient vector has wrong length")
        out = [ZERO] * r
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.mult[i]
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                c = ui * vj
                for k, m in enumerate(row[j]):
                    if m != 0:
                        out[k] += c * m
        return tuple(out)

    def product(self, vs: Iterable[Sequence[Fraction]]) -> tuple[Fraction, ...]:
        acc = self.unit
        for v in vs:
            acc = self.multiply(acc, v)
        return acc

    def eps(self, u: Sequence[Fraction]) -> Fraction:
        return sum((c * e for c, e in zip(u, self.counit)), ZERO)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    @property
    def unit(self) -> tuple[Fraction, ...]:
        rep = validate(self)
        if rep.unit is None:
            raise ValueError("algebra has no two-sided unit")
        return rep.unit

    def scale_counit(self, factor) -> "FrobeniusAlgebra":
        f = scalar(factor)
        return replace(self, counit=tuple(f * e for e in self.counit))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks; failures are data, not exceptions."""

    associative: bool
    unit: tuple[Fraction, ...] | None
    commutative: bool | None        # None when commutativity is not asserted
    eta: tuple[tuple[Fraction, ...], ...]
    eta_inv: tuple[tuple[Fraction, ...], ...] | None
    messages: tuple[str, ...] = ()

    @property
    def nondegenerate(self) -> bool:
        return self.eta_inv is not None

    @property
    def ok(self) -> bool:
        return (self.associative and self.unit is not None
                and self.nondegenerate and self.commutative is not False)


@lru_cache(maxsize=None)
def validate(alg: FrobeniusAlgebra) -> ValidationReport:
    """Check associativity, existence of a two-sided unit, commutativity
    (when flagged), and non-degeneracy of eta."""
    r = alg.dim
    msgs = []

    associative = True
    for i, j, k in product(range(r), repeat=3):
        # sum_m c_{ij}^m c_{mk}^l  vs  sum_m c_{jk}^m c_{im}^l
        for l in range(r):
            lhs = sum((alg.mult[i][j][m] * alg.mult[m][k][l] for m in range(r)), ZERO)
            rhs = sum((alg.mult[j][k][m] * alg.mult[i][m][l] for m in range(r)), ZERO)
            if lhs != rhs:
                associative = False
                msgs.append(f"associativity fails at (i,j,k)=({i},{j},{k})")
                break
        if not associative:
            break

    # left unit: sum_i u_i c_{ij}^k = delta_{jk}; then check it is two-sided
    rows = []
    rhs = []
    for j, k in product(range(r), repeat=2):
        rows.append([alg.mult[i][j][k] for i in range(r)])
        rhs.append(ONE if j == k else ZERO)
    unit = _solve(rows, rhs)
    if unit is not None:
        for j in range(r):
            if alg.multiply(unit, alg.basis_vector(j)) != alg.basis_vector(j) or \
               alg.multiply(alg.basis_vector(j), unit) != alg.basis_vector(j):
                unit = None
                break
    if unit is None:
        msgs.append("no two-sided unit")
    unit_t = tuple(unit) if unit is not None else None

    commutative: bool | None = None
    if alg.commutative:
        commutative = all(alg.mult[i][j] == alg.mult[j][i]
                          for i in range(r) for j in range(i))
        if not commutative:
            msgs.append("commutativity flag set but c_{ij}^k != c_{ji}^k")

    eta = tuple(tuple(alg.eps(alg.multiply(alg.basis_vector(i), alg.basis_vector(j)))
                      for j in range(r)) for i in range(r))
    eta_inv = _invert(eta)
    if eta_inv is None:
        msgs.append("eta is singular (counit is not a Frobenius counit)")

    return ValidationReport(associative, unit_t, commutative, eta, eta_inv,
                            tuple(msgs))


def _require_valid(alg: FrobeniusAlgebra) -> ValidationReport:
    rep = validate(alg)
    if not rep.associative or rep.unit is None:
        raise ValueError("not a unital associative algebra: " + "; ".join(rep.messages))
    if rep.eta_inv is None:
        raise NonDegeneracyError("; ".join(rep.messages) or "eta singular")
    if rep.commutative is False:
        raise CommutativityError("structure constants are not commutative")
    return rep


def _require_commutative(alg: FrobeniusAlgebra) -> ValidationReport:
    rep = _require_valid(alg)
    if not alg.commutative:
        raise CommutativityError("operation requires a commutative Frobenius algebra")
    return rep


# ---------------------------------------------------------------------------
# pairing, comultiplication, Euler element
# ---------------------------------------------------------------------------

def pairing_eta(alg: FrobeniusAlgebra, u, v) -> Fraction:
    """eta(u, v) = eps(uv)."""
    return alg.eps(alg.multiply(u, v))


def eta_matrices(alg: FrobeniusAlgebra):
    """The Gram matrix eta_{ij} = eps(e_i e_j) and its inverse."""
    rep = validate(alg)
    if rep.eta_inv is None:
        raise NonDegeneracyError("eta is singular")
    return rep.eta, rep.eta_inv


def comultiply(alg: FrobeniusAlgebra, v) -> tuple[tuple[Fraction, ...], ...]:
    """Coproduct delta(v) as an r*r coefficient matrix over e_a (x) e_b.

    Computed from delta(v) = (m (x) 1)(v (x) delta(1)) with
    delta(1) = sum_{a,b} eta^{ab} e_a (x) e_b, i.e.
    delta(v)^{ab} = sum_k eta^{kb} (v e_k)^a.
    """
    rep = _require_valid(alg)
    r = alg.dim
    out = [[ZERO] * r for _ in range(r)]
    for k in range(r):
        vek = alg.multiply(v, alg.basis_vector(k))
        for b in range(r):
            w = rep.eta_inv[k][b]
            if w == 0:
                continue
            for a in range(r):
                if vek[a] != 0:
                    out[a][b] += w * vek[a]
    return tuple(tuple(row) for row in out)


def comultiply_terms(alg: FrobeniusAlgebra, v):
    """Nonzero (a, b, coefficient) triples of delta(v); handy for sparse sums."""
    d = comultiply(alg, v)
    return [(a, b, c) for a, row in enumerate(d) for b, c in enumerate(row) if c != 0]


def euler_element(alg: FrobeniusAlgebra) -> tuple[Fraction, ...]:
    """e = m(delta(1)) = sum_{a,b} eta^{ab} e_a e_b."""
    rep = _require_valid(alg)
    r = alg.dim
    out = [ZERO] * r
    for a in range(r):
        for b in range(r):
            w = rep.eta_inv[a][b]
            if w == 0:
                continue
            prod_ab = alg.mult[a][b]
            for k in range(r):
                if prod_ab[k] != 0:
                    out[k] += w * prod_ab[k]
    return tuple(out)


def omega(alg: FrobeniusAlgebra, g: int, vs: Sequence[Sequence[Fraction]]) -> Fraction:
    """Closed-surface correlator with n inputs: eps(v_1 ... v_n e^g)."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    if len(vs) < 1:
        raise ValueError("omega needs at least one input")
    _require_commutative(alg)
    acc = alg.product(vs)
    e = euler_element(alg)
    for _ in range(g):
        acc = alg.multiply(acc, e)
    return alg.eps(acc)


def surface_invariant(alg: FrobeniusAlgebra, g: int) -> Fraction:
    """Invariant of the closed genus-g surface, eps(e^g)."""
    _require_commutative(alg)
    return omega(alg, g, [alg.unit])


# ---------------------------------------------------------------------------
# cobordism tensors and sewing
# ---------------------------------------------------------------------------

def _tuples(r: int, n: int):
    return product(range(r), repeat=n)


@dataclass(frozen=True)
class CobordismTensor:
    """Multilinear map A^{(x)m} -> A^{(x)n} attached to a genus-g cobordism.

    data maps index tuples (i_1..i_m, j_1..j_n) -> coefficient, where the
    i's index inputs and the j's index output basis components.
    """

    algebra: FrobeniusAlgebra
    genus: int
    inputs: int
    outputs: int
    data: tuple[Fraction, ...]      # dense, row-major over (m+n)-tuples

    def __getitem__(self, idx: tuple[int, ...]) -> Fraction:
        r = self.algebra.dim
        flat = 0
        for i in idx:
            flat = flat * r + i
        return self.data[flat]

    def apply(self, inputs: Sequence[Sequence[Fraction]]) -> dict[tuple[int, ...], Fraction]:
        """Contract the input slots with vectors; returns coefficients of the
        order-n output tensor."""
        if len(inputs) != self.inputs:
            raise ValueError("wrong number of inputs")
        r = self.algebra.dim
        out: dict[tuple[int, ...], Fraction] = {}
        for idx in _tuples(r, self.inputs + self.outputs):
            c = self[idx]
            if c == 0:
                continue
            w = c
            for v, i in zip(inputs, idx):
                w *= v[i]
                if w == 0:
                    break
            if w == 0:
                continue
            key = idx[self.inputs:]
            out[key] = out.get(key, ZERO) + w
        return {k: v for k, v in out.items() if v != 0}


def cobordism_tensor(alg: FrobeniusAlgebra, g: int, m: int, n: int) -> CobordismTensor:
    """The genus-g cobordism with m input and n output circles.

    Built from the closed correlator on m+n slots by raising the last n
    indices with eta^{-1}:
    T[i_1..i_m, j_1..j_n] = sum_{a_1..a_n} eps(e_I e_A e^g) prod_t eta^{a_t j_t}.
    """
    rep = _require_commutative(alg)
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m + n >= 1 (use surface_invariant for the closed surface)")
    r = alg.dim
    e = euler_element(alg)
    eg = alg.unit
    for _ in range(g):
        eg = alg.multiply(eg, e)

    # closed-correlator tensor on m + n slots
    closed: dict[tuple[int, ...], Fraction] = {}
    for idx in _tuples(r, m + n):
        acc = eg
        for i in idx:
            acc = alg.multiply(acc, alg.basis_vector(i))
        closed[idx] = alg.eps(acc)

    data = []
    for idx in _tuples(r, m + n):
        ins, outs = idx[:m], idx[m:]
        total = ZERO
        for raised in _tuples(r, n):
            c = closed[ins + raised]
            if c == 0:
                continue
            for a, j in zip(raised, outs):
                c *= rep.eta_inv[a][j]
                if c == 0:
                    break
            total += c
        data.append(total)
    return CobordismTensor(alg, g, m, n, tuple(data))


def sew(t1: CobordismTensor, t2: CobordismTensor, j: int) -> CobordismTensor:
    """Sew j output circles of t2 into j input circles of t1.

    Convention: the last j outputs of t2 are glued to the first j inputs of
    t1 (both tensors are symmetric in their input block and in their output
    block, so the choice of slots does not matter).  The result has genus
    g1 + g2 + j - 1, inputs k + m - j and outputs n + l - j.
    """
    if t1.algebra is not t2.algebra and t1.algebra != t2.algebra:
        raise ValueError("tensors over different algebras")
    if j < 1 or j > t1.inputs or j > t2.outputs:
        raise ValueError("invalid number of sewn circles")
    alg = t1.algebra
    r = alg.dim
    g = t1.genus + t2.genus + j - 1
    m_in = t2.inputs + t1.inputs - j
    n_out = t2.outputs + t1.outputs - j

    data: dict[tuple[int, ...], Fraction] = {}
    for idx in _tuples(r, m_in + n_out):
        k2 = idx[:t2.inputs]
        rest_in = idx[t2.inputs:m_in]                  # free inputs of t1
        out2 = idx[m_in:m_in + (t2.outputs - j)]       # free outputs of t2
        out1 = idx[m_in + (t2.outputs - j):]
        total = ZERO
        for glued in _tuples(r, j):
            a = t2[k2 + out2 + glued]
            if a == 0:
                continue
            b = t1[glued + rest_in + out1]
            if b != 0:
                total += a * b
        if total != 0:
            data[idx] = total
    flat = []
    for idx in _tuples(r, m_in + n_out):
        flat.append(data.get(idx, ZERO))
    return CobordismTensor(alg, g, m_in, n_out, tuple(flat))


# ---------------------------------------------------------------------------
# direct sum and tensor product
# ---------------------------------------------------------------------------

def direct_sum(a1: FrobeniusAlgebra, a2: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """Block sum with counit eps_1 + eps_2."""
    r1, r2 = a1.dim, a2.dim
    r = r1 + r2
    basis = tuple(f"L.{b}" for b in a1.basis) + tuple(f"R.{b}" for b in a2.basis)

    def c(i, j, k):
        if i < r1 and j < r1 and k < r1:
            return a1.mult[i][j][k]
        if i >= r1 and j >= r1 and k >= r1:
            return a2.mult[i - r1][j - r1][k - r1]
        return ZERO

    mult = tuple(tuple(tuple(c(i, j, k) for k in range(r)) for j in range(r))
                 for i in range(r))
    counit = a1.counit + a2.counit
    return FrobeniusAlgebra(r, basis, mult, counit,
                            a1.commutative and a2.commutative)


def tensor_product(a1: FrobeniusAlgebra, a2: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """Tensor product with counit eps_1 * eps_2; basis e_i (x) f_j."""
    r1, r2 = a1.dim, a2.dim
    r = r1 * r2
    basis = tuple(f"{b1}*{b2}" for b1 in a1.basis for b2 in a2.basis)

    def c(i, j, k):
        i1, i2 = divmod(i, r2)
        j1, j2 = divmod(j, r2)
        k1, k2 = divmod(k, r2)
        return a1.mult[i1][j1][k1] * a2.mult[i2][j2][k2]

    mult = tuple(tuple(tuple(c(i, j, k) for k in range(r)) for j in range(r))
                 for i in range(r))
    counit = tuple(a1.counit[i1] * a2.counit[i2]
                   for i1 in range(r1) for i2 in range(r2))
    return FrobeniusAlgebra(r, basis, mult, counit,
                            a1.commutative and a2.commutative)


# ---------------------------------------------------------------------------
# JSON schema:  { "dim": r, "basis": [...], "mult": [[["p/q",...],...],...],
#                "counit": [...], "commutative": bool }
# ---------------------------------------------------------------------------

def to_json_dict(alg: FrobeniusAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "basis": list(alg.basis),
        "mult": [[[str(c) for c in row] for row in plane] for plane in alg.mult],
        "counit": [str(c) for c in alg.counit],
        "commutative": alg.commutative,
    }


def from_json_dict(d: dict) -> FrobeniusAlgebra:
    try:
        alg = FrobeniusAlgebra.from_data(d["basis"], d["mult"], d["counit"],
                                         d.get("commutative", True))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed algebra JSON: {exc}") from exc
    if alg.dim != d["dim"]:
        raise ValueError("declared dim does not match basis length")
    return alg


def dumps(alg: FrobeniusAlgebra) -> str:
    return json.dumps(to_json_dict(alg), indent=2)


def loads(text: str) -> FrobeniusAlgebra:
    return from_json_dict(json.loads(text))
