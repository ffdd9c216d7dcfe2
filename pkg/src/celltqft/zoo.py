"""Stock Frobenius algebras: K^n, matrix algebras, group algebras and their
centers."""

from __future__ import annotations

from fractions import Fraction

from .frobenius import ONE, ZERO, FrobeniusAlgebra
from .groups import GroupTable, conjugacy_classes, preset_group

__all__ = [
    "semisimple", "matrix_algebra", "group_algebra",
    "center_of_group_algebra", "preset_algebra",
]


def semisimple(n: int) -> FrobeniusAlgebra:
    """K^n with the idempotent basis u_i and eps(x_1,...,x_n) = sum x_i."""
    if n < 1:
        raise ValueError("semisimple algebra needs n >= 1")
    mult = tuple(tuple(tuple(ONE if i == j == k else ZERO for k in range(n))
                       for j in range(n)) for i in range(n))
    basis = tuple(f"u{i + 1}" for i in range(n))
    return FrobeniusAlgebra(n, basis, mult, (ONE,) * n, True)


def matrix_algebra(n: int) -> FrobeniusAlgebra:
    """Full n*n matrix algebra with basis E_ij and eps = trace.

    Non-commutative for n >= 2, so the commutativity flag is left unset and
    the TQFT operations will refuse it; the Frobenius checks still apply.
    """
    if n < 1:
        raise ValueError("matrix algebra needs n >= 1")
    r = n * n

    def idx(i, j):
        return i * n + j

    mult = [[[ZERO] * r for _ in range(r)] for _ in range(r)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:  # E_ij E_kl = delta_jk E_il
                        mult[idx(i, j)][idx(k, l)][idx(i, l)] = ONE
    basis = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    counit = tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in mult)
    return FrobeniusAlgebra(r, basis, frozen, counit, commutative=(n == 1))


def group_algebra(group: GroupTable) -> FrobeniusAlgebra:
    """K[G] with basis G and eps(g) = 1 if g is the identity, else 0."""
    n = group.order
    mult = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            mult[a][b][group.mul(a, b)] = ONE
    basis = tuple("1" if g == group.identity else f"g{g}" for g in range(n))
    counit = tuple(ONE if g == group.identity else ZERO for g in range(n))
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in mult)
    return FrobeniusAlgebra(n, basis, frozen, counit,
                            commutative=group.is_abelian())


def center_of_group_algebra(group: GroupTable) -> FrobeniusAlgebra:
    """Z(K[G]) with class sums z_C as basis and the restricted counit.

    The counit is the restriction of eps(g) = [g = 1], so eps(z_C) = 1 for
    the identity class and 0 otherwise.  Structure constants come from
    expanding products of class sums in K[G]; always commutative.
    """
    classes = conjugacy_classes(group)
    r = classes.count
    mult = [[[ZERO] * r for _ in range(r)] for _ in range(r)]
    for c in range(r):
        for d in range(r):
            counts = [0] * group.order
            for a in classes.classes[c]:
                for b in classes.classes[d]:
                    counts[group.mul(a, b)] += 1
            # products of class sums are constant on classes
            for e in range(r):
                rep = classes.representatives[e]
                mult[c][d][e] = Fraction(counts[rep])
    basis = tuple("z1" if c == classes.class_of[group.identity] else f"zC{c + 1}"
                  for c in range(r))
    counit = tuple(ONE if c == classes.class_of[group.identity] else ZERO
                   for c in range(r))
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in mult)
    return FrobeniusAlgebra(r, basis, frozen, counit, True)


def preset_algebra(name: str) -> FrobeniusAlgebra:
    """CLI-facing presets: K^n, Matn, C[Z/n], ZC[S3], ZC[Z/n], ZC[Dn]."""
    s = name.strip()
    if s.startswith("zoo:"):
        s = s[4:]
    if s.startswith("K^"):
        return semisimple(int(s[2:]))
    if s.startswith("Mat"):
        return matrix_algebra(int(s[3:]))
    if s.startswith("C[") and s.endswith("]"):
        return group_algebra(preset_group(s[2:-1]))
    if s.startswith("ZC[") and s.endswith("]"):
        return center_of_group_algebra(preset_group(s[3:-1]))
    raise ValueError(f"unknown algebra preset: {name!r}")
