"""Finite groups as explicit multiplication tables, and their class data.

Groups enter only through Cayley tables, so every derived quantity
(conjugacy classes, commutator counts) is computed by plain exhaustive
loops that are easy to audit.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

__all__ = [
    "GroupTable", "ConjugacyClassData", "conjugacy_classes",
    "cyclic_group", "symmetric_group_3", "dihedral_group", "preset_group",
    "hom_count_oracle",
]


@dataclass(frozen=True)
class GroupTable:
    """A finite group: elements 0..order-1, table[a][b] = a*b."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("malformed multiplication table")
        e = self.identity
        if any(self.table[e][a] != a or self.table[a][e] != a for a in range(n)):
            raise ValueError("identity law fails")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise ValueError("rows must be permutations (no inverses)")
        for col in zip(*self.table):
            if sorted(col) != list(range(n)):
                raise ValueError("columns must be permutations (no inverses)")
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError("associativity fails")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(n) for b in range(a))

    @classmethod
    def from_mul(cls, elements, mul, identity) -> "GroupTable":
        idx = {g: i for i, g in enumerate(elements)}
        table = tuple(tuple(idx[mul(a, b)] for b in elements) for a in elements)
        return cls(len(elements), table, idx[identity])


@dataclass(frozen=True)
class ConjugacyClassData:
    class_of: tuple[int, ...]          # element -> class index
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)


def conjugacy_classes(group: GroupTable) -> ConjugacyClassData:
    n = group.order
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        orbit = sorted({group.mul(group.mul(g, a), group.inv(g)) for g in range(n)})
        for x in orbit:
            class_of[x] = len(classes)
        classes.append(tuple(orbit))
    # identity class must come first so class sums start at z_1
    order = sorted(range(len(classes)), key=lambda c: classes[c])
    remap = {old: new for new, old in enumerate(order)}
    classes = tuple(classes[old] for old in order)
    class_of = tuple(remap[c] for c in class_of)
    reps = tuple(cl[0] for cl in classes)
    assert classes[class_of[group.identity]] == (group.identity,)
    return ConjugacyClassData(class_of, classes, reps)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return GroupTable(n, table, 0)


def symmetric_group_3() -> GroupTable:
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]

    def mul(p, q):  # (p*q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(3))

    return GroupTable.from_mul(perms, mul, (0, 1, 2))


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n: elements (k, s) = rotation^k * flip^s."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    elements = [(k, s) for s in range(2) for k in range(n)]

    def mul(a, b):
        (k1, s1), (k2, s2) = a, b
        # flip conjugates rotations:  f r^k = r^{-k} f
        k = (k1 + (k2 if s1 == 0 else -k2)) % n
        return (k, (s1 + s2) % 2)

    return GroupTable.from_mul(elements, mul, (0, 0))


def preset_group(name: str) -> GroupTable:
    """Names: 'cyclic(n)' (alias 'Z/n'), 'S3', 'dihedral(n)' (alias 'Dn')."""
    s = name.strip()
    if s == "S3":
        return symmetric_group_3()
    for prefix, builder in (("cyclic", cyclic_group), ("dihedral", dihedral_group)):
        if s.startswith(prefix + "(") and s.endswith(")"):
            return builder(int(s[len(prefix) + 1:-1]))
    if s.startswith("Z/"):
        return cyclic_group(int(s[2:]))
    if s.startswith("D") and s[1:].isdigit():
        return dihedral_group(int(s[1:]))
    raise ValueError(f"unknown preset group: {name!r}")


# ---------------------------------------------------------------------------
# commutator-product counting oracle
# ---------------------------------------------------------------------------

def _size_guard(group: GroupTable, genus: int) -> None:
    limit = int(os.environ.get("CELLTQFT_HOM_GUARD", "20000"))
    if group.order ** (2 * genus) > limit:
        raise ValueError(
            f"enumeration of {group.order}^{2 * genus} tuples exceeds guard "
            f"{limit}; raise CELLTQFT_HOM_GUARD to override")


def hom_count_oracle(group: GroupTable, genus: int) -> Fraction:
    """Count tuples (a_1,b_1,...,a_g,b_g) with [a_1,b_1]...[a_g,b_g] = 1,
    normalized by |G|^g, via exhaustive enumeration.

    With the counit eps(g) = [g = identity] on the center of the group
    algebra this normalization satisfies
    surface_invariant(center, g) = hom_count_oracle(G, g).
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    _size_guard(group, genus)
    n = group.order
    mul, inv = group.mul, group.inv

    commutator = [[mul(mul(a, b), mul(inv(a), inv(b))) for b in range(n)]
                  for a in range(n)]
    hits = 0
    for pairs in product(range(n), repeat=2 * genus):
        w = group.identity
        for i in range(genus):
            w = mul(w, commutator[pairs[2 * i]][pairs[2 * i + 1]])
        if w == group.identity:
            hits += 1
    return Fraction(hits, n ** genus)


# ---------------------------------------------------------------------------
# JSON schema:  { "order": n, "identity": idx, "table": [[idx,...],...] }
# ---------------------------------------------------------------------------

def to_json_dict(group: GroupTable) -> dict:
    return {"order": group.order, "identity": group.identity,
            "table": [list(r) for r in group.table]}


def from_json_dict(d: dict) -> GroupTable:
    try:
        return GroupTable(int(d["order"]),
                          tuple(tuple(int(x) for x in row) for row in d["table"]),
                          int(d["identity"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed group JSON: {exc}") from exc


def loads(text: str) -> GroupTable:
    return from_json_dict(json.loads(text))
