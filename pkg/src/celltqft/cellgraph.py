"""Cell graphs as combinatorial maps, edge contractions, and enumeration.

A cell graph is the 1-skeleton of a cell decomposition of a closed oriented
surface, stored as half-edge data: per-vertex cyclic orders (the rotation)
and a fixed-point-free pairing of half-edges into edges.  Vertices are
labeled 1..n by their position in `rotation`.  Faces are the cycles of the
permutation h -> rotation(pairing(h)); this composition order is a fixed
convention, and either consistent choice gives the same genus.

Arrowed graphs carry one marked half-edge per vertex, which kills all
automorphisms and makes brute-force enumeration duplicate-free.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

__all__ = [
    "CellGraph", "genus", "faces", "eco1", "eco2",
    "enumerate_arrowed", "count_brute", "automorphism_order", "hom_set",
]


def _guard_sum(total: int) -> None:
    limit = int(os.environ.get("CELLTQFT_MAX_DEGREE_SUM", "12"))
    if total > limit:
        raise ValueError(
            f"degree sum {total} exceeds enumeration guard {limit}; "
            f"raise CELLTQFT_MAX_DEGREE_SUM to override")


@dataclass(frozen=True)
class CellGraph:
    """rotation[v] lists the half-edge ids at vertex v+1 in cyclic order;
    pairing is a tuple of 2-element edge pairs; arrows optionally marks one
    half-edge per vertex."""

    rotation: tuple[tuple[int, ...], ...]
    pairing: tuple[tuple[int, int], ...]
    arrows: tuple[int, ...] | None = None

    def __post_init__(self):
        halves = [h for cyc in self.rotation for h in cyc]
        if len(set(halves)) != len(halves):
            raise ValueError("half-edge ids must be distinct")
        paired = [h for e in self.pairing for h in e]
        if sorted(paired) != sorted(halves):
            raise ValueError("pairing must cover each half-edge exactly once")
        if any(a == b for a, b in self.pairing):
            raise ValueError("pairing must be fixed-point-free")
        if self.arrows is not None:
            if len(self.arrows) != len(self.rotation):
                raise ValueError("need one arrow per vertex")
            for v, h in enumerate(self.arrows):
                if h not in self.rotation[v]:
                    raise ValueError("arrow must mark a half-edge of its vertex")

    @classmethod
    def build(cls, rotation, edges, arrows=None) -> "CellGraph":
        rot = tuple(tuple(c) for c in rotation)
        pair = tuple(tuple(sorted(e)) for e in edges)
        return cls(rot, pair, tuple(arrows) if arrows is not None else None)

    # -- derived structure (all O(E)) --------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.rotation)

    @property
    def n_edges(self) -> int:
        return len(self.pairing)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.rotation)

    def vertex_of(self) -> dict[int, int]:
        return {h: v for v, cyc in enumerate(self.rotation) for h in cyc}

    def next_at_vertex(self) -> dict[int, int]:
        nxt = {}
        for cyc in self.rotation:
            for i, h in enumerate(cyc):
                nxt[h] = cyc[(i + 1) % len(cyc)]
        return nxt

    def partner(self) -> dict[int, int]:
        p = {}
        for a, b in self.pairing:
            p[a] = b
            p[b] = a
        return p

    def is_loop(self, edge: tuple[int, int]) -> bool:
        vo = self.vertex_of()
        a, b = edge
        return vo[a] == vo[b]

    def is_connected(self) -> bool:
        if self.n_vertices <= 1:
            return True
        vo = self.vertex_of()
        part = self.partner()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for h in self.rotation[v]:
                w = vo[part[h]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def components(self) -> list[tuple[int, ...]]:
        vo = self.vertex_of()
        part = self.partner()
        seen: set[int] = set()
        comps = []
        for start in range(self.n_vertices):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for h in self.rotation[v]:
                    w = vo[part[h]]
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    def without_arrows(self) -> "CellGraph":
        return CellGraph(self.rotation, self.pairing, None)


def faces(graph: CellGraph) -> int:
    """Number of cycles of the face permutation h -> rotation(pairing(h)).
    An edgeless vertex spans a sphere on its own and bounds one face."""
    if graph.n_edges == 0:
        return graph.n_vertices
    nxt = graph.next_at_vertex()
    part = graph.partner()
    seen: set[int] = set()
    count = 0
    for cyc in graph.rotation:
        for h in cyc:
            if h in seen:
                continue
            count += 1
            cur = h
            while cur not in seen:
                seen.add(cur)
                cur = nxt[part[cur]]
    return count


def genus(graph: CellGraph) -> int:
    """Genus from n - E + F = 2 - 2g; requires a connected graph."""
    if not graph.is_connected():
        raise ValueError("genus is defined here for connected graphs only")
    euler = graph.n_vertices - graph.n_edges + faces(graph)
    if euler % 2 != 0 or euler > 2:
        raise ValueError(f"impossible Euler characteristic {euler}")
    return (2 - euler) // 2


def complexity(graph: CellGraph) -> int:
    """2g - 2 + n, summed over components; drops by 1 per edge contraction."""
    vo = graph.vertex_of()
    total = 0
    for comp in graph.components():
        sub = CellGraph(tuple(graph.rotation[v] for v in comp),
                        tuple(e for e in graph.pairing if vo[e[0]] in comp))
        total += 2 * genus(sub) - 2 + len(comp)
    return total


# ---------------------------------------------------------------------------
# edge contractions
# ---------------------------------------------------------------------------

def _splice(cyc_i, cyc_j, h, hp):
    """Rotation at the merged vertex: walk vertex i from after h, then
    vertex j from after hp."""
    ii = cyc_i.index(h)
    jj = cyc_j.index(hp)
    rest_i = cyc_i[ii + 1:] + cyc_i[:ii]
    rest_j = cyc_j[jj + 1:] + cyc_j[:jj]
    return tuple(rest_i) + tuple(rest_j)


def eco1_with_map(graph: CellGraph, edge: tuple[int, int]):
    """Contract a straight edge; returns (graph', old-vertex -> new-vertex).

    The merged vertex keeps the smaller of the two labels and remaining
    labels close up order-preservingly.
    """
    edge = tuple(sorted(edge))
    if edge not in graph.pairing:
        raise ValueError("not an edge of this graph")
    vo = graph.vertex_of()
    h, hp = edge
    i, j = vo[h], vo[hp]
    if i == j:
        raise ValueError("ECO 1 applies to edges joining distinct vertices")
    if i > j:
        i, j, h, hp = j, i, hp, h
    merged = _splice(graph.rotation[i], graph.rotation[j], h, hp)
    rotation = []
    vmap = {}
    for v in range(graph.n_vertices):
        if v == j:
            vmap[v] = i
            continue
        target = len(rotation)
        rotation.append(merged if v == i else graph.rotation[v])
        vmap[v] = target
    pairing = tuple(e for e in graph.pairing if e != edge)
    return CellGraph(tuple(rotation), pairing), vmap


def eco2_with_map(graph: CellGraph, edge: tuple[int, int]):
    """Contract a loop; splits its vertex into the two side groups.

    Returns ('handle', graph', info) when the result stays connected, where
    the split vertex i becomes vertices i (first side) and n (appended, last
    label); or ('separating', (g1, g2), info) with the two components
    relabeled order-preservingly, each containing one of the new vertices
    with the smaller-label rule.  info maps old vertices to new (vertex i
    maps to a tuple of the two descendants, tagged by component for the
    separating case).
    """
    edge = tuple(sorted(edge))
    if edge not in graph.pairing:
        raise ValueError("not an edge of this graph")
    vo = graph.vertex_of()
    h, hp = edge
    i = vo[h]
    if vo[hp] != i:
        raise ValueError("ECO 2 applies to loops")
    cyc = graph.rotation[i]
    a = cyc.index(h)
    b = cyc.index(hp)
    if a > b:
        a, b = b, a
    side1 = cyc[a + 1:b]
    side2 = cyc[b + 1:] + cyc[:a]
    pairing = tuple(e for e in graph.pairing if e != edge)

    rotation = list(graph.rotation)
    rotation[i] = tuple(side1)
    rotation.append(tuple(side2))
    split = CellGraph(tuple(rotation), pairing)
    n = graph.n_vertices
    v_first, v_second = i, n

    comps = split.components()
    if len(comps) == 1:
        vmap = {v: v for v in range(n)}
        return "handle", split, {"split": (v_first, v_second), "vmap": vmap}

    comp_of = {}
    for comp in comps:
        for v in comp:
            comp_of[v] = comp
    comp1 = comp_of[v_first]
    comp2 = comp_of[v_second]
    if len(comps) != 2 or comp1 is comp2:
        raise AssertionError("loop contraction must split into two components")

    def extract(comp, new_vertex):
        # order-preserving relabel; the new vertex inherits slot i
        order = sorted(comp, key=lambda v: (i if v == new_vertex else v, v == new_vertex))
        rot = tuple(split.rotation[v] for v in order)
        halves = {h2 for c in rot for h2 in c}
        edges = tuple(e for e in pairing if e[0] in halves)
        sub = CellGraph(rot, edges)
        vmap = {v: k for k, v in enumerate(order)}
        return sub, vmap

    g1, map1 = extract(comp1, v_first)
    g2, map2 = extract(comp2, v_second)
    info = {"split": (v_first, v_second), "vmap1": map1, "vmap2": map2}
    return "separating", (g1, g2), info


def eco1(graph: CellGraph, edge) -> CellGraph:
    return eco1_with_map(graph, edge)[0]


def eco2(graph: CellGraph, edge):
    kind, out, _ = eco2_with_map(graph, edge)
    return out if kind == "separating" else out


# ---------------------------------------------------------------------------
# enumeration of arrowed graphs
# ---------------------------------------------------------------------------

def _matchings(items: tuple[int, ...]):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, second in enumerate(rest):
        for sub in _matchings(rest[:k] + rest[k + 1:]):
            yield ((first, second),) + sub


def _vertex_blocks(degrees):
    blocks = []
    base = 0
    for d in degrees:
        blocks.append(tuple(range(base, base + d)))
        base += d
    return blocks


def enumerate_arrowed(g: int, n: int, degrees) -> list[CellGraph]:
    """All arrowed cell graphs of type (g, n) with the given vertex degrees.

    Half-edge names are fixed per vertex with the marked (arrowed) one
    first, so distinct pairings are distinct arrowed graphs and the list is
    duplicate-free by construction.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != n or any(d < 0 for d in degrees):
        raise ValueError("need one non-negative degree per labeled vertex")
    total = sum(degrees)
    _guard_sum(total)
    if total % 2:
        return []
    if any(d == 0 for d in degrees):
        # a degree-0 vertex disconnects unless it is the whole graph
        if (g, n, degrees) == (0, 1, (0,)):
            return [CellGraph(((),), ())]
        return []
    blocks = _vertex_blocks(degrees)
    arrows = tuple(b[0] for b in blocks)
    out = []
    halves = tuple(range(total))
    for pairing in _matchings(halves):
        graph = CellGraph(tuple(blocks), pairing, arrows)
        if not graph.is_connected():
            continue
        if genus(graph) == g:
            out.append(graph)
    return out


@lru_cache(maxsize=None)
def _counts_by_genus(degrees_sorted: tuple[int, ...]) -> dict[int, int]:
    blocks = _vertex_blocks(degrees_sorted)
    halves = tuple(range(sum(degrees_sorted)))
    counts: dict[int, int] = {}
    for pairing in _matchings(halves):
        graph = CellGraph(tuple(blocks), pairing)
        if not graph.is_connected():
            continue
        gg = genus(graph)
        counts[gg] = counts.get(gg, 0) + 1
    return counts


def count_brute(g: int, n: int, degrees) -> int:
    """|arrowed cell graphs of type (g, n, degrees)| by exhaustive matching
    enumeration.  The count only depends on the degree multiset."""
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != n:
        raise ValueError("need one degree per labeled vertex")
    total = sum(degrees)
    _guard_sum(total)
    if total % 2:
        return 0
    if any(d == 0 for d in degrees):
        # a degree-0 vertex disconnects unless it is the whole graph
        return 1 if (g, n, degrees) == (0, 1, (0,)) else 0
    return _counts_by_genus(tuple(sorted(degrees))).get(g, 0)


# ---------------------------------------------------------------------------
# automorphisms and canonical forms
# ---------------------------------------------------------------------------

def automorphism_order(graph: CellGraph) -> int:
    """Order of the label-preserving automorphism group (arrows ignored).

    An automorphism restricts to a cyclic rotation of half-edges at each
    vertex; we try all shift combinations and keep those commuting with the
    edge pairing.
    """
    graph = graph.without_arrows()
    part = graph.partner()
    shifts = [range(len(c)) if c else [0] for c in graph.rotation]
    count = 0
    for combo in product(*shifts):
        phi = {}
        for cyc, s in zip(graph.rotation, combo):
            d = len(cyc)
            for k, h in enumerate(cyc):
                phi[h] = cyc[(k + s) % d]
        if all(phi[part[h]] == part[phi[h]] for h in phi):
            count += 1
    return count


def canonical_key(graph: CellGraph):
    """Canonical form of a labeled cell graph (labels fixed, half-edge names
    forgotten): the lexicographically least encoding over per-vertex cyclic
    shifts.  Intended for tiny graphs."""
    graph = graph.without_arrows()
    vo = graph.vertex_of()
    part = graph.partner()
    shifts = [range(len(c)) if c else [0] for c in graph.rotation]
    best = None
    for combo in product(*shifts):
        slot = {}
        for cyc, s in zip(graph.rotation, combo):
            d = len(cyc)
            for k in range(d):
                slot[cyc[(k + s) % d]] = k
        enc = tuple(
            tuple((vo[part[h]], slot[part[h]]) for h in cyc[s:] + cyc[:s])
            for cyc, s in zip(graph.rotation, combo))
        if best is None or enc < best:
            best = enc
    return best


# ---------------------------------------------------------------------------
# Hom sets of the edge-contraction category
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """A contraction sequence recorded by which source half-edges collapse
    and where source vertices end up (sequences inducing the same data are
    the same morphism)."""

    collapsed: frozenset
    vertex_fate: tuple[tuple[int, frozenset], ...]
    sequence: tuple  # one representative list of contracted edges


def _vertex_fate(vmaps) -> tuple[tuple[int, frozenset], ...]:
    return tuple(sorted((v, frozenset(t)) for v, t in vmaps.items()))


def hom_set(source: CellGraph, target: CellGraph, max_edges: int = 4) -> list[Morphism]:
    """Morphisms source -> target as edge-contraction sequences modulo the
    collapse fingerprint (which absorbs automorphism relabelings).

    For source == target the morphisms are the automorphisms.  Both graphs
    must be tiny; the search is a breadth-first walk over contraction
    sequences, which terminates because every contraction removes an edge.
    """
    if source.n_edges > max_edges or target.n_edges > max_edges:
        raise ValueError("hom_set is restricted to tiny graphs")
    source = source.without_arrows()
    target = target.without_arrows()
    target_key = _multi_key(target)

    if _multi_key(source) == target_key:
        # contractions strictly reduce complexity, so Hom(g, g) = Aut(g)
        fate = _vertex_fate({v: {v} for v in range(source.n_vertices)})
        return [Morphism(frozenset(), fate, ("aut", k))
                for k in range(automorphism_order(source))]

    found: dict[tuple, Morphism] = {}
    # state: (graph, fate map old-source-vertex -> set of current vertices,
    #         collapsed half-edges, representative sequence)
    start_fate = {v: {v} for v in range(source.n_vertices)}
    stack = [(source, start_fate, frozenset(), ())]
    while stack:
        graph, fate, collapsed, seq = stack.pop()
        if graph.n_edges < target.n_edges:
            continue
        for edge in graph.pairing:
            if graph.is_loop(edge):
                kind, out, info = eco2_with_map(graph, edge)
                new_collapsed = collapsed | frozenset(edge)
                if kind == "handle":
                    g2 = out
                    vi, vn = info["split"]
                    nf = {}
                    for v, t in fate.items():
                        nt = set(t)
                        if vi in nt:
                            nt.add(vn)
                        nf[v] = nt
                    _advance(g2, nf, new_collapsed, seq + (edge,), target_key,
                             target, found, stack)
                else:
                    ga, gb = out
                    vi, vn = info["split"]
                    m1, m2 = info["vmap1"], info["vmap2"]
                    joined = _join_components(ga, gb)
                    nf = {}
                    for v, t in fate.items():
                        cur = set()
                        for w in t:
                            if w == vi:
                                cur.add(m1[vi])
                                cur.add(ga.n_vertices + m2[vn])
                            elif w in m1:
                                cur.add(m1[w])
                            else:
                                cur.add(ga.n_vertices + m2[w])
                        nf[v] = cur
                    _advance(joined, nf, new_collapsed, seq + (edge,),
                             target_key, target, found, stack)
            else:
                g2, vmap = eco1_with_map(graph, edge)
                nf = {v: {vmap[w] for w in t} for v, t in fate.items()}
                _advance(g2, nf, collapsed | frozenset(edge), seq + (edge,),
                         target_key, target, found, stack)
    return list(found.values())


def _join_components(ga: CellGraph, gb: CellGraph) -> CellGraph:
    return CellGraph(ga.rotation + gb.rotation, ga.pairing + gb.pairing)


def _multi_key(graph: CellGraph):
    """Canonical key of a possibly disconnected labeled graph: the multiset
    of per-component keys together with the component label sets."""
    comps = graph.components()
    keys = []
    for comp in comps:
        rot = tuple(graph.rotation[v] for v in comp)
        halves = {h for c in rot for h in c}
        edges = tuple(e for e in graph.pairing if e[0] in halves)
        keys.append((tuple(comp), canonical_key(CellGraph(rot, edges))))
    return tuple(sorted(keys))


def _advance(graph, fate, collapsed, seq, target_key, target, found, stack):
    if _multi_key(graph) == target_key:
        m = Morphism(collapsed, _vertex_fate(fate), seq)
        key = (m.collapsed, m.vertex_fate)
        found.setdefault(key, m)
    if graph.n_edges > target.n_edges:
        stack.append((graph, fate, collapsed, seq))


# ---------------------------------------------------------------------------
# JSON schema: { "n": n, "rotation": [[h,...],...], "edges": [[h,h'],...],
#                "arrows": [h,...] | null }
# ---------------------------------------------------------------------------

def to_json_dict(graph: CellGraph) -> dict:
    return {
        "n": graph.n_vertices,
        "rotation": [list(c) for c in graph.rotation],
        "edges": [list(e) for e in graph.pairing],
        "arrows": list(graph.arrows) if graph.arrows is not None else None,
    }


def from_json_dict(d: dict) -> CellGraph:
    try:
        graph = CellGraph.build(d["rotation"], d["edges"], d.get("arrows"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    if graph.n_vertices != d.get("n", graph.n_vertices):
        raise ValueError("declared vertex count does not match rotation")
    return graph


def loads(text: str) -> CellGraph:
    return from_json_dict(json.loads(text))
