"""Edge-contraction counting recursion and Frobenius-weighted evaluation.

count(g, n, mu) solves the three-term contraction recursion for the number
of arrowed cell graphs with labeled vertex degrees mu = (mu_1, ..., mu_n):
contracting the arrowed edge at vertex 1 either joins it with a neighbor
(degree mu_1 + mu_j - 2), or splits it as a handle (genus drops) or as a
separating loop (the graph factors).  Base cases: count(0,1,(0,)) = 1 and
any other profile containing a zero degree counts 0; both are validated
against the brute-force enumeration, not assumed.

evaluate_graph sends a vertex-colored cell graph to a scalar by contracting
edges: a straight edge multiplies the two colors, a loop splits its color
through the coproduct.  The result is independent of the contraction order
and equals eps(v_1 ... v_n e^g).
"""

from __future__ import annotations

from fractions import Fraction

from .cellgraph import CellGraph, eco1_with_map, eco2_with_map
from .frobenius import (
    ZERO,
    FrobeniusAlgebra,
    comultiply_terms,
    omega,
)

__all__ = ["count", "CountTable", "weighted_omega", "evaluate_graph",
           "edge_removal_equivalent", "counting_formula_residual"]


class CountTable:
    """Memoized counts keyed on (g, mu_1, sorted tail).

    The memo is a plain dict: fill it from one thread (every public call
    does), after which lookups are read-only and safe to share.
    """

    def __init__(self):
        self._memo: dict[tuple, int] = {}

    def count(self, g: int, n: int, mu) -> int:
        mu = tuple(int(m) for m in mu)
        if len(mu) != n:
            raise ValueError("profile length must equal n")
        if g < 0 or any(m < 0 for m in mu):
            return 0
        return self._count(g, mu)

    def _count(self, g: int, mu: tuple[int, ...]) -> int:
        if g < 0:
            return 0
        if any(m == 0 for m in mu):
            return 1 if (g, mu) == (0, (0,)) else 0
        key = (g, mu[0], tuple(sorted(mu[1:])))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        total = 0
        mu1 = mu[0]
        rest = mu[1:]
        # join the arrowed vertex with a neighbor
        for j, muj in enumerate(rest):
            reduced = (mu1 + muj - 2,) + rest[:j] + rest[j + 1:]
            total += muj * self._count(g, reduced)
        for alpha in range(mu1 - 1):
            beta = mu1 - 2 - alpha
            # handle loop: genus drops, vertex splits into two
            total += self._count(g - 1, (alpha, beta) + rest)
            # separating loop: graph factors over (g1, I), (g2, J)
            for bits in range(1 << len(rest)):
                left = tuple(m for k, m in enumerate(rest) if bits >> k & 1)
                right = tuple(m for k, m in enumerate(rest)
                              if not bits >> k & 1)
                for g1 in range(g + 1):
                    c1 = self._count(g1, (alpha,) + left)
                    if c1:
                        total += c1 * self._count(g - g1, (beta,) + right)
        self._memo[key] = total
        return total


_TABLE = CountTable()


def count(g: int, n: int, mu) -> int:
    """Number of arrowed cell graphs of type (g, n) with degree profile mu."""
    return _TABLE.count(g, n, mu)


def weighted_omega(alg: FrobeniusAlgebra, g: int, n: int, mu, vs) -> Fraction:
    """count(g, n, mu) * omega(alg, g, vs): the count-weighted correlator."""
    return count(g, n, mu) * omega(alg, g, vs)


def counting_formula_residual(alg: FrobeniusAlgebra, g: int, n: int, mu, vs) -> Fraction:
    """Left minus right side of the contraction identity for the weighted
    correlators; zero exactly when the recursion holds for this input.

    Right side: neighbor-join terms with colors v_1 v_j, the handle term
    with the coproduct of v_1, and the separating term resolved through
    eta (as pairs of smaller weighted correlators).
    """
    mu = tuple(int(m) for m in mu)
    vs = [tuple(v) for v in vs]
    if len(mu) != n or len(vs) != n:
        raise ValueError("need one degree and one color per vertex")
    lhs = weighted_omega(alg, g, n, mu, vs)

    rhs = ZERO
    rest_mu = mu[1:]
    rest_vs = vs[1:]
    for j in range(1, n):
        reduced_mu = (mu[0] + mu[j] - 2,) + rest_mu[:j - 1] + rest_mu[j:]
        reduced_vs = [alg.multiply(vs[0], vs[j])] + rest_vs[:j - 1] + rest_vs[j:]
        rhs += mu[j] * weighted_omega(alg, g, n - 1, reduced_mu, reduced_vs)

    delta_v1 = comultiply_terms(alg, vs[0])
    for alpha in range(mu[0] - 1):
        beta = mu[0] - 2 - alpha
        c_handle = count(g - 1, n + 1, (alpha, beta) + rest_mu) if g >= 1 else 0
        if c_handle:
            s = ZERO
            for a, b, w in delta_v1:
                s += w * omega(alg, g - 1,
                               [alg.basis_vector(a), alg.basis_vector(b)] + rest_vs)
            rhs += c_handle * s
        for bits in range(1 << (n - 1)):
            sel = [bool(bits >> k & 1) for k in range(n - 1)]
            mu_i = tuple(m for m, s_ in zip(rest_mu, sel) if s_)
            mu_j = tuple(m for m, s_ in zip(rest_mu, sel) if not s_)
            vs_i = [v for v, s_ in zip(rest_vs, sel) if s_]
            vs_j = [v for v, s_ in zip(rest_vs, sel) if not s_]
            for g1 in range(g + 1):
                c1 = count(g1, len(mu_i) + 1, (alpha,) + mu_i)
                if not c1:
                    continue
                c2 = count(g - g1, len(mu_j) + 1, (beta,) + mu_j)
                if not c2:
                    continue
                s = ZERO
                for a, b, w in delta_v1:
                    s += (w * omega(alg, g1, [alg.basis_vector(a)] + vs_i)
                          * omega(alg, g - g1, [alg.basis_vector(b)] + vs_j))
                rhs += c1 * c2 * s
    return lhs - rhs


# ---------------------------------------------------------------------------
# colored-graph evaluation
# ---------------------------------------------------------------------------

def evaluate_graph(alg: FrobeniusAlgebra, graph: CellGraph, colors, rng=None) -> Fraction:
    """Value of a colored cell graph under the contraction rules.

    colors is one coefficient vector per labeled vertex.  By default edges
    are contracted in lexicographic order; passing a random.Random instance
    randomizes the order (the value is order-independent, which the tests
    exercise rather than assume).
    """
    colors = {v: tuple(c) for v, c in enumerate(colors)}
    if len(colors) != graph.n_vertices:
        raise ValueError("need one color per vertex")
    return _eval(alg, graph.without_arrows(), colors, rng)


def _eval(alg: FrobeniusAlgebra, graph: CellGraph, colors, rng) -> Fraction:
    if graph.n_edges == 0:
        total = Fraction(1)
        for v in range(graph.n_vertices):
            total *= alg.eps(colors[v])
        return total
    edges = sorted(graph.pairing)
    edge = edges[0] if rng is None else edges[rng.randrange(len(edges))]
    vo = graph.vertex_of()
    if not graph.is_loop(edge):
        out, vmap = eco1_with_map(graph, edge)
        i, j = sorted((vo[edge[0]], vo[edge[1]]))
        merged = alg.multiply(colors[i], colors[j])
        new_colors = {}
        for v, c in colors.items():
            if v == j:
                continue
            new_colors[vmap[v]] = merged if v == i else c
        return _eval(alg, out, new_colors, rng)

    i = vo[edge[0]]
    kind, out, info = eco2_with_map(graph, edge)
    terms = comultiply_terms(alg, colors[i])
    if kind == "handle":
        v1, v2 = info["split"]
        total = ZERO
        for a, b, w in terms:
            new_colors = dict(colors)
            new_colors[v1] = alg.basis_vector(a)
            new_colors[v2] = alg.basis_vector(b)
            total += w * _eval(alg, out, new_colors, rng)
        return total
    g1, g2 = out
    v1, v2 = info["split"]
    m1, m2 = info["vmap1"], info["vmap2"]
    total = ZERO
    for a, b, w in terms:
        c1 = {m1[v]: (alg.basis_vector(a) if v == v1 else colors[v]) for v in m1}
        c2 = {m2[v]: (alg.basis_vector(b) if v == v2 else colors[v]) for v in m2}
        total += w * _eval(alg, g1, c1, rng) * _eval(alg, g2, c2, rng)
    return total


# ---------------------------------------------------------------------------
# edge-removal lemma
# ---------------------------------------------------------------------------

def _fresh_ids(graph: CellGraph, k: int):
    top = max((h for c in graph.rotation for h in c), default=-1)
    return list(range(top + 1, top + 1 + k))


def add_planar_loop(graph: CellGraph, vertex: int, position: int = 0) -> CellGraph:
    """Insert a loop bounding an empty disc at the given vertex."""
    h1, h2 = _fresh_ids(graph, 2)
    rot = list(graph.rotation)
    cyc = list(rot[vertex])
    cyc[position:position] = [h1, h2]
    rot[vertex] = tuple(cyc)
    return CellGraph(tuple(rot), graph.pairing + ((h1, h2),))


def double_edge(graph: CellGraph, edge) -> CellGraph:
    """Add a parallel copy of an edge right next to it (the two copies bound
    a disc).  Works for straight edges and for loops (homotopic copy)."""
    edge = tuple(sorted(edge))
    if edge not in graph.pairing:
        raise ValueError("not an edge of this graph")
    a, b = edge
    na, nb = _fresh_ids(graph, 2)
    rot = []
    for cyc in graph.rotation:
        cyc = list(cyc)
        if a in cyc:
            cyc.insert(cyc.index(a), na)
        if b in cyc:
            cyc.insert(cyc.index(b) + 1, nb)
        rot.append(tuple(cyc))
    return CellGraph(tuple(rot), graph.pairing + ((na, nb),))


def edge_removal_equivalent(alg: FrobeniusAlgebra, graph: CellGraph, case: str,
                            colors=None, rng=None) -> bool:
    """Check one instance of the edge-removal lemma on this graph.

    case 'disc_loop': add a disc-bounding loop at every vertex in turn;
    case 'parallel_edge': double every straight edge; case 'homotopic_loop':
    double every loop.  Returns True when every decorated graph evaluates to
    the same value as the original.  Raises if the case pattern cannot be
    formed on this graph.
    """
    import random as _random
    rng_local = rng or _random.Random(0)
    if colors is None:
        colors = [tuple(Fraction(rng_local.randint(-5, 5), rng_local.randint(1, 5))
                        for _ in range(alg.dim)) for _ in range(graph.n_vertices)]
    base = evaluate_graph(alg, graph, colors)
    variants = []
    if case == "disc_loop":
        variants = [add_planar_loop(graph, v) for v in range(graph.n_vertices)]
    elif case == "parallel_edge":
        variants = [double_edge(graph, e) for e in graph.pairing
                    if not graph.is_loop(e)]
    elif case == "homotopic_loop":
        variants = [double_edge(graph, e) for e in graph.pairing
                    if graph.is_loop(e)]
    else:
        raise ValueError(f"unknown case {case!r}")
    if not variants:
        raise ValueError(f"graph has no instance of case {case!r}")
    return all(evaluate_graph(alg, v, colors) == base for v in variants)
