from itertools import permutations

import pytest

from celltqft.cellgraph import (
    CellGraph,
    automorphism_order,
    canonical_key,
    complexity,
    count_brute,
    eco1,
    eco2,
    enumerate_arrowed,
    faces,
    from_json_dict,
    genus,
    hom_set,
    to_json_dict,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429]


# -- building blocks --------------------------------------------------------

def single_vertex():
    return CellGraph(((),), ())


def planar_loop():
    return CellGraph.build([[0, 1]], [[0, 1]])


def crossing_loops():
    # one vertex, rotation (0 1 2 3), edges {0,2} and {1,3}: the genus-1 map
    return CellGraph.build([[0, 1, 2, 3]], [[0, 2], [1, 3]])


def path2():
    return CellGraph.build([[0], [1]], [[0, 1]])


def path3():
    # vertices 1 - 2 - 3, edges E1 = (0,1), E2 = (2,3)
    return CellGraph.build([[0], [1, 2], [3]], [[0, 1], [2, 3]])


def bigon():
    # two vertices joined by two parallel edges
    return CellGraph.build([[0, 2], [1, 3]], [[0, 1], [2, 3]])


def two_points():
    return CellGraph(((), ()), ())


# -- genus and faces ---------------------------------------------------------

def test_genus_planar_loop():
    g = planar_loop()
    assert faces(g) == 2 and genus(g) == 0


def test_genus_crossing_loops():
    g = crossing_loops()
    assert faces(g) == 1 and genus(g) == 1


def test_genus_path2():
    g = path2()
    assert faces(g) == 1 and genus(g) == 0


def test_genus_single_vertex():
    assert genus(single_vertex()) == 0


def test_genus_requires_connected():
    with pytest.raises(ValueError):
        genus(two_points())


# -- ECO 1 -------------------------------------------------------------------

def test_eco1_edge_to_point():
    g = eco1(path2(), (0, 1))
    assert g.n_vertices == 1 and g.n_edges == 0


def test_eco1_path3_both_edges():
    for edge in [(0, 1), (2, 3)]:
        g = eco1(path3(), edge)
        assert g.n_vertices == 2 and g.n_edges == 1
        assert canonical_key(g) == canonical_key(path2())


def test_eco1_bigon_gives_loop():
    g = eco1(bigon(), (0, 1))
    assert g.n_vertices == 1 and g.n_edges == 1
    assert canonical_key(g) == canonical_key(planar_loop())


def test_eco1_rejects_loops():
    with pytest.raises(ValueError):
        eco1(planar_loop(), (0, 1))


def test_eco1_preserves_genus_drops_vertex():
    g = bigon()
    assert genus(g) == 0
    out = eco1(g, (2, 3))
    assert genus(out) == 0 and out.n_vertices == g.n_vertices - 1


# -- ECO 2 -------------------------------------------------------------------

def test_eco2_planar_loop_separates():
    out = eco2(planar_loop(), (0, 1))
    assert isinstance(out, tuple) and len(out) == 2
    for comp in out:
        assert comp.n_vertices == 1 and comp.n_edges == 0


def test_eco2_crossing_loop_is_handle():
    out = eco2(crossing_loops(), (0, 2))
    assert isinstance(out, CellGraph)
    assert out.n_vertices == 2 and genus(out) == 0  # type (0, 2)


def test_eco2_after_eco1_on_bigon_separates():
    loop = eco1(bigon(), (0, 1))
    out = eco2(loop, loop.pairing[0])
    assert isinstance(out, tuple)


def test_eco2_rejects_straight_edges():
    with pytest.raises(ValueError):
        eco2(path2(), (0, 1))


def test_eco_complexity_decrement():
    cases = [(path3(), (0, 1)), (bigon(), (0, 1)), (crossing_loops(), (0, 2)),
             (planar_loop(), (0, 1))]
    for g, edge in cases:
        before = complexity(g)
        if g.is_loop(edge):
            out = eco2(g, edge)
            after = (complexity(_join(out)) if isinstance(out, tuple)
                     else complexity(out))
        else:
            after = complexity(eco1(g, edge))
        assert after == before - 1


def _join(pair):
    a, b = pair
    return CellGraph(a.rotation + b.rotation, a.pairing + b.pairing)


# -- enumeration --------------------------------------------------------------

def test_enumerate_arrowed_small():
    assert len(enumerate_arrowed(0, 1, (2,))) == 1
    assert len(enumerate_arrowed(1, 1, (4,))) == 1
    assert len(enumerate_arrowed(0, 2, (1, 1))) == 1


def test_count_brute_catalan():
    assert count_brute(0, 1, (4,)) == 2
    assert count_brute(0, 1, (6,)) == 5
    assert count_brute(1, 1, (4,)) == 1
    for m in range(1, 7):
        assert count_brute(0, 1, (2 * m,)) == CATALAN[m]


def test_count_brute_order_independent():
    for mu in [(1, 3), (2, 4), (1, 1, 2)]:
        for g in (0, 1):
            vals = {count_brute(g, len(p), p) for p in set(permutations(mu))}
            assert len(vals) == 1


def test_counts_partition_total_matchings():
    # summing over genus recovers the number of connected matchings
    from celltqft.cellgraph import _matchings, _vertex_blocks
    for mu in [(4,), (6,), (2, 2), (1, 3), (1, 1, 2)]:
        blocks = _vertex_blocks(mu)
        total = 0
        for pairing in _matchings(tuple(range(sum(mu)))):
            g = CellGraph(tuple(blocks), pairing)
            if g.is_connected():
                total += 1
        by_genus = sum(count_brute(g, len(mu), mu) for g in range(4))
        assert total == by_genus


def test_enumeration_guard():
    with pytest.raises(ValueError):
        count_brute(0, 1, (40,))


# -- automorphisms -------------------------------------------------------------

def test_automorphism_orders():
    assert automorphism_order(path2()) == 1
    assert automorphism_order(planar_loop()) == 2
    assert automorphism_order(bigon()) == 2
    assert automorphism_order(path3()) == 1


# -- Hom sets -------------------------------------------------------------------

def test_hom_point_to_point():
    assert len(hom_set(single_vertex(), single_vertex())) == 1


def test_hom_point_to_edge_empty():
    assert hom_set(single_vertex(), path2()) == []


def test_hom_path3_to_path2():
    assert len(hom_set(path3(), path2())) == 2


def test_hom_path3_to_point():
    assert len(hom_set(path3(), single_vertex())) == 1


def test_hom_bigon_to_loop():
    assert len(hom_set(bigon(), planar_loop())) == 2


def test_hom_bigon_to_two_points():
    assert len(hom_set(bigon(), two_points())) == 1


# -- serialization ---------------------------------------------------------------

def test_graph_json_round_trip():
    g = enumerate_arrowed(1, 1, (4,))[0]
    assert from_json_dict(to_json_dict(g)) == g
