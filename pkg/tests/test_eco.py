import random
from fractions import Fraction
from itertools import permutations

import pytest

from celltqft.cellgraph import CellGraph, count_brute, enumerate_arrowed, genus
from celltqft.eco import (
    count,
    counting_formula_residual,
    edge_removal_equivalent,
    evaluate_graph,
    weighted_omega,
)
from celltqft.frobenius import euler_element, omega, pairing_eta
from celltqft.groups import cyclic_group, symmetric_group_3
from celltqft.zoo import center_of_group_algebra, semisimple

F = Fraction
CATALAN = [1, 1, 2, 5, 14, 42, 132, 429]


def rand_vec(alg, rng):
    return tuple(F(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(alg.dim))


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


# -- the counting recursion ---------------------------------------------------

def test_count_catalan_row():
    for m in range(8):
        assert count(0, 1, (2 * m,)) == CATALAN[m]


def test_count_small_cases():
    assert count(1, 1, (4,)) == 1
    assert count(0, 2, (1, 1)) == 1


def test_count_matches_brute_exhaustively():
    # every profile with degree sum <= 10, all ordered permutations, all genera
    for total in range(2, 11, 2):
        for parts in range(1, total + 1):
            for mu in compositions(total, parts):
                for g in range(3):
                    assert count(g, parts, mu) == count_brute(g, parts, mu), \
                        (g, mu)


def test_count_symmetric_in_profile():
    for mu in [(2, 4), (1, 3), (1, 1, 4), (2, 2, 2)]:
        for g in (0, 1):
            vals = {count(g, len(p), p) for p in set(permutations(mu))}
            assert len(vals) == 1


# -- weighted correlators -------------------------------------------------------

def test_weighted_omega_trivial_algebra_reduces_to_count():
    one = semisimple(1)
    for (g, mu) in [(0, (4,)), (1, (4,)), (0, (2, 2))]:
        vs = [one.unit] * len(mu)
        assert weighted_omega(one, g, len(mu), mu, vs) == count(g, len(mu), mu)


def test_weighted_omega_examples():
    ss2 = semisimple(2)
    assert weighted_omega(ss2, 0, 1, (2,), [ss2.basis_vector(0)]) == 1
    z2 = center_of_group_algebra(cyclic_group(2))
    assert weighted_omega(z2, 1, 1, (4,), [z2.unit]) == 2


def test_counting_formula_small_profiles():
    rng = random.Random(23)
    alg = semisimple(3)
    for total in range(2, 9, 2):
        for parts in range(1, min(4, total) + 1):
            for mu in compositions(total, parts):
                for g in range(3):
                    if count(g, parts, mu) == 0 and g > 0:
                        continue
                    vs = [rand_vec(alg, rng) for _ in range(parts)]
                    assert counting_formula_residual(alg, g, parts, mu, vs) == 0


def test_counting_formula_center_s3():
    rng = random.Random(29)
    alg = center_of_group_algebra(symmetric_group_3())
    for (g, mu) in [(0, (4,)), (1, (4,)), (0, (3, 1)), (0, (2, 2)),
                    (1, (2, 2)), (0, (1, 1, 2)), (2, (6,))]:
        vs = [rand_vec(alg, rng) for _ in range(len(mu))]
        assert counting_formula_residual(alg, g, len(mu), mu, vs) == 0


# -- graph evaluation -------------------------------------------------------------

def test_evaluate_single_vertex():
    alg = semisimple(2)
    v = (F(3), F(-2))
    g = CellGraph(((),), ())
    assert evaluate_graph(alg, g, [v]) == alg.eps(v)


def test_evaluate_edge_is_eta():
    alg = center_of_group_algebra(symmetric_group_3())
    rng = random.Random(31)
    u, v = rand_vec(alg, rng), rand_vec(alg, rng)
    g = CellGraph.build([[0], [1]], [[0, 1]])
    assert evaluate_graph(alg, g, [u, v]) == pairing_eta(alg, u, v)


def test_evaluate_crossing_loops_gives_dimension():
    alg = semisimple(2)
    g = CellGraph.build([[0, 1, 2, 3]], [[0, 2], [1, 3]])
    assert evaluate_graph(alg, g, [alg.unit]) == 2


def test_evaluate_equals_tqft_value_all_small_graphs():
    rng = random.Random(37)
    algs = [semisimple(3), center_of_group_algebra(symmetric_group_3())]
    seen = set()
    graphs = []
    for total in range(0, 7, 2):
        for parts in range(1, max(total, 1) + 1):
            if total == 0 and parts > 1:
                continue
            for mu in compositions(total, parts) if total else [(0,)]:
                for g in range(2):
                    for graph in enumerate_arrowed(g, parts, mu):
                        key = (g, parts, graph.rotation, graph.pairing)
                        if key in seen:
                            continue
                        seen.add(key)
                        graphs.append((g, parts, graph.without_arrows()))
    assert len(graphs) > 40
    for alg in algs:
        e = euler_element(alg)
        for g, n, graph in graphs[:60]:
            vs = [rand_vec(alg, rng) for _ in range(n)]
            expect = omega(alg, g, vs)
            assert evaluate_graph(alg, graph, vs) == expect
            for trial in range(2):
                assert evaluate_graph(alg, graph, vs,
                                      rng=random.Random(trial)) == expect
    del e


def test_edge_removal_cases():
    alg = semisimple(3)
    path2 = CellGraph.build([[0], [1]], [[0, 1]])
    loop = CellGraph.build([[0, 1]], [[0, 1]])
    assert edge_removal_equivalent(alg, path2, "disc_loop")
    assert edge_removal_equivalent(alg, path2, "parallel_edge")
    assert edge_removal_equivalent(alg, loop, "homotopic_loop")
    with pytest.raises(ValueError):
        edge_removal_equivalent(alg, path2, "homotopic_loop")
