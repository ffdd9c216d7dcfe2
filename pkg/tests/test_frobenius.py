from dataclasses import replace
from fractions import Fraction
from itertools import permutations, product
import random

import pytest

from celltqft.frobenius import (
    CommutativityError,
    cobordism_tensor,
    comultiply,
    direct_sum,
    dumps,
    euler_element,
    eta_matrices,
    loads,
    omega,
    pairing_eta,
    sew,
    surface_invariant,
    tensor_product,
    validate,
)
from celltqft.groups import cyclic_group, symmetric_group_3
from celltqft.zoo import (
    center_of_group_algebra,
    group_algebra,
    matrix_algebra,
    semisimple,
)

F = Fraction


def rand_vec(alg, rng):
    return tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(alg.dim))


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_semisimple2():
    rep = validate(semisimple(2))
    assert rep.ok
    assert rep.unit == (1, 1)


def test_validate_matrix_algebra_noncommutative():
    rep = validate(matrix_algebra(2))
    assert rep.associative and rep.unit is not None and rep.nondegenerate
    assert rep.commutative is None  # not asserted, not checked
    assert rep.ok


def test_validate_degenerate_counit():
    # forcing eps = (1, 0) on K^2 gives eta = diag(1, 0), which is singular
    bad = replace(semisimple(2), counit=(F(1), F(0)))
    rep = validate(bad)
    assert rep.associative and rep.unit == (1, 1)
    assert not rep.nondegenerate and not rep.ok


def test_validate_wrong_commutativity_flag():
    flagged = replace(matrix_algebra(2), commutative=True)
    rep = validate(flagged)
    assert rep.commutative is False
    assert not rep.ok


# ---------------------------------------------------------------------------
# multiplication / pairing / comultiplication
# ---------------------------------------------------------------------------

def test_multiply_idempotents():
    a = semisimple(2)
    e1, e2 = a.basis_vector(0), a.basis_vector(1)
    assert a.multiply(e1, e2) == (0, 0)
    assert a.multiply(e1, e1) == e1


def test_multiply_group_algebra_z2():
    a = group_algebra(cyclic_group(2))
    g = a.basis_vector(1)
    assert a.multiply(g, g) == a.basis_vector(0)


def test_eta_semisimple_is_identity():
    a = semisimple(2)
    eta, eta_inv = eta_matrices(a)
    assert eta == ((1, 0), (0, 1)) == eta_inv


def test_eta_center_z2_identity():
    a = center_of_group_algebra(cyclic_group(2))
    eta, _ = eta_matrices(a)
    assert eta == ((1, 0), (0, 1))


@pytest.mark.parametrize("alg", [semisimple(3), group_algebra(cyclic_group(3)),
                                 matrix_algebra(2)])
def test_eta_unit_slot_gives_counit(alg):
    rng = random.Random(1)
    u = rand_vec(alg, rng)
    assert pairing_eta(alg, alg.unit, u) == alg.eps(u)
    assert pairing_eta(alg, u, alg.unit) == alg.eps(u)


def test_frobenius_associativity_all_triples():
    for alg in (semisimple(3), center_of_group_algebra(symmetric_group_3()),
                matrix_algebra(2)):
        for i, j, k in product(range(alg.dim), repeat=3):
            ei, ej, ek = map(alg.basis_vector, (i, j, k))
            assert pairing_eta(alg, alg.multiply(ei, ej), ek) == \
                pairing_eta(alg, ei, alg.multiply(ej, ek))


def test_comultiply_semisimple():
    a = semisimple(2)
    d = comultiply(a, a.basis_vector(0))
    assert d == ((1, 0), (0, 0))  # delta(e1) = e1 (x) e1


def test_comultiply_unit_is_eta_inverse():
    for alg in (semisimple(3), center_of_group_algebra(symmetric_group_3()),
                matrix_algebra(2)):
        _, eta_inv = eta_matrices(alg)
        assert comultiply(alg, alg.unit) == eta_inv


def test_comultiply_center_z2():
    a = center_of_group_algebra(cyclic_group(2))
    assert comultiply(a, a.unit) == ((1, 0), (0, 1))  # 1x1 + gxg


def test_coassociativity_and_m_delta_diagram():
    # (1 (x) m)(delta (x) 1) = delta o m = (m (x) 1)(1 (x) delta), entrywise
    for alg in (semisimple(2), center_of_group_algebra(symmetric_group_3()),
                matrix_algebra(2)):
        r = alg.dim
        for i, j in product(range(r), repeat=2):
            u, v = alg.basis_vector(i), alg.basis_vector(j)
            mid = comultiply(alg, alg.multiply(u, v))
            left = [[0 * F(1)] * r for _ in range(r)]
            du = comultiply(alg, u)
            for a in range(r):
                for b in range(r):
                    if du[a][b] == 0:
                        continue
                    w = alg.multiply(alg.basis_vector(b), v)
                    for c in range(r):
                        left[a][c] += du[a][b] * w[c]
            right = [[0 * F(1)] * r for _ in range(r)]
            dv = comultiply(alg, v)
            for a in range(r):
                for b in range(r):
                    if dv[a][b] == 0:
                        continue
                    w = alg.multiply(u, alg.basis_vector(a))
                    for c in range(r):
                        right[c][b] += dv[a][b] * w[c]
            assert tuple(map(tuple, left)) == mid == tuple(map(tuple, right))


def test_prod_equals_coprod_contraction():
    # (lambda(u) (x) 1) delta(v) = u v
    rng = random.Random(7)
    for alg in (semisimple(3), center_of_group_algebra(symmetric_group_3())):
        u, v = rand_vec(alg, rng), rand_vec(alg, rng)
        dv = comultiply(alg, v)
        out = [sum((pairing_eta(alg, u, alg.basis_vector(a)) * dv[a][b]
                    for a in range(alg.dim)), F(0)) for b in range(alg.dim)]
        assert tuple(out) == alg.multiply(u, v)


# ---------------------------------------------------------------------------
# Euler element, omega, surface invariant
# ---------------------------------------------------------------------------

def test_euler_semisimple_is_unit():
    for n in (1, 2, 3, 4):
        assert euler_element(semisimple(n)) == semisimple(n).unit


def test_euler_center_z2():
    a = center_of_group_algebra(cyclic_group(2))
    assert euler_element(a) == (2, 0)


def test_euler_matrix_algebra():
    a = matrix_algebra(2)
    two_id = tuple(2 * c for c in a.unit)
    assert euler_element(a) == two_id


def test_omega_examples():
    a = semisimple(2)
    e1, e2 = a.basis_vector(0), a.basis_vector(1)
    assert omega(a, 0, [e1, e2, e1]) == 0
    assert omega(a, 0, [a.unit]) == a.eps(a.unit)
    z2 = center_of_group_algebra(cyclic_group(2))
    assert omega(z2, 1, [z2.unit]) == 2


def test_omega_refuses_noncommutative():
    a = matrix_algebra(2)
    with pytest.raises(CommutativityError):
        omega(a, 0, [a.unit])


def test_omega_symmetric_products():
    # eps(e_{i1}...e_{in}) invariant under permutations of the factors
    alg = center_of_group_algebra(symmetric_group_3())
    idx = (0, 1, 2, 1)
    vals = {omega(alg, 0, [alg.basis_vector(i) for i in p])
            for p in permutations(idx)}
    assert len(vals) == 1


def test_omega_unit_slot_dropped():
    rng = random.Random(3)
    alg = center_of_group_algebra(symmetric_group_3())
    vs = [rand_vec(alg, rng) for _ in range(2)]
    for g in (0, 1, 2):
        assert omega(alg, g, vs + [alg.unit]) == omega(alg, g, vs)


def test_omega_genus_reduction_and_splitting():
    # genus reduction: w_{g,n}(v) = sum_ab w_{g-1,n+2}(v,e_a,e_b) eta^{ab}
    rng = random.Random(5)
    alg = semisimple(3)
    _, eta_inv = eta_matrices(alg)
    vs = [rand_vec(alg, rng) for _ in range(2)]
    for g in (1, 2):
        lhs = omega(alg, g, vs)
        rhs = sum((eta_inv[a][b] *
                   omega(alg, g - 1, vs + [alg.basis_vector(a), alg.basis_vector(b)])
                   for a in range(alg.dim) for b in range(alg.dim)), F(0))
        assert lhs == rhs
    # splitting: w_{g1+g2,|I|+|J|}(vI,vJ) = sum eta^{ab} w(vI,ea) w(vJ,eb)
    vs = [rand_vec(alg, rng) for _ in range(3)]
    for g1, g2 in ((0, 0), (1, 0), (1, 1)):
        for cut in (1, 2):
            vi, vj = vs[:cut], vs[cut:]
            lhs = omega(alg, g1 + g2, vs)
            rhs = sum((eta_inv[a][b] *
                       omega(alg, g1, vi + [alg.basis_vector(a)]) *
                       omega(alg, g2, vj + [alg.basis_vector(b)])
                       for a in range(alg.dim) for b in range(alg.dim)), F(0))
            assert lhs == rhs


def test_surface_invariant_semisimple_and_centers():
    for g in range(4):
        assert surface_invariant(semisimple(3), g) == 3
    z2 = center_of_group_algebra(cyclic_group(2))
    for g in range(4):
        assert surface_invariant(z2, g) == 2 ** g
    s3 = center_of_group_algebra(symmetric_group_3())
    assert surface_invariant(s3, 1) == 3


# ---------------------------------------------------------------------------
# cobordism tensors and sewing
# ---------------------------------------------------------------------------

def apply_and_pair(alg, tensor, ins, outs):
    """Pair the tensor output with vectors through eta."""
    res = tensor.apply(ins)
    total = F(0)
    for key, c in res.items():
        w = c
        for slot, v in zip(key, outs):
            w *= pairing_eta(alg, alg.basis_vector(slot), v)
        total += w
    return total


def test_cobordism_generating_cases():
    rng = random.Random(11)
    alg = center_of_group_algebra(symmetric_group_3())
    u, v = rand_vec(alg, rng), rand_vec(alg, rng)

    t_mult = cobordism_tensor(alg, 0, 2, 1)
    out = t_mult.apply([u, v])
    prod = alg.multiply(u, v)
    assert all(out.get((k,), F(0)) == prod[k] for k in range(alg.dim))

    t_comult = cobordism_tensor(alg, 0, 1, 2)
    assert {k: v2 for k, v2 in t_comult.apply([u]).items()} == \
        {(a, b): c for a, b, c in
         ((a, b, comultiply(alg, u)[a][b]) for a in range(alg.dim)
          for b in range(alg.dim)) if c != 0}

    t_eta = cobordism_tensor(alg, 0, 2, 0)
    assert t_eta.apply([u, v]) == ({(): pairing_eta(alg, u, v)}
                                   if pairing_eta(alg, u, v) != 0 else {})

    t_unit = cobordism_tensor(alg, 0, 0, 1)
    unit_out = t_unit.apply([])
    assert tuple(unit_out.get((k,), F(0)) for k in range(alg.dim)) == alg.unit


def test_cobordism_reproduces_omega():
    rng = random.Random(13)
    alg = semisimple(2)
    for g, m, n in ((0, 1, 1), (1, 2, 1), (0, 2, 2), (2, 1, 0)):
        t = cobordism_tensor(alg, g, m, n)
        ins = [rand_vec(alg, rng) for _ in range(m)]
        outs = [rand_vec(alg, rng) for _ in range(n)]
        assert apply_and_pair(alg, t, ins, outs) == omega(alg, g, ins + outs)


def test_cobordism_symmetry():
    alg = center_of_group_algebra(symmetric_group_3())
    t = cobordism_tensor(alg, 1, 2, 1)
    r = alg.dim
    for i, j, k in product(range(r), repeat=3):
        assert t[(i, j, k)] == t[(j, i, k)]


def test_sew_epsilon_after_multiplication_is_eta():
    alg = semisimple(2)
    t_eps = cobordism_tensor(alg, 0, 1, 0)
    t_mult = cobordism_tensor(alg, 0, 2, 1)
    sewn = sew(t_eps, t_mult, 1)
    t_eta = cobordism_tensor(alg, 0, 2, 0)
    assert sewn.data == t_eta.data and sewn.genus == 0
    assert (sewn.inputs, sewn.outputs) == (2, 0)


def test_sew_matches_cobordism_small_range():
    for alg in (semisimple(2), center_of_group_algebra(symmetric_group_3())):
        cases = []
        for g1, m1, n1 in ((0, 1, 1), (0, 2, 1), (0, 1, 2), (1, 1, 1), (0, 2, 2)):
            for g2, m2, n2 in ((0, 1, 1), (0, 1, 2), (1, 0, 1), (0, 2, 2)):
                for j in (1, 2):
                    if j > m1 or j > n2:
                        continue
                    g = g1 + g2 + j - 1
                    m, n = m2 + m1 - j, n1 + n2 - j
                    if g <= 2 and m <= 2 and n <= 2 and m + n >= 1:
                        cases.append(((g1, m1, n1), (g2, m2, n2), j))
        assert cases
        for (c1, c2, j) in cases:
            t1 = cobordism_tensor(alg, *c1)
            t2 = cobordism_tensor(alg, *c2)
            sewn = sew(t1, t2, j)
            direct = cobordism_tensor(alg, sewn.genus, sewn.inputs, sewn.outputs)
            assert sewn.data == direct.data


def test_sew_genus_accumulation():
    alg = semisimple(2)
    t1 = cobordism_tensor(alg, 0, 2, 1)
    t2 = cobordism_tensor(alg, 0, 1, 2)
    sewn = sew(t1, t2, 2)
    assert sewn.genus == 1 and sewn.inputs == 1 and sewn.outputs == 1
    assert sewn.data == cobordism_tensor(alg, 1, 1, 1).data


# ---------------------------------------------------------------------------
# direct sum / tensor product / serialization
# ---------------------------------------------------------------------------

def test_direct_sum_of_lines_is_semisimple2():
    a = direct_sum(semisimple(1), semisimple(1))
    assert validate(a).ok
    assert a.mult == semisimple(2).mult and a.counit == semisimple(2).counit


def test_tensor_product_validates():
    a = tensor_product(semisimple(2), semisimple(2))
    assert a.dim == 4 and validate(a).ok


def test_euler_of_direct_sum_is_blockwise():
    a, b = semisimple(2), center_of_group_algebra(cyclic_group(3))
    s = direct_sum(a, b)
    assert euler_element(s) == euler_element(a) + euler_element(b)


def test_lambda_of_unit_is_counit():
    for alg in (semisimple(3), center_of_group_algebra(symmetric_group_3())):
        row = tuple(pairing_eta(alg, alg.unit, alg.basis_vector(j))
                    for j in range(alg.dim))
        assert row == alg.counit


def test_json_round_trip():
    for alg in (semisimple(2), matrix_algebra(2),
                center_of_group_algebra(symmetric_group_3())):
        assert loads(dumps(alg)) == alg
