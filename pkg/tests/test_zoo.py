from fractions import Fraction

import pytest

from celltqft.frobenius import (
    euler_element,
    eta_matrices,
    surface_invariant,
    validate,
)
from celltqft.groups import (
    GroupTable,
    conjugacy_classes,
    cyclic_group,
    dihedral_group,
    from_json_dict,
    hom_count_oracle,
    preset_group,
    symmetric_group_3,
    to_json_dict,
)
from celltqft.zoo import (
    center_of_group_algebra,
    group_algebra,
    matrix_algebra,
    preset_algebra,
    semisimple,
)

F = Fraction


def test_semisimple_one_is_scalar_field():
    a = semisimple(1)
    assert a.dim == 1 and a.counit == (1,)
    assert validate(a).ok


def test_semisimple_eta_and_invariant():
    eta, _ = eta_matrices(semisimple(2))
    assert eta == ((1, 0), (0, 1))
    for g in range(4):
        assert surface_invariant(semisimple(3), g) == 3


def test_semisimple_rejects_zero():
    with pytest.raises(ValueError):
        semisimple(0)


def test_matrix_algebra_small():
    assert matrix_algebra(1).mult == semisimple(1).mult
    a = matrix_algebra(2)
    assert not a.commutative
    eta, _ = eta_matrices(a)
    # eta(E_ij, E_kl) = delta_jk delta_il
    names = [(i, j) for i in range(2) for j in range(2)]
    for p, (i, j) in enumerate(names):
        for q, (k, l) in enumerate(names):
            assert eta[p][q] == (1 if (j == k and i == l) else 0)
    assert euler_element(a) == tuple(2 * c for c in a.unit)


def test_group_table_rejects_bad_table():
    with pytest.raises(ValueError):
        GroupTable(2, ((0, 0), (1, 1)), 0)


def test_group_algebra_z2():
    a = group_algebra(cyclic_group(2))
    assert a.commutative
    eta, _ = eta_matrices(a)
    assert eta == ((1, 0), (0, 1))


def test_group_algebra_s3_noncommutative():
    assert not group_algebra(symmetric_group_3()).commutative


def test_group_algebra_z3_euler():
    a = group_algebra(cyclic_group(3))
    assert euler_element(a) == (3, 0, 0)


def test_center_of_abelian_is_whole_algebra():
    g = cyclic_group(2)
    assert center_of_group_algebra(g).mult == group_algebra(g).mult
    assert center_of_group_algebra(cyclic_group(5)).dim == 5


def test_center_s3():
    a = center_of_group_algebra(symmetric_group_3())
    assert a.dim == 3  # three conjugacy classes
    assert validate(a).ok
    assert surface_invariant(a, 1) == 3


def test_conjugacy_classes_s3():
    cls = conjugacy_classes(symmetric_group_3())
    assert sorted(len(c) for c in cls.classes) == [1, 2, 3]
    assert cls.classes[0] == (symmetric_group_3().identity,)


def test_preset_groups():
    assert preset_group("cyclic(2)").order == 2
    assert preset_group("S3").order == 6
    assert conjugacy_classes(preset_group("S3")).count == 3
    assert preset_group("dihedral(4)").order == 8
    assert conjugacy_classes(preset_group("dihedral(4)")).count == 5


def test_hom_count_oracle_values():
    assert hom_count_oracle(cyclic_group(2), 1) == 2
    assert hom_count_oracle(symmetric_group_3(), 1) == 3
    # genus 2 matches the TQFT value computed from the Euler element
    s3 = center_of_group_algebra(symmetric_group_3())
    assert hom_count_oracle(symmetric_group_3(), 2) == surface_invariant(s3, 2)


def test_mednykh_identity_small_groups():
    for group in (cyclic_group(2), cyclic_group(3), symmetric_group_3()):
        alg = center_of_group_algebra(group)
        for g in (1, 2):
            assert surface_invariant(alg, g) == hom_count_oracle(group, g)


def test_hom_count_guard():
    with pytest.raises(ValueError):
        hom_count_oracle(dihedral_group(8), 3)


def test_preset_algebra_names():
    assert preset_algebra("K^3").dim == 3
    assert preset_algebra("Mat2").dim == 4
    assert preset_algebra("zoo:ZC[S3]").dim == 3
    assert preset_algebra("C[Z/4]").dim == 4
    assert preset_algebra("ZC[D4]").dim == 5
    with pytest.raises(ValueError):
        preset_algebra("nope")


def test_group_json_round_trip():
    g = dihedral_group(3)
    assert from_json_dict(to_json_dict(g)) == g


def test_center_passes_frobenius_invariants():
    for name in ("cyclic(2)", "cyclic(3)", "S3", "dihedral(4)"):
        alg = center_of_group_algebra(preset_group(name))
        rep = validate(alg)
        assert rep.ok and rep.commutative
