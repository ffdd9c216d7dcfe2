from fractions import Fraction

import pytest

from celltqft.series import Series, TruncationError

F = Fraction


def geom(order):
    # 1/(1-z) = 1 + z + z^2 + ...
    return Series({e: F(1) for e in range(order)}, order)


def test_coeff_beyond_order_raises():
    s = Series({0: F(1)}, 5)
    assert s.coeff(4) == 0
    with pytest.raises(TruncationError):
        s.coeff(5)


def test_mul_order_tracking():
    a = Series({1: F(1)}, 6)       # z + O(z^6)
    b = Series({-2: F(1)}, 3)      # z^-2 + O(z^3)
    p = a * b
    assert p.coeff(-1) == 1
    assert p.order == min(6 - 2, 3 + 1)


def test_inverse_of_one_minus_z():
    s = Series({0: F(1), 1: F(-1)}, 10)
    assert s.inverse().c == geom(10).c


def test_inverse_with_valuation():
    s = Series({2: F(4), 3: F(4)}, 8)          # 4z^2 (1 + z)
    inv = s.inverse()
    assert inv.coeff(-2) == F(1, 4)
    assert inv.coeff(-1) == -F(1, 4)
    assert (s * inv).c == {0: F(1)}


def test_compose_geometric():
    outer = geom(6)                     # 1/(1-w)
    inner = Series({1: F(1), 2: F(1)}, 6)   # z + z^2
    out = outer.compose(inner)
    # 1/(1 - z - z^2) = Fibonacci generating series
    fib = [1, 1, 2, 3, 5, 8]
    for e, c in enumerate(fib[:out.order]):
        assert out.coeff(e) == c


def test_deriv_and_shift():
    s = Series({-1: F(2), 3: F(5)}, 7)
    d = s.deriv()
    assert d.coeff(-2) == -2 and d.coeff(2) == 15
    assert d.order == 6
    assert s.shift(2).coeff(1) == 2


def test_pow_negative():
    s = Series({1: F(1), 2: F(1)}, 8)   # z(1+z)
    p = s.pow(-2)
    assert p.coeff(-2) == 1 and p.coeff(-1) == -2 and p.coeff(0) == 3


def test_residue():
    s = Series({-1: F(7), 0: F(1)}, 4)
    assert s.residue() == 7


def test_truncation_soundness_under_refinement():
    # doubling the order never changes previously reported coefficients
    def build(order):
        a = Series({0: F(1), 1: F(-1)}, order).inverse()
        b = Series({1: F(1), 3: F(1, 2)}, order)
        return (a * b + a.deriv()).pow(2)

    low, high = build(8), build(16)
    for e in range(low.valuation, low.order):
        assert low.coeff(e) == high.coeff(e)
