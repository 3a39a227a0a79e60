"""Kernel arithmetic tests: exactness, ring axioms, calculus, reversion."""

import random
from fractions import Fraction

import pytest

from chordlab import fps
from chordlab.fps import FormalPowerSeries, from_coeffs


def random_series(rng, order, valuation=0):
    coeffs = [Fraction(0)] * valuation + [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        for _ in range(order + 1 - valuation)
    ]
    return FormalPowerSeries(coeffs)


def test_add_cancellation():
    a = from_coeffs([1, 1], order=4)
    b = from_coeffs([1, -1], order=4)
    assert (a + b) == from_coeffs([2], order=4)


def test_add_identity():
    rng = random.Random(7)
    f = random_series(rng, 9)
    assert fps.zero(9) + f == f


def test_mul_x_squared():
    assert fps.x(4) * fps.x(4) == from_coeffs([0, 0, 1], order=4)


def test_mul_double_factorial_square():
    # convolving (1,1,3,15,105,945) with itself by hand
    d = from_coeffs([1, 1, 3, 15, 105, 945])
    assert (d * d).coeffs == tuple(
        Fraction(v) for v in (1, 2, 7, 36, 249, 2190)
    )


def test_derivative_and_integral():
    assert from_coeffs([0, 0, 1]).derivative() == from_coeffs([0, 2])
    assert from_coeffs([0, 2], order=1).integral() == from_coeffs([0, 0, 1])
    rng = random.Random(3)
    f = random_series(rng, 10)
    assert f.integral().derivative() == f


def test_geometric_division():
    n = 10
    q = fps.one(n) / (fps.one(n) - fps.x(n))
    assert q == fps.geometric(n)


def test_division_valuation_cancellation():
    # (x^2 + x^3) / x = x + x^2
    a = from_coeffs([0, 0, 1, 1])
    b = fps.x(3)
    assert a / b == from_coeffs([0, 1, 1])
    with pytest.raises(ZeroDivisionError):
        fps.one(3) / fps.x(3)


def test_compose_identity():
    rng = random.Random(11)
    f = random_series(rng, 8)
    assert f.compose(fps.x(8)) == f


def test_compose_rejects_constant_term():
    with pytest.raises(ValueError):
        fps.x(4).compose(fps.one(4))


def test_exp_log_roundtrip():
    n = 12
    log_geom = fps.geometric(n).log()
    expected = FormalPowerSeries(
        [0] + [Fraction(1, k) for k in range(1, n + 1)]
    )
    assert log_geom == expected
    assert expected.exp() == fps.geometric(n)


def test_exp_log_inverse_pair_on_growing_series():
    # exp(log(.)) is the identity even on rapidly growing coefficients
    d = from_coeffs([1, 1, 3, 15, 105, 945, 10395, 135135, 2027025])
    assert d.log().exp() == d


def test_exp_of_zero_and_alternating():
    assert fps.zero(5).exp() == fps.one(5)
    e = (-fps.x(6)).exp()
    fact = 1
    for k in range(7):
        if k:
            fact *= k
        assert e[k] == Fraction((-1) ** k, fact)


def test_reversion_identity():
    assert fps.x(6).reversion() == fps.x(6)


def test_reversion_catalan():
    # R = x + R^2 fixed point: reversion of x - x^2
    f = from_coeffs([0, 1, -1], order=6)
    g = f.reversion()
    catalan = [0, 1, 1, 2, 5, 14, 42]
    assert list(g.coeffs) == catalan
    # independent fixed-point oracle: iterate R = x + R^2
    r = fps.zero(6)
    for _ in range(8):
        r = fps.x(6) + r * r
    assert g == r


def test_reversion_generic_cubic():
    f = from_coeffs([0, 1, 1, 1], order=6)
    g = f.reversion()
    assert g.coeffs[:4] == (Fraction(0), Fraction(1), Fraction(-1), Fraction(1))
    assert f.compose(g).agrees_with(fps.x(6))
    assert g.compose(f).agrees_with(fps.x(6))


def test_reversion_non_unit_linear_term():
    rng = random.Random(23)
    f = random_series(rng, 8, valuation=1)
    while not f[1]:
        f = random_series(rng, 8, valuation=1)
    g = f.reversion()
    assert f.compose(g).agrees_with(fps.x(8))
    assert g.compose(f).agrees_with(fps.x(8))


@pytest.mark.parametrize("seed", range(5))
def test_ring_axioms(seed):
    rng = random.Random(seed)
    a = random_series(rng, 12)
    b = random_series(rng, 12)
    c = random_series(rng, 12)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("seed", range(5))
def test_product_and_chain_rules(seed):
    rng = random.Random(100 + seed)
    a = random_series(rng, 12)
    b = random_series(rng, 12)
    assert (a * b).derivative() == a.derivative() * b.truncate(11) + a.truncate(11) * b.derivative()
    g = random_series(rng, 12, valuation=1)
    lhs = a.compose(g).derivative()
    rhs = a.derivative().compose(g.truncate(11)) * g.derivative()
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(5))
def test_division_inverts_multiplication(seed):
    rng = random.Random(200 + seed)
    a = random_series(rng, 10)
    b = random_series(rng, 10)
    while not b[0]:
        b = random_series(rng, 10)
    assert (a * b) / b == a


def test_pow_matches_repeated_mul():
    rng = random.Random(5)
    a = random_series(rng, 8)
    assert a**0 == fps.one(8)
    assert a**3 == a * a * a


def test_immutability_and_hash():
    f = fps.one(3)
    with pytest.raises(AttributeError):
        f.coeffs = ()
    assert hash(f) == hash(fps.one(3))
