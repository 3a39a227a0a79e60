"""Partial Bell polynomials, composition, the identity suite, and the
Lagrange fixed point."""

import random
from fractions import Fraction

import pytest

from chordlab import fps
from chordlab.bell import (
    bell_partial,
    bell_partial_by_partitions,
    faa_di_bruno,
    lift_coefficient,
    lift_resummation,
    lift_solve,
    nested_convolution,
    nested_convolution_literal,
    verify_bell_identity,
)
from chordlab.fps import FormalPowerSeries
from chordlab.gfseries import (
    connected_pair_series,
    nonempty_indecomposable_series,
    stack_tree_series,
)


def random_values(rng, count):
    return [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(count)]


def test_diagonal_is_power_of_x1():
    assert bell_partial(3, 3, [1]) == 1
    assert bell_partial(5, 5, [Fraction(2, 3)]) == Fraction(32, 243)


def test_three_into_two_blocks():
    # the three partitions {12|3}, {13|2}, {23|1}
    assert bell_partial(3, 2, [1, 1]) == 3


def test_four_into_two_blocks():
    # 4 blocks of type 1+3 and 3 of type 2+2
    assert bell_partial(4, 2, [1, 1, 1]) == 7


def test_degenerate_values():
    assert bell_partial(0, 0, []) == 1
    assert bell_partial(3, 0, [1, 1, 1]) == 0
    assert bell_partial(2, 3, [1, 1]) == 0


def test_insufficient_values_rejected():
    with pytest.raises(ValueError):
        bell_partial(5, 2, [1, 1])


@pytest.mark.parametrize("seed", range(3))
def test_recurrence_matches_partition_oracle(seed):
    rng = random.Random(seed)
    xs = random_values(rng, 8)
    for n in range(9):
        for k in range(n + 1):
            assert bell_partial(n, k, xs) == bell_partial_by_partitions(n, k, xs), (n, k)


def test_faa_di_bruno_identity_series():
    ident = [0, 1]
    assert faa_di_bruno(ident, ident, 1) == 1
    for n in (0, 2, 3, 4):
        assert faa_di_bruno(ident, ident, n) == (1 if n == 1 else 0)


def test_faa_di_bruno_exponential():
    # f = exp series (all EGF coefficients 1), g = x: h_n = 1 for all n
    f = [1] * 9
    g = [0, 1] + [0] * 7
    for n in range(9):
        assert faa_di_bruno(f, g, n) == 1


@pytest.mark.parametrize("seed", range(3))
def test_faa_di_bruno_against_series_composition(seed):
    rng = random.Random(40 + seed)
    order = 8
    f = random_values(rng, order + 1)
    g = [Fraction(0)] + random_values(rng, order)
    ffact = FormalPowerSeries(
        [f[i] / _factorial(i) for i in range(order + 1)]
    )
    gfact = FormalPowerSeries(
        [g[i] / _factorial(i) for i in range(order + 1)]
    )
    composed = ffact.compose(gfact)
    for n in range(order + 1):
        assert faa_di_bruno(f, g, n) == composed[n] * _factorial(n)


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def test_faa_di_bruno_rejects_constant_inner():
    with pytest.raises(ValueError):
        faa_di_bruno([0, 1], [1, 1], 2)


def test_lemma_identities_examples():
    rng = random.Random(99)
    xs = random_values(rng, 6)
    assert verify_bell_identity("lemma1a", 5, 2, xs)
    assert verify_bell_identity("lemma1b", 5, 2, xs)
    assert verify_bell_identity("id2", 4, 1, xs, k2=1)
    assert verify_bell_identity("id1", 6, 3, [1, 1, 1, 1])


@pytest.mark.parametrize("seed", range(5))
def test_identity_suite_exhaustive_small(seed):
    rng = random.Random(7000 + seed)
    xs = random_values(rng, 8)
    while not xs[0]:
        xs = random_values(rng, 8)
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert verify_bell_identity("lemma1a", n, k, xs), (n, k)
            assert verify_bell_identity("lemma1b", n, k, xs), (n, k)
            if n > k:
                assert verify_bell_identity("id1", n, k, xs), (n, k)
            for k2 in range(1, n - k + 1):
                assert verify_bell_identity("id2", n, k, xs, k2=k2), (n, k, k2)
            assert verify_bell_identity("id3", n, k, xs), (n, k)


@pytest.mark.parametrize("seed", range(2))
def test_nested_convolution_matches_literal_loops(seed):
    rng = random.Random(81 + seed)
    xs = random_values(rng, 8)
    for n in range(1, 8):
        for blocks in range(1, n + 1):
            assert nested_convolution(n, blocks, xs) == nested_convolution_literal(
                n, blocks, xs
            ), (n, blocks)


def test_unknown_identity_name():
    with pytest.raises(KeyError):
        verify_bell_identity("id9", 3, 1, [1, 1, 1])


# -- Lagrange fixed point ----------------------------------------------------


def test_lift_constant_g():
    assert lift_solve(fps.one(6), 6) == fps.x(6)


def test_lift_geometric_gives_catalan():
    r = lift_solve(fps.geometric(8), 8)
    assert list(r.coeffs[:6]) == [0, 1, 1, 2, 5, 14]


def test_lift_requires_invertible_g():
    with pytest.raises(ValueError):
        lift_solve(fps.x(4), 4)


@pytest.mark.parametrize("seed", range(3))
def test_lift_coefficient_formula(seed):
    rng = random.Random(300 + seed)
    order = 10
    g = FormalPowerSeries(random_values(rng, order + 1))
    while not g[0]:
        g = FormalPowerSeries(random_values(rng, order + 1))
    f = FormalPowerSeries(random_values(rng, order + 1))
    r = lift_solve(g, order)
    direct = (f - f[0]).compose(r) + f[0]
    for n in range(1, order + 1):
        assert lift_coefficient(f, g, n) == direct[n], n


@pytest.mark.parametrize("seed", range(3))
def test_lift_resummation_formula(seed):
    rng = random.Random(400 + seed)
    order = 9
    g = FormalPowerSeries(random_values(rng, order + 1))
    while not g[0]:
        g = FormalPowerSeries(random_values(rng, order + 1))
    h = FormalPowerSeries(random_values(rng, order + 1))
    resummed = lift_resummation(h, g, order)
    power = fps.one(order)
    for n in range(order + 1):
        if n:
            power = power * g
        assert resummed[n] == (h * power)[n], n


def test_indecomposable_pipeline_through_lift():
    # I0 = x / (1 - x A'(Z)) with Z the fixed point of Z = x A(Z)
    order = 8
    a = connected_pair_series(order + 1)
    z = lift_solve(a, order)
    assert z == stack_tree_series(order)
    aprime = a.derivative().truncate(order - 1).compose(z.truncate(order - 1))
    denom = fps.one(order) - fps.multiply_by_power(aprime, 1)
    i0 = fps.multiply_by_power(fps.reciprocal(denom), 1).truncate(order)
    assert i0 == nonempty_indecomposable_series(order)
