"""Expansion-image closed forms against their known coefficient fractions, chain
rule consistency, and numeric fit behaviour."""

from decimal import Decimal
from fractions import Fraction
from math import lgamma, log, pi

import pytest

from chordlab import fps
from chordlab.asymptotics import (
    ScaledSeries,
    alien_connected,
    alien_connected_alternative,
    alien_two_connected,
    asymptotic_fit,
    chain_rule_check,
    connectivity_probability,
    double_factorial,
    exact_two_connected_count,
    fit_trend,
    leading_probability_estimate,
    model,
    square_image_consistency,
    two_connected_exponent_argument,
)
from chordlab.gfseries import two_connected_sequence_series, two_connected_series


def fracs(values):
    return tuple(Fraction(v) for v in values)


def test_connected_image_known_fractions():
    image = alien_connected(5)
    assert image.exp_offset == Fraction(-1)
    assert image.inv_sqrt_2pi
    assert image.body.coeffs == fracs(
        [1, Fraction(-5, 2), Fraction(-43, 8), Fraction(-579, 16),
         Fraction(-44477, 128), Fraction(-5326191, 1280)]
    )


def test_connected_image_leading_term():
    assert alien_connected(0).body[0] == 1


def test_connected_image_two_closed_forms_agree():
    assert alien_connected(12).body == alien_connected_alternative(12).body


def test_two_connected_image_known_fractions():
    image = alien_two_connected(5)
    assert image.exp_offset == Fraction(-2)
    assert image.body.coeffs == fracs(
        [1, -6, -4, Fraction(-218, 3), -890, Fraction(-196838, 15)]
    )


def test_two_connected_intermediate_rows():
    # x^2/(C2*S) and e^2 exp{-((S+x)^2-1)/(2x)}
    order = 5
    c2 = two_connected_series(order + 2)
    s = two_connected_sequence_series(order + 2)
    front = fps.divide(fps.from_coeffs([0, 0, 1], order=order + 2), c2 * s)
    assert front.coeffs[: order + 1] == fracs([1, -2, -6, -50, -574, -8082])
    argument = two_connected_exponent_argument(order)
    assert argument.coeffs == fracs([2, 4, 14, 104, 1082, 14028])
    exp_part = (-(argument - 2 * fps.one(order))).exp()
    assert exp_part.coeffs == fracs(
        [1, -4, -6, Fraction(-176, 3), Fraction(-2008, 3), Fraction(-46636, 5)]
    )


def test_scaled_series_arithmetic():
    a = ScaledSeries(fps.one(3), Fraction(-1), True)
    b = ScaledSeries(fps.geometric(3), Fraction(1))
    prod = a * b
    assert prod.exp_offset == 0
    assert prod.inv_sqrt_2pi
    with pytest.raises(ValueError):
        a * a
    with pytest.raises(ValueError):
        a + b
    assert (a + a).body == 2 * fps.one(3)


def test_model_scale_matches_double_factorial():
    # alpha^(n+beta) Gamma(n+beta) == sqrt(2*pi) (2n-1)!! for alpha=2, beta=1/2
    m = model("C", 3)
    assert (m.alpha, m.beta) == (2, Fraction(1, 2))
    for n in (1, 5, 20):
        lhs = (n + 0.5) * log(2) + lgamma(n + 0.5)
        rhs = 0.5 * log(2 * pi) + log(double_factorial(n))
        assert abs(lhs - rhs) < 1e-9


def test_chain_rule_exact():
    assert chain_rule_check(10)
    assert not chain_rule_check(10, drop_composition_term=True)


def test_square_image_consistency():
    assert square_image_consistency(10)


def test_fit_connected_tracks_first_coefficient():
    report = asymptotic_fit("C", 30, 1)
    # partial/exact should sit within O(1/n^2) of e^(-1)(1 - 5/(4*30))
    prob = connectivity_probability("C", 30)
    estimate = leading_probability_estimate("C", 30)
    assert abs(prob / estimate - 1) < Decimal("0.003")
    assert report.tracking_ratio > 0


def test_fit_two_connected_tracks_first_coefficient():
    prob = connectivity_probability("C2", 30)
    estimate = leading_probability_estimate("C2", 30)
    assert abs(prob / estimate - 1) < Decimal("0.004")


def test_fit_spot_check_n40_R4():
    from chordlab.asymptotics import TOLERANCES

    report = asymptotic_fit("C", 40, 4)
    assert abs(report.tracking_ratio - 1) < Decimal(str(TOLERANCES["spot_n40_R4_rel"]))


@pytest.mark.parametrize("series", ["C", "C2"])
@pytest.mark.parametrize("terms", [1, 2, 3])
def test_fit_trend_converges(series, terms):
    reports = fit_trend(series, [20, 30, 40, 60], terms)
    deviations = [abs(r.tracking_ratio - 1) for r in reports]
    assert all(d2 < d1 for d1, d2 in zip(deviations, deviations[1:])), deviations


def test_fit_preconditions():
    with pytest.raises(ValueError):
        asymptotic_fit("C", 5, 4)
    with pytest.raises(KeyError):
        asymptotic_fit("D", 20, 1)


def test_exact_two_connected_count_is_integer():
    assert exact_two_connected_count(8) == 161935
