import math

import pytest

from conjprob import (
    AsymptoticCoefficient,
    DomainError,
    InhomogeneousPolynomialError,
    SizeError,
    VolumePolynomial,
    conjunction_probability_asymptotic,
    intersection_volume_polynomial,
    proposition1_coefficient,
    theorem1_coefficient,
)

SQRT_2PI = math.sqrt(2 * math.pi)
GRID = [(n, d) for n in range(1, 7) for d in range(1, 9)]


def two_field_constant(d):
    s = sum(math.comb(d, j) * math.gamma(1 + j / 2) * math.gamma(1 + (d - j) / 2) for j in range(d + 1))
    return s / ((2 * math.pi) ** (d / 2) * math.gamma(1 + d / 2))


def test_proposition1_examples():
    c, k = proposition1_coefficient(intersection_volume_polynomial(2, 1), 2, 1)
    assert c == pytest.approx(2 / SQRT_2PI, rel=1e-12) and k == -1
    for d in (1, 3, 6):
        c, k = proposition1_coefficient(VolumePolynomial(1, d, {(0,): 1.0}), 1, d)
        assert c == pytest.approx((2 * math.pi) ** (-d / 2), rel=1e-12) and k == d - 1
    c, _ = proposition1_coefficient(intersection_volume_polynomial(3, 2), 3, 2)
    assert c == pytest.approx((3 + 1.5 * math.pi) / (2 * math.pi), rel=1e-12)


def test_proposition1_rejects():
    with pytest.raises(InhomogeneousPolynomialError):
        proposition1_coefficient(VolumePolynomial(2, 1, {(1, 0): 1.0, (0, 2): 1.0}), 2, 1)
    with pytest.raises(DomainError):
        proposition1_coefficient(VolumePolynomial(2, 1, {}), 2, 1)
    with pytest.raises(DomainError):
        proposition1_coefficient(VolumePolynomial(2, 1, {(1,): 1.0}), 2, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_theorem1_one_dimensional(n):
    assert theorem1_coefficient(n, 1) == pytest.approx(n / SQRT_2PI, rel=1e-11)


@pytest.mark.parametrize("n", range(1, 9))
def test_theorem1_two_dimensional(n):
    expected = (n + n * (n - 1) * math.pi / 4) / (2 * math.pi)
    assert theorem1_coefficient(n, 2) == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("d", range(1, 13))
def test_theorem1_two_fields(d):
    assert theorem1_coefficient(2, d) == pytest.approx(two_field_constant(d), rel=1e-11)


def test_theorem1_fixed_values():
    assert theorem1_coefficient(2, 1) == pytest.approx(0.7978845608, rel=1e-10)
    assert theorem1_coefficient(2, 2) == pytest.approx(0.568310, rel=1e-6)


@pytest.mark.parametrize("n, d", GRID)
def test_route_equivalence_and_positivity(n, d):
    exact = theorem1_coefficient(n, d)
    c, k = proposition1_coefficient(intersection_volume_polynomial(n, d), n, d)
    assert exact > 0
    assert c == pytest.approx(exact, rel=1e-11)
    assert k == d - n


@pytest.mark.parametrize("d", range(1, 13))
def test_single_field(d):
    assert theorem1_coefficient(1, d) == pytest.approx((2 * math.pi) ** (-d / 2), rel=1e-12)


def test_theorem1_validation():
    with pytest.raises(DomainError):
        theorem1_coefficient(0, 2)
    with pytest.raises(SizeError):
        theorem1_coefficient(9, 8)


def test_probability_examples():
    phi3 = math.exp(-4.5) / SQRT_2PI
    assert conjunction_probability_asymptotic(2, 1, 3.0, 10.0) == pytest.approx(5.223824780930424e-05, rel=1e-10)
    assert conjunction_probability_asymptotic(1, 1, 3.0, 10.0) == pytest.approx(10 * phi3 / SQRT_2PI, rel=1e-12)
    assert conjunction_probability_asymptotic(2, 1, 2.5, 20.0) == pytest.approx(1.9611448338e-3, rel=1e-9)


@pytest.mark.parametrize("n, d", [(1, 1), (2, 2), (3, 3), (2, 5)])
def test_probability_linear_in_volume(n, d):
    p = conjunction_probability_asymptotic(n, d, 3.5, 7.0)
    assert conjunction_probability_asymptotic(n, d, 3.5, 14.0) == pytest.approx(2 * p, rel=1e-13)


def test_probability_validation():
    with pytest.raises(DomainError):
        conjunction_probability_asymptotic(2, 1, 0.0, 1.0)
    with pytest.raises(DomainError):
        conjunction_probability_asymptotic(2, 1, 1.0, -1.0)


def test_coefficient_record():
    coef = AsymptoticCoefficient.for_fields(3, 2)
    assert (coef.power_of_u, coef.phi_power) == (-1, 3)
    assert coef.probability(4.0, 5.0) == pytest.approx(conjunction_probability_asymptotic(3, 2, 4.0, 5.0), rel=1e-14)
