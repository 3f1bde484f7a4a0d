"""Leading-order asymptotics of the conjunction probability.

For n independent copies of a smooth, unit-variance stationary Gaussian field
with identity gradient covariance on S in R^d,

    P(sup_S min_i X_i >= u) ~ u^(d-n) phi(u)^n lambda_d(S) L(n, d),

as u -> infinity. Only the leading term is computed; the o(1) remainder is not
modelled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError, SizeError
from .geometry import MAX_ND, VolumePolynomial
from .special import log_unit_ball_volume

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class AsymptoticCoefficient:
    n: int
    d: int
    leading_constant: float
    power_of_u: int
    phi_power: int

    @classmethod
    def for_fields(cls, n: int, d: int) -> "AsymptoticCoefficient":
        return cls(n, d, theorem1_coefficient(n, d), d - n, n)

    def probability(self, u: float, volume: float) -> float:
        return conjunction_probability_asymptotic(self.n, self.d, u, volume, self.leading_constant)


def proposition1_coefficient(poly: VolumePolynomial, n: int, d: int) -> tuple[float, int]:
    """Leading constant and u-exponent implied by a homogeneous volume polynomial.

    Returns ``(2^(k/2) / (2 pi)^(nd/2) * sum_m C_m prod_i Gamma(1 + m_i/2), nd - n - k)``
    where k is the common degree of the monomials.
    """
    if not poly.terms:
        raise DomainError("empty volume polynomial")
    for m in poly.terms:
        if len(m) != n:
            raise DomainError(f"multi-index {m} does not have {n} entries")
    k = poly.degree()
    log_pref = 0.5 * k * math.log(2.0) - 0.5 * n * d * LOG_2PI
    total = 0.0
    for m, c in poly.terms.items():
        if not c > 0:
            raise DomainError(f"coefficient for {m} must be positive, got {c}")
        total += math.exp(log_pref + math.log(c) + sum(math.lgamma(1.0 + 0.5 * mi) for mi in m))
    return total, n * d - n - k


def theorem1_coefficient(n: int, d: int) -> float:
    """L(n, d) by direct nested summation over k_n, ..., k_2.

    Each admissible index tuple contributes
    omega_d d! / (omega_s s! prod_i omega_{d-k_i} (d-k_i)!) with
    s = sum_i k_i - (n-2) d, and the total is scaled by (2 pi)^(-d/2).
    """
    if n < 1 or d < 1:
        raise DomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if n * d > MAX_ND:
        raise SizeError(f"n*d = {n * d} exceeds the supported limit {MAX_ND}")
    head = log_unit_ball_volume(d) + math.lgamma(d + 1.0) - 0.5 * d * LOG_2PI
    total = 0.0
    # stack entries: (next index j, sum of k_i for i > j, accumulated log term)
    stack = [(n, 0, 0.0)]
    while stack:
        j, tail, acc = stack.pop()
        if j < 2:
            s = tail - (n - 2) * d
            total += math.exp(head + acc - log_unit_ball_volume(s) - math.lgamma(s + 1.0))
            continue
        for k in range(max(0, (n - j) * d - tail), d + 1):
            g = d - k
            stack.append((j - 1, tail + k, acc - log_unit_ball_volume(g) - math.lgamma(g + 1.0)))
    return total


def conjunction_probability_asymptotic(
    n: int, d: int, u: float, volume: float, coefficient: float | None = None
) -> float:
    """Leading-order value u^(d-n) phi(u)^n volume L(n, d)."""
    if not u > 0:
        raise DomainError(f"threshold must be positive, got {u}")
    if not volume > 0:
        raise DomainError(f"volume must be positive, got {volume}")
    if coefficient is None:
        coefficient = theorem1_coefficient(n, d)
    log_p = (d - n) * math.log(u) - n * (0.5 * u * u + 0.5 * LOG_2PI) + math.log(volume) + math.log(coefficient)
    return math.exp(log_p)

