"""Scalar special functions used throughout the package.

Gamma-heavy products are always assembled from :func:`log_gamma` terms and
exponentiated at the end; see :func:`log_unit_ball_volume` and
:func:`log_flag_coefficient`.
"""
from __future__ import annotations

import math

from .exceptions import DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)
LOG_PI = math.log(math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def hermite(j: int, x: float) -> float:
    """Probabilists' Hermite polynomial He_j(x).

    Uses the recurrence He_{j+1}(x) = x He_j(x) - j He_{j-1}(x), He_0 = 1,
    He_1 = x.
    """
    if j < 0:
        raise DomainError(f"hermite degree must be >= 0, got {j}")
    if j == 0:
        return 1.0
    prev, cur = 1.0, float(x)
    for i in range(1, j):
        prev, cur = cur, x * cur - i * prev
    return cur


def log_unit_ball_volume(k: int) -> float:
    if k < 0:
        raise DomainError(f"ball dimension must be >= 0, got {k}")
    return 0.5 * k * LOG_PI - math.lgamma(1.0 + 0.5 * k)


def unit_ball_volume(k: int) -> float:
    """Volume omega_k = pi^(k/2) / Gamma(1 + k/2) of the unit ball in R^k."""
    return math.exp(log_unit_ball_volume(k))


def gaussian_pdf(u: float) -> float:
    return math.exp(-0.5 * u * u) / SQRT_2PI


def gaussian_tail(u: float) -> float:
    """Standard normal upper tail P(N(0,1) >= u), via erfc (no cancellation)."""
    return 0.5 * math.erfc(u * _INV_SQRT2)


def log_binom(m: int, j: int) -> float:
    return math.lgamma(m + 1.0) - math.lgamma(j + 1.0) - math.lgamma(m - j + 1.0)


def log_flag_coefficient(m: int, j: int) -> float:
    if j < 0 or m < 0 or j > m:
        raise DomainError(f"flag coefficient needs 0 <= j <= m, got m={m}, j={j}")
    return (
        log_unit_ball_volume(m)
        - log_unit_ball_volume(j)
        - log_unit_ball_volume(m - j)
        + log_binom(m, j)
    )


def flag_coefficient(m: int, j: int) -> float:
    """Flag coefficient [m j] = omega_m / (omega_j omega_{m-j}) * C(m, j)."""
    return math.exp(log_flag_coefficient(m, j))
