"""Euler-characteristic (EC) heuristic for the conjunction probability.

The heuristic approximates P(C_u non-empty) by the expected Euler
characteristic of the conjunction set, (1, 0, ..., 0) R^n mu~(S), where R is
an upper-triangular Toeplitz matrix of scaled EC densities and
mu~_j = mu_j(S) b_j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import theorem1_coefficient
from .exceptions import DomainError, SizeError
from .geometry import MAX_ND, DomainSpec
from .special import gaussian_tail, hermite

_LOG_GAMMA_HALF = math.lgamma(0.5)
_LOG_2PI = math.log(2.0 * math.pi)


def b_constants(d: int) -> np.ndarray:
    """b_i = Gamma((i+1)/2) / Gamma(1/2) for i = 0..d."""
    if d < 0:
        raise DomainError(f"d must be >= 0, got {d}")
    return np.array([math.exp(math.lgamma(0.5 * (i + 1)) - _LOG_GAMMA_HALF) for i in range(d + 1)])


@dataclass(frozen=True)
class EcDensities:
    u: float
    rho: np.ndarray


def ec_densities(d: int, u: float) -> EcDensities:
    """rho_0 = P(N >= u); rho_i = (2 pi)^(-(i+1)/2) He_{i-1}(u) exp(-u^2/2) for i >= 1."""
    if d < 0:
        raise DomainError(f"d must be >= 0, got {d}")
    e = math.exp(-0.5 * u * u)
    rho = [gaussian_tail(u)]
    for i in range(1, d + 1):
        rho.append((2.0 * math.pi) ** (-0.5 * (i + 1)) * hermite(i - 1, u) * e)
    return EcDensities(float(u), np.array(rho))


def _toeplitz_upper(row: np.ndarray) -> np.ndarray:
    m = row.size
    out = np.zeros((m, m))
    for i in range(m):
        out[i, i:] = row[: m - i]
    return out


@dataclass(frozen=True)
class RMatrix:
    """Upper-triangular Toeplitz matrix with (i, j) entry rho_{j-i} / b_{j-i}."""

    d: int
    u: float
    first_row: np.ndarray

    @classmethod
    def build(cls, d: int, u: float) -> "RMatrix":
        rho = ec_densities(d, u).rho
        return cls(d, float(u), rho / b_constants(d))

    @property
    def entries(self) -> np.ndarray:
        return _toeplitz_upper(self.first_row)

    def power_first_row(self, n: int) -> np.ndarray:
        """First row of R^n, by n - 1 successive right-multiplications by R.

        A product of upper-triangular Toeplitz matrices is again one, with
        first row c_k = sum_{l <= k} p_l a_{k-l}; summing l in ascending order
        reproduces a naive matrix product entry by entry.
        """
        if n < 1:
            raise DomainError(f"power must be >= 1, got {n}")
        a = [float(x) for x in self.first_row]
        p = list(a)
        for _ in range(n - 1):
            p = [_conv_entry(p, a, k) for k in range(len(a))]
        return np.array(p)

    def power(self, n: int) -> np.ndarray:
        return _toeplitz_upper(self.power_first_row(n))


def _conv_entry(p, a, k):
    s = p[0] * a[k]
    for l in range(1, k + 1):
        s = s + p[l] * a[k - l]
    return s


def ec_prediction(n: int, d: int, u: float, domain: DomainSpec) -> float:
    """EC approximation (1, 0, ..., 0) R^n (mu_0 b_0, ..., mu_d b_d)^T."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    mu = np.asarray(domain.minkowski, dtype=float)
    if mu.size != d + 1:
        raise DomainError(f"domain has {mu.size} Minkowski functionals, expected {d + 1}")
    row = RMatrix.build(d, u).power_first_row(n)
    scaled = mu * b_constants(d)
    total = row[0] * scaled[0]
    for j in range(1, d + 1):
        total = total + row[j] * scaled[j]
    return float(total)


def ec_volume_term(n: int, d: int, u: float, volume: float) -> float:
    """The lambda_d(S) part of the EC prediction at finite u."""
    row = RMatrix.build(d, u).power_first_row(n)
    return float(volume * b_constants(d)[d] * row[d])


def weak_compositions(n: int, d: int):
    """Gap vectors (h_1, h_2 - h_1, ..., d - h_{n-1}) over 0 <= h_1 <= ... <= h_{n-1} <= d."""
    h = [0] * max(n - 1, 0)

    def rec(pos: int, lo: int):
        if pos == n - 1:
            cuts = [0] + h + [d]
            yield tuple(cuts[i + 1] - cuts[i] for i in range(n))
            return
        for v in range(lo, d + 1):
            h[pos] = v
            yield from rec(pos + 1, v)

    yield from rec(0, 0)


def ec_volume_term_coefficient(n: int, d: int) -> float:
    """Coefficient of u^(d-n) phi(u)^n lambda_d(S) in the EC prediction.

    (2 pi)^(-d/2) sum Gamma(1/2)^(n-1) Gamma((d+1)/2) / prod_gaps Gamma((gap+1)/2).
    """
    if n < 1 or d < 0:
        raise DomainError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    head = (n - 1) * _LOG_GAMMA_HALF + math.lgamma(0.5 * (d + 1)) - 0.5 * d * _LOG_2PI
    total = 0.0
    for gaps in weak_compositions(n, d):
        total += math.exp(head - sum(math.lgamma(0.5 * (g + 1)) for g in gaps))
    return total


def identity_check(n: int, d: int) -> float:
    """Relative gap between the asymptotic constant and the EC volume-term constant."""
    if n * d > MAX_ND:
        raise SizeError(f"n*d = {n * d} exceeds the supported limit {MAX_ND}")
    exact = theorem1_coefficient(n, d)
    return abs(exact - ec_volume_term_coefficient(n, d)) / exact
