"""Ball-intersection volumes and Minkowski functionals of simple domains.

The central object is the volume polynomial: for balls B(t_i, r_i), i = 1..n,
in R^d with t_1 pinned, the Lebesgue measure of the set of (t_2, ..., t_n)
for which the balls share a point is a homogeneous polynomial of degree
(n - 1) d in the radii. :func:`intersection_volume_polynomial` builds it from
the nested Weyl/Crofton summation, :func:`coefficient_symmetric_form` gives
each coefficient in closed product form, and :func:`intersection_volume_mc`
is an independent hit-or-miss oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .exceptions import DomainError, InhomogeneousPolynomialError, SizeError, UnsupportedCaseError
from .montecarlo import EstimateWithCI, binomial_estimate, chunk_generator, check_seed, count_hits
from .special import log_unit_ball_volume, unit_ball_volume

MAX_ND = 64
FEASIBILITY_TOL = 1e-9
MAX_SWEEPS = 500

_STREAM_VOLUME = 1
_STREAM_TUBE = 2


@dataclass(frozen=True)
class BallConfiguration:
    d: int
    radii: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.d!r}")
        if not self.radii:
            raise DomainError("at least one radius is required")
        if any(not (r > 0 and math.isfinite(r)) for r in self.radii):
            raise DomainError(f"radii must be positive and finite, got {self.radii}")

    @property
    def n(self) -> int:
        return len(self.radii)


@dataclass(frozen=True)
class VolumePolynomial:
    """Homogeneous polynomial sum_m C_m r^m over multi-indices m of length n."""

    n: int
    d: int
    terms: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def degree(self) -> int:
        degrees = {sum(m) for m in self.terms}
        if len(degrees) != 1:
            raise InhomogeneousPolynomialError(
                f"polynomial is not homogeneous (monomial degrees {sorted(degrees)})"
            )
        return degrees.pop()

    def evaluate(self, radii: Sequence[float]) -> float:
        if len(radii) != self.n:
            raise DomainError(f"expected {self.n} radii, got {len(radii)}")
        total = 0.0
        for m, c in self.terms.items():
            mono = c
            for r, e in zip(radii, m):
                if e:
                    mono *= r ** e
            total += mono
        return total

    def __len__(self) -> int:
        return len(self.terms)


def _check_nd(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise DomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if n * d > MAX_ND:
        raise SizeError(f"n*d = {n * d} exceeds the supported limit {MAX_ND}")


def nested_indices(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """Yield (k_2, ..., k_n) over the nested ranges k_j in [max(0, (n-j)d - sum_{i>j} k_i), d].

    The outermost loop runs over k_n, the innermost over k_2.
    """
    ks = [0] * (n + 1)

    def rec(j: int, tail: int):
        if j < 2:
            yield tuple(ks[2:])
            return
        lo = max(0, (n - j) * d - tail)
        for k in range(lo, d + 1):
            ks[j] = k
            yield from rec(j - 1, tail + k)

    yield from rec(n, 0)


def _log_nested_coefficient(ks: tuple[int, ...], n: int, d: int) -> float:
    # coefficient of r_1^{m_1} prod r_i^{k_i} in the nested-sum volume formula
    total_k = sum(ks)
    m1 = (n - 1) * d - total_k
    s = total_k - (n - 2) * d
    val = log_unit_ball_volume(d) + log_unit_ball_volume(m1) - log_unit_ball_volume(s)
    val += math.lgamma(d + 1.0) - math.lgamma(s + 1.0)
    for k in ks:
        val += log_unit_ball_volume(k) - log_unit_ball_volume(d - k) - math.lgamma(d - k + 1.0)
    return val


@lru_cache(maxsize=256)
def intersection_volume_polynomial(n: int, d: int) -> VolumePolynomial:
    """Volume polynomial for n balls in R^d, keyed by m = (m_1, k_2, ..., k_n)."""
    _check_nd(n, d)
    if n == 1:
        return VolumePolynomial(1, d, {(0,): 1.0})
    terms: dict[tuple[int, ...], float] = {}
    for ks in nested_indices(n, d):
        m = ((n - 1) * d - sum(ks),) + ks
        terms[m] = terms.get(m, 0.0) + math.exp(_log_nested_coefficient(ks, n, d))
    return VolumePolynomial(n, d, terms)


def coefficient_symmetric_form(m: Sequence[int], d: int) -> float:
    """C_m = omega_d d! prod_i omega_{m_i} / (omega_{d-m_i} (d-m_i)!)."""
    m = tuple(int(x) for x in m)
    n = len(m)
    if n < 1 or d < 1:
        raise DomainError("need a non-empty multi-index and d >= 1")
    if sum(m) != (n - 1) * d or any(x < 0 or x > d for x in m):
        raise DomainError(f"multi-index {m} is not admissible for d={d}")
    val = log_unit_ball_volume(d) + math.lgamma(d + 1.0)
    for x in m:
        val += log_unit_ball_volume(x) - log_unit_ball_volume(d - x) - math.lgamma(d - x + 1.0)
    return math.exp(val)


def intersection_volume_closed(config: BallConfiguration) -> float:
    return intersection_volume_polynomial(config.n, config.d).evaluate(config.radii)


def intersection_volume_special(config: BallConfiguration) -> float:
    """Closed forms for n = 2 (any d), d = 1 (any n) and d = 2 (any n)."""
    n, d, r = config.n, config.d, config.radii
    if n == 1:
        return 1.0
    if n == 2:
        return unit_ball_volume(d) * (r[0] + r[1]) ** d
    if d == 1:
        # 2^{n-1} sum_i prod_{j != i} r_j
        return 2.0 ** (n - 1) * sum(math.prod(r[:i] + r[i + 1:]) for i in range(n))
    if d == 2:
        sq = [x * x for x in r]
        first = sum(math.prod(sq[:i] + sq[i + 1:]) for i in range(n))
        second = 0.0
        for i, j in combinations(range(n), 2):
            rest = [sq[k] for k in range(n) if k != i and k != j]
            second += r[i] * r[j] * math.prod(rest)
        return math.pi ** (n - 1) * (first + 2.0 * second)
    raise UnsupportedCaseError(f"no special closed form for n={n}, d={d}")


def balls_intersect(centers, radii, tol: float = FEASIBILITY_TOL, max_sweeps: int = MAX_SWEEPS) -> bool:
    """Decide whether the closed balls B(centers[i], radii[i]) have a common point.

    Exact for d = 1 and for n = 2. Otherwise cyclic projection onto the
    balls, started at the centroid of the centers, declares the balls
    intersecting once the maximum constraint violation drops to ``tol``.
    The decision is "disjoint" if some pair is already separated, if the
    end-of-sweep iterate stalls (a projection cycle outside the
    intersection) or if ``max_sweeps`` sweeps pass without success.
    """
    c = np.asarray(centers, dtype=np.float64)
    r = np.asarray(radii, dtype=np.float64).ravel()
    if c.ndim == 1:
        c = c[:, None]
    if c.ndim != 2 or c.shape[0] != r.shape[0] or r.shape[0] < 1:
        raise DomainError(f"centers shape {c.shape} does not match {r.shape[0]} radii")
    if np.any(r <= 0):
        raise DomainError("radii must be positive")
    out = kernels.balls_feasible(np.ascontiguousarray(c[None]), np.ascontiguousarray(r), tol, max_sweeps)
    return bool(out[0])


def intersection_volume_mc(
    config: BallConfiguration,
    samples: int,
    seed: int = 0,
    workers: int | None = None,
) -> EstimateWithCI:
    """Hit-or-miss estimate of the intersection volume.

    t_1 is fixed at the origin and each t_i (i >= 2) is uniform on the cube
    [-(r_1 + r_i), r_1 + r_i]^d, outside of which balls 1 and i are disjoint.
    """
    if samples < 10_000:
        raise DomainError(f"samples must be >= 10000, got {samples}")
    seed = check_seed(seed)
    n, d = config.n, config.d
    radii = np.asarray(config.radii)
    half = radii[0] + radii[1:]
    box_volume = float(np.prod((2.0 * half) ** d))

    def work(chunk: int, size: int) -> int:
        rng = chunk_generator(seed, _STREAM_VOLUME, chunk)
        centers = np.zeros((size, n, d))
        if n > 1:
            centers[:, 1:, :] = rng.uniform(-1.0, 1.0, size=(size, n - 1, d)) * half[None, :, None]
        return int(kernels.balls_feasible(centers, radii, FEASIBILITY_TOL, MAX_SWEEPS).sum(dtype=np.int64))

    hits = count_hits(samples, work, workers)
    return binomial_estimate(hits, samples, seed, box_volume)


def ball_minkowski(d: int, r: float) -> np.ndarray:
    """Minkowski functionals mu_j(B(0, r)) = omega_d / omega_{d-j} C(d, j) r^j, j = 0..d."""
    if d < 1 or not r > 0:
        raise DomainError(f"need d >= 1 and r > 0, got d={d}, r={r}")
    return np.array(
        [unit_ball_volume(d) / unit_ball_volume(d - j) * math.comb(d, j) * r ** j for j in range(d + 1)]
    )


def box_minkowski(sides: Sequence[float]) -> np.ndarray:
    """Minkowski functionals of a box: elementary symmetric polynomials of the sides."""
    sides = [float(s) for s in sides]
    if not sides or any(not s > 0 for s in sides):
        raise DomainError(f"box sides must be positive, got {sides}")
    e = np.zeros(len(sides) + 1)
    e[0] = 1.0
    for k, s in enumerate(sides, start=1):
        e[1:k + 1] = e[1:k + 1] + s * e[0:k]
    return e


def weyl_tube_volume(minkowski: Sequence[float], eps: float) -> float:
    """lambda_d(M^{+eps}) = sum_j eps^{d-j} omega_{d-j} mu_j(M) for convex M."""
    d = len(minkowski) - 1
    return float(sum(eps ** (d - j) * unit_ball_volume(d - j) * mu for j, mu in enumerate(minkowski)))


def tube_volume_mc(sides: Sequence[float], eps: float, samples: int, seed: int = 0,
                   workers: int | None = None) -> EstimateWithCI:
    """Hit-or-miss volume of the eps-neighbourhood of the box prod [0, s_i]."""
    sides = np.asarray(sides, dtype=np.float64)
    if sides.ndim != 1 or np.any(sides <= 0) or not eps > 0:
        raise DomainError("need positive sides and eps")
    seed = check_seed(seed)
    lo, hi = -eps, sides + eps
    box_volume = float(np.prod(sides + 2 * eps))

    def work(chunk: int, size: int) -> int:
        rng = chunk_generator(seed, _STREAM_TUBE, chunk)
        x = rng.uniform(lo, hi, size=(size, sides.size))
        gap = np.maximum(np.maximum(-x, x - sides), 0.0)
        return int(np.count_nonzero(np.einsum("ij,ij->i", gap, gap) <= eps * eps))

    hits = count_hits(samples, work, workers)
    return binomial_estimate(hits, samples, seed, box_volume)


@dataclass(frozen=True)
class DomainSpec:
    """Index set S with its Minkowski functionals (mu_0, ..., mu_d)."""

    kind: str
    params: tuple[float, ...]
    minkowski: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in ("interval", "box", "ball"):
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if any(not p > 0 for p in self.params):
            raise DomainError("domain parameters must be positive")

    @classmethod
    def interval(cls, length: float) -> "DomainSpec":
        return cls("interval", (float(length),), tuple(box_minkowski([length])))

    @classmethod
    def box(cls, sides: Sequence[float]) -> "DomainSpec":
        sides = tuple(float(s) for s in sides)
        if len(sides) == 1:
            return cls.interval(sides[0])
        return cls("box", sides, tuple(box_minkowski(sides)))

    @classmethod
    def ball(cls, d: int, radius: float) -> "DomainSpec":
        return cls("ball", (float(radius),), tuple(ball_minkowski(d, radius)))

    @property
    def d(self) -> int:
        return len(self.minkowski) - 1

    @property
    def volume(self) -> float:
        return self.minkowski[-1]

    @property
    def sides(self) -> tuple[float, ...]:
        if self.kind == "ball":
            raise DomainError("a ball has no side lengths")
        return self.params
