"""Simulation checks: Gaussian field sampling, empirical conjunction
probabilities and the generalized Pickands constant.

The field model is the squared-exponential covariance exp(-|h|^2 / 2): unit
variance, identity gradient covariance and analytic paths. Suprema are taken
over a regular grid, so empirical probabilities are biased slightly low; the
bias shrinks with the grid step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .asymptotics import conjunction_probability_asymptotic
from .ec import ec_prediction
from .exceptions import DomainError, SizeError
from .geometry import DomainSpec
from .montecarlo import EstimateWithCI, binomial_estimate, check_seed, chunk_generator, count_hits, map_chunks

DENSE_LIMIT = 3000
MAX_SIDE = 100.0
JITTER = 1e-10
SPECTRAL_CUTOFF = 8.0
SPECTRAL_MODES = 2048
SPECTRAL_LIMIT = 250_000
_BLOCK = 512
SIM_CHUNK = 1024
PICKANDS_CHUNK = 1 << 16

_STREAM_FIELD = 10
_STREAM_SIM = 11
_STREAM_PICKANDS = 12


@dataclass(frozen=True)
class FieldModel:
    """Centered stationary field on R^d with covariance exp(-|h|^2 / 2)."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"field dimension must be >= 1, got {self.d}")

    @staticmethod
    def covariance(sqdist):
        return np.exp(-0.5 * np.asarray(sqdist))

    @staticmethod
    def spectral_density_1d(omega):
        # the d-dimensional density is the product over axes
        return np.exp(-0.5 * np.asarray(omega) ** 2) / math.sqrt(2.0 * math.pi)


def grid_axes(domain: DomainSpec, step: float) -> tuple[np.ndarray, ...]:
    """Per-axis coordinates 0, step, 2 step, ... <= side of a box domain."""
    if domain.kind == "ball":
        raise DomainError("field simulation supports interval and box domains only")
    if not step > 0:
        raise DomainError(f"grid step must be positive, got {step}")
    axes = []
    for side in domain.sides:
        count = int(math.floor(side / step + 1e-9)) + 1
        axes.append(np.arange(count) * step)
    return tuple(axes)


def lattice_points(axes: Sequence[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _as_lattice(points: np.ndarray):
    axes = tuple(np.unique(points[:, k]) for k in range(points.shape[1]))
    if math.prod(a.size for a in axes) != points.shape[0]:
        return None
    if not np.array_equal(lattice_points(axes), points):
        return None
    return axes


class FieldSampler:
    """Draws realizations of the field at a fixed set of points.

    Up to ``DENSE_LIMIT`` points the covariance matrix (plus ``JITTER`` on
    the diagonal) is Cholesky factorized. Larger point sets must form a
    Cartesian lattice in d <= 2 and use spectral synthesis on a midpoint
    frequency lattice with ``SPECTRAL_MODES`` modes per axis on
    [-SPECTRAL_CUTOFF, SPECTRAL_CUTOFF], up to ``SPECTRAL_LIMIT`` points. Its
    covariance is periodic with period 2 pi M / (2 Omega) ~ 804, far beyond
    the largest admissible lag.
    """

    def __init__(self, model: FieldModel, points):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[1] != model.d or points.shape[0] < 1:
            raise DomainError(f"points must have shape (N, {model.d}), got {points.shape}")
        extent = points.max(axis=0) - points.min(axis=0)
        if np.any(extent > MAX_SIDE):
            raise SizeError(f"grid extent {extent.max():g} exceeds {MAX_SIDE:g}")
        self.model = model
        self.points = points
        self.size = points.shape[0]
        if self.size <= DENSE_LIMIT:
            self.method = "dense"
            self._factor = self._cholesky(points)
        else:
            axes = _as_lattice(points)
            if axes is None or model.d > 2 or self.size > SPECTRAL_LIMIT:
                raise SizeError(
                    f"{self.size} points exceed the dense limit {DENSE_LIMIT}; spectral "
                    f"synthesis needs a Cartesian lattice in dimension <= 2 with at most "
                    f"{SPECTRAL_LIMIT} points"
                )
            self.method = "spectral"
            self._axes = axes
            self._setup_spectral()

    @staticmethod
    def _cholesky(points: np.ndarray) -> np.ndarray:
        sq = np.zeros((points.shape[0], points.shape[0]))
        for k in range(points.shape[1]):
            diff = points[:, k, None] - points[None, :, k]
            sq += diff * diff
        cov = FieldModel.covariance(sq)
        cov[np.diag_indices_from(cov)] += JITTER
        return np.linalg.cholesky(cov)

    def _setup_spectral(self):
        dw = 2.0 * SPECTRAL_CUTOFF / SPECTRAL_MODES
        self._omega = -SPECTRAL_CUTOFF + (np.arange(SPECTRAL_MODES) + 0.5) * dw
        self._amp1 = np.sqrt(FieldModel.spectral_density_1d(self._omega) * dw)
        if self.model.d == 2:
            self._basis = [np.exp(1j * self._omega[:, None] * ax[None, :]) for ax in self._axes]

    def spectral_covariance(self, lags) -> np.ndarray:
        """Covariance of the spectral path at 1-d lags (it is a product over axes)."""
        lags = np.asarray(lags, dtype=np.float64)
        return np.cos(np.multiply.outer(lags, self._omega)) @ (self._amp1 ** 2)

    def covariance_matrix(self) -> np.ndarray:
        """Covariance actually realized by the sampler (dense path only)."""
        if self.method != "dense":
            raise DomainError("covariance_matrix is only available for the dense path")
        return self._factor @ self._factor.T

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Return an array of shape (size, N)."""
        if self.method == "dense":
            z = rng.standard_normal((size, self.size))
            return z @ self._factor.T
        if self.model.d == 1:
            return self._draw_spectral_1d(rng, size)
        out = np.empty((size, self.size))
        for s in range(size):
            out[s] = self._draw_spectral_2d(rng)
        return out

    # X(t) = sum_k a_k (A_k cos(w_k.t) + B_k sin(w_k.t)) = Re sum_k a_k (A_k - i B_k) e^{i w_k.t}

    def _draw_spectral_1d(self, rng: np.random.Generator, size: int) -> np.ndarray:
        shape = (size, SPECTRAL_MODES)
        coef = self._amp1 * (rng.standard_normal(shape) - 1j * rng.standard_normal(shape))
        ax = self._axes[0]
        out = np.empty((size, ax.size))
        for start in range(0, ax.size, _BLOCK):
            block = ax[start:start + _BLOCK]
            out[:, start:start + block.size] = (coef @ np.exp(1j * self._omega[:, None] * block[None, :])).real
        return out

    def _draw_spectral_2d(self, rng: np.random.Generator) -> np.ndarray:
        shape = (SPECTRAL_MODES, SPECTRAL_MODES)
        amp = np.multiply.outer(self._amp1, self._amp1)
        coef = amp * (rng.standard_normal(shape) - 1j * rng.standard_normal(shape))
        e1, e2 = self._basis
        return (e1.T @ coef @ e2).real.ravel()


def sample_field(model: FieldModel, grid, seed: int = 0) -> np.ndarray:
    """One realization of the field at the given points (shape (N, d) or (N,))."""
    seed = check_seed(seed)
    sampler = FieldSampler(model, grid)
    return sampler.draw(chunk_generator(seed, _STREAM_FIELD, 0), 1)[0]


@dataclass(frozen=True)
class SimulationPlan:
    n: int
    domain: DomainSpec
    grid_step: float
    u: float
    replicates: int
    seed: int = 0
    model: FieldModel = field(default=None)

    def __post_init__(self):
        if self.model is None:
            object.__setattr__(self, "model", FieldModel(self.domain.d))
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.domain.kind not in ("interval", "box"):
            raise DomainError("simulation domain must be an interval or a box")
        if self.model.d != self.domain.d:
            raise DomainError("field and domain dimensions differ")
        if not 0 < self.grid_step <= 0.1:
            raise DomainError(f"grid_step must be in (0, 0.1], got {self.grid_step}")
        if self.replicates < 1000:
            raise DomainError(f"replicates must be >= 1000, got {self.replicates}")
        check_seed(self.seed)

    def axes(self) -> tuple[np.ndarray, ...]:
        return grid_axes(self.domain, self.grid_step)


def maxmin_statistics(plan: SimulationPlan, workers: int | None = None) -> np.ndarray:
    """Per-replicate grid value of max_t min_i X_i(t), with all n copies drawn independently."""
    sampler = FieldSampler(plan.model, lattice_points(plan.axes()))

    def work(chunk: int, size: int) -> np.ndarray:
        rng = chunk_generator(plan.seed, _STREAM_SIM, chunk)
        stat = None
        for _ in range(plan.n):
            x = sampler.draw(rng, size)
            stat = x if stat is None else np.minimum(stat, x)
        return stat.max(axis=1)

    return np.concatenate(map_chunks(plan.replicates, work, workers, SIM_CHUNK))


def estimate_conjunction_probability(plan: SimulationPlan, workers: int | None = None) -> EstimateWithCI:
    stats = maxmin_statistics(plan, workers)
    return binomial_estimate(int(np.count_nonzero(stats >= plan.u)), plan.replicates, plan.seed)


def compare_asymptotic(plan: SimulationPlan, u_grid: Sequence[float], workers: int | None = None) -> list[dict]:
    """Empirical vs leading-order asymptotic probability for each threshold.

    All thresholds are evaluated on the same replicates.
    """
    u_grid = [float(u) for u in u_grid]
    if not u_grid:
        return []
    if any(not u > 0 for u in u_grid):
        raise DomainError("thresholds must be positive")
    stats = maxmin_statistics(plan, workers)
    d, volume = plan.domain.d, plan.domain.volume
    rows = []
    for u in u_grid:
        est = binomial_estimate(int(np.count_nonzero(stats >= u)), plan.replicates, plan.seed)
        asym = conjunction_probability_asymptotic(plan.n, d, u, volume)
        rows.append({
            "u": u,
            "empirical": est.mean,
            "std_error": est.std_error,
            "asymptotic": asym,
            "ratio": est.mean / asym,
            "ratio_std_error": est.std_error / asym,
            "ec_prediction": ec_prediction(plan.n, d, u, plan.domain),
            "hits": est.hits,
        })
    return rows


@dataclass(frozen=True)
class PickandsPlan:
    n: int
    a: float = 0.02
    t_max: float = 12.0
    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 0 < self.a <= 0.1:
            raise DomainError(f"a must be in (0, 0.1], got {self.a}")
        # beyond t_max, sqrt2 t xi - t^2 + E < 0 whenever xi <= 6 and E <= 10
        if not self.t_max ** 2 > math.sqrt(2.0) * 6.0 * self.t_max + 10.0:
            raise DomainError(f"t_max={self.t_max} is too small to capture the supremum")
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        check_seed(self.seed)

    @property
    def grid_size(self) -> int:
        return int(math.floor(self.t_max / self.a + 1e-9))


def estimate_pickands(plan: PickandsPlan, workers: int | None = None) -> EstimateWithCI:
    """Estimate (1/a) P(max_{k>=1} Z(a k) <= 0) with Z(t) = min_i(sqrt2 Y_i(t) - t^2 + E_i).

    A centered Gaussian process with Cov(Y(t), Y(s)) = ts on t, s >= 0 is
    Y(t) = t xi with xi standard normal, so each sample needs only n normals
    and n unit exponentials.
    """
    n_grid = plan.grid_size

    def work(chunk: int, size: int) -> int:
        rng = chunk_generator(plan.seed, _STREAM_PICKANDS, chunk)
        xi = rng.standard_normal((size, plan.n))
        expo = rng.standard_exponential((size, plan.n))
        return kernels.pickands_count(xi, expo, plan.a, n_grid)

    hits = count_hits(plan.samples, work, workers, PICKANDS_CHUNK)
    return binomial_estimate(hits, plan.samples, plan.seed, 1.0 / plan.a)


def pickands_claimed_value(n: int) -> float:
    return n / math.sqrt(2.0 * math.pi)
