"""Backend selection for the Monte Carlo inner loops.

The compiled extension ``conjprob._ckernels`` is used when it imports;
otherwise (or when ``CONJPROB_PURE_PYTHON`` is set to a non-empty value) the
numpy implementation in ``conjprob._fallback`` is used. Both expose

``balls_feasible(centers, radii, tol=1e-9, max_sweeps=500) -> uint8 array``
    centers has shape (batch, n, d); entry b is 1 iff the n closed balls
    B(centers[b, i], radii[i]) share a point.

``pickands_count(xi, expo, a, n_grid) -> int``
    number of rows with max over t = a, ..., n_grid*a of
    min_i (sqrt(2) t xi_i - t^2 + expo_i) <= 0.
"""
from __future__ import annotations

import os

from . import _fallback

if os.environ.get("CONJPROB_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

balls_feasible = _impl.balls_feasible
pickands_count = _impl.pickands_count


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('compiled', 'python' or None = active)."""
    if name is None:
        return _impl
    if name == "python":
        return _fallback
    if name == "compiled":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
