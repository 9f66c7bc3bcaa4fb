"""Brute-force grid quadrature for evidences and posterior moments.

Midpoint rule on every axis. Spherical pairs are gridded in ``cos(theta)``
and ``phi``, which makes every cell carry the same prior mass, so each grid
node simply has weight ``points_per_dim ** -D``. Only for low-dimensional
(D <= 3) checks; the sampler never calls into this module.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import UsageError
from .geometry import TWO_PI, wrap
from .sampler import log_sum_exp
from .space import Circular, ParameterSpace, SphericalPair

MAX_GRID_POINTS = 10 ** 8
MAX_DIMS = 3
CHUNK = 1 << 20


@dataclass(frozen=True)
class QuadratureSpec:
    points_per_dim: int
    space: ParameterSpace

    def __post_init__(self):
        n, d = self.points_per_dim, self.space.ndim
        if n < 8:
            raise UsageError(f"points_per_dim must be >= 8, got {n}")
        if d > MAX_DIMS:
            raise UsageError(f"grid quadrature is limited to D <= {MAX_DIMS}, got D = {d}")
        if n ** d > MAX_GRID_POINTS:
            raise UsageError(f"grid of {n}^{d} points exceeds the {MAX_GRID_POINTS:.0e} guard")


def _axes(spec):
    n = spec.points_per_dim
    mid = (np.arange(n) + 0.5) / n
    axes = [None] * spec.space.ndim
    for k in spec.space.kinds:
        if isinstance(k, SphericalPair):
            axes[k.theta_index] = np.arccos(-1.0 + 2.0 * mid)
            axes[k.phi_index] = TWO_PI * mid
        else:
            axes[k.index] = k.lo + (k.hi - k.lo) * mid
    return axes


def _batch_fn(likelihood):
    batch = getattr(likelihood, "log_l_batch", None)
    if batch is not None:
        return batch
    return lambda x: np.fromiter((likelihood(row) for row in x), dtype=float, count=len(x))


def _chunks(spec):
    axes = _axes(spec)
    shape = tuple(len(a) for a in axes)
    total = int(np.prod(shape))
    for start in range(0, total, CHUNK):
        idx = np.unravel_index(np.arange(start, min(start + CHUNK, total)), shape)
        yield np.column_stack([a[i] for a, i in zip(axes, idx)])


def _grid_lse(spec, fn):
    parts = [log_sum_exp(fn(x)) for x in _chunks(spec)]
    return log_sum_exp(parts)


def grid_log_evidence(spec, likelihood):
    """log of the prior-weighted integral of the likelihood over the grid."""
    fn = _batch_fn(likelihood)
    return _grid_lse(spec, fn) - spec.space.ndim * math.log(spec.points_per_dim)


def grid_posterior_expectation(spec, likelihood, func):
    """Posterior expectation of ``func(coords) -> array`` (vectorised over rows)."""
    fn = _batch_fn(likelihood)
    lse = _grid_lse(spec, fn)
    total = None
    for x in _chunks(spec):
        p = np.exp(fn(x) - lse)
        term = np.tensordot(p, np.asarray(func(x), dtype=float), axes=(0, 0))
        total = term if total is None else total + term
    return total


def grid_posterior_moment(spec, likelihood, which, kind):
    """Posterior mean of coordinate ``which``.

    ``kind="linear_mean"`` applies to linear coordinates and polar angles;
    ``kind="circular_mean"`` to circular coordinates and azimuths, and is the
    atan2 of the expected sine and cosine, mapped back to parameter units.
    """
    space = spec.space
    periodic = None
    for k in space.kinds:
        if isinstance(k, SphericalPair):
            if which == k.theta_index:
                periodic = False
            elif which == k.phi_index:
                periodic, lo, width = True, 0.0, TWO_PI
        elif k.index == which:
            periodic = isinstance(k, Circular)
            lo, width = k.lo, k.hi - k.lo
    if periodic is None:
        raise UsageError(f"dimension {which} is not in the space")
    if kind == "linear_mean":
        if periodic:
            raise UsageError(f"linear_mean requested for periodic dimension {which}")
        return float(grid_posterior_expectation(spec, likelihood, lambda x: x[:, which]))
    if kind == "circular_mean":
        if not periodic:
            raise UsageError(f"circular_mean requested for non-periodic dimension {which}")
        scale = TWO_PI / width
        c, s = grid_posterior_expectation(
            spec, likelihood,
            lambda x: np.column_stack([np.cos(scale * (x[:, which] - lo)),
                                       np.sin(scale * (x[:, which] - lo))]))
        return wrap(lo + math.atan2(s, c) / scale, lo, lo + width)
    raise UsageError(f"unknown moment kind {kind!r}")
