"""Geometric trial distributions.

Linear parameters get a plain Gaussian step, circular parameters a wrapped
Gaussian, and spherical pairs an isotropic 3-D Gaussian step around the
embedded unit vector followed by radial projection back onto the sphere.
All three are symmetric, so the log proposal ratio is always zero.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from . import _pykernel
from .exceptions import UsageError
from .space import Linear, SphericalPair

KIND_LINEAR = 0
KIND_CIRCULAR = 1
KIND_SPHERE = 2

#: Sphere-pair step widths are fractions of the sphere diameter.
SPHERE_DIAMETER = 2.0

#: Default step width as a fraction of each domain's extent.
DEFAULT_FRACTION = 0.05


@dataclass(frozen=True)
class ProposalScales:
    """Step widths, one per kind descriptor of the space (in ``space.kinds`` order)."""

    sigma: Tuple[float, ...]

    def __post_init__(self):
        sigma = tuple(float(s) for s in self.sigma)
        if not sigma:
            raise UsageError("ProposalScales needs at least one entry")
        for s in sigma:
            if not (math.isfinite(s) and s > 0.0):
                raise UsageError(f"proposal scales must be positive and finite, got {s!r}")
        object.__setattr__(self, "sigma", sigma)


class TrialOutcome(NamedTuple):
    trial: np.ndarray
    log_q_ratio: float


class KernelLayout(NamedTuple):
    """Flat per-descriptor arrays consumed by both kernel backends."""

    kinds: np.ndarray      # int32, KIND_* code
    idx_a: np.ndarray      # int32, dimension (interval) or theta index (sphere)
    idx_b: np.ndarray      # int32, phi index (sphere) or -1
    lo: np.ndarray
    hi: np.ndarray
    sigma: np.ndarray
    n_normals: int
    wrap: int              # 0 turns circular wrapping into clamp-reject (diagnostic only)
    log_prior: float


def suggest_scales(space, fraction=DEFAULT_FRACTION):
    """Step widths equal to ``fraction`` of each descriptor's extent."""
    if not (0.0 < fraction <= 1.0):
        raise UsageError(f"fraction must lie in (0, 1], got {fraction!r}")
    sigma = []
    for k in space.kinds:
        if isinstance(k, SphericalPair):
            sigma.append(fraction * SPHERE_DIAMETER)
        else:
            sigma.append(fraction * (k.hi - k.lo))
    return ProposalScales(tuple(sigma))


def make_layout(space, scales, wrap_circular=True):
    if len(scales.sigma) != len(space.kinds):
        raise UsageError(
            f"expected {len(space.kinds)} proposal scales (one per parameter kind), "
            f"got {len(scales.sigma)}")
    n = len(space.kinds)
    kinds = np.empty(n, dtype=np.int32)
    idx_a = np.empty(n, dtype=np.int32)
    idx_b = np.full(n, -1, dtype=np.int32)
    lo = np.zeros(n)
    hi = np.zeros(n)
    n_normals = 0
    for i, k in enumerate(space.kinds):
        if isinstance(k, SphericalPair):
            kinds[i] = KIND_SPHERE
            idx_a[i], idx_b[i] = k.theta_index, k.phi_index
            n_normals += 3
        else:
            kinds[i] = KIND_LINEAR if isinstance(k, Linear) else KIND_CIRCULAR
            idx_a[i] = k.index
            lo[i], hi[i] = k.lo, k.hi
            n_normals += 1
    return KernelLayout(kinds, idx_a, idx_b, lo, hi, np.array(scales.sigma, dtype=float),
                        n_normals, int(bool(wrap_circular)), float(space.log_prior_const))


def propose(current, space, scales, rng, *, wrap_circular=True):
    """Draw one trial point around ``current``.

    Circular and spherical coordinates of the trial always lie inside the
    domain; linear coordinates may not, and are left for the prior to reject.

    Returns
    -------
    TrialOutcome
        ``trial`` as a float array and ``log_q_ratio`` (always 0.0).
    """
    layout = make_layout(space, scales, wrap_circular)
    normals = rng.standard_normal(layout.n_normals).tolist()
    trial, _ = _pykernel.propose_from_draws(
        [float(c) for c in current], layout_tuple(layout), normals, 0,
        lambda: rng.standard_normal(3).tolist())
    return TrialOutcome(np.array(trial), 0.0)


def layout_tuple(layout):
    """Plain-list view of a layout, as used by the pure-Python kernel."""
    return (layout.kinds.tolist(), layout.idx_a.tolist(), layout.idx_b.tolist(),
            layout.lo.tolist(), layout.hi.tolist(), layout.sigma.tolist(),
            layout.wrap)
