"""Geometric parameter spaces with uniform priors.

A :class:`ParameterSpace` is an ordered list of kind descriptors. Interval
kinds (:class:`Linear`, :class:`Circular`) occupy one dimension each; a
:class:`SphericalPair` occupies the two dimensions named by its indices.
Interval kinds without an explicit ``index`` are assigned to the free
dimensions in ascending order.

Points are plain 1-D float arrays of length ``D``.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .exceptions import UsageError
from .geometry import TWO_PI

LOG_4PI = math.log(4.0 * math.pi)


@dataclass(frozen=True)
class Linear:
    """Closed interval ``[lo, hi]``; proposals may leave it and are then rejected."""

    lo: float
    hi: float
    index: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise UsageError(f"Linear needs finite lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Circular:
    """Periodic half-open interval ``[lo, hi)``."""

    lo: float
    hi: float
    index: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise UsageError(f"Circular needs finite lo < hi, got [{self.lo}, {self.hi})")


@dataclass(frozen=True)
class SphericalPair:
    """Polar angle theta in [0, pi] and azimuth phi in [0, 2pi), uniform on S^2."""

    theta_index: int
    phi_index: int

    def __post_init__(self):
        if self.theta_index == self.phi_index:
            raise UsageError("SphericalPair indices must be distinct")


ParameterKind = Union[Linear, Circular, SphericalPair]


class ParameterSpace:
    """Ordered collection of parameter kinds covering dimensions ``0..D-1``.

    Parameters
    ----------
    kinds : sequence of Linear, Circular or SphericalPair
    names : sequence of str, optional
        One name per dimension, used as CSV column headers.
    """

    def __init__(self, kinds: Sequence[ParameterKind], names: Optional[Sequence[str]] = None):
        kinds = tuple(kinds)
        if not kinds:
            raise UsageError("a parameter space needs at least one kind")
        claimed = []
        for k in kinds:
            if isinstance(k, SphericalPair):
                claimed += [k.theta_index, k.phi_index]
            elif isinstance(k, (Linear, Circular)):
                if k.index is not None:
                    claimed.append(k.index)
            else:
                raise UsageError(f"unknown parameter kind {k!r}")
        n_dims = sum(2 if isinstance(k, SphericalPair) else 1 for k in kinds)
        if len(set(claimed)) != len(claimed):
            raise UsageError("a dimension index is claimed by more than one kind")
        if any(not 0 <= i < n_dims for i in claimed):
            raise UsageError(f"dimension index out of range 0..{n_dims - 1}")
        free = iter(sorted(set(range(n_dims)) - set(claimed)))
        resolved = []
        for k in kinds:
            if isinstance(k, (Linear, Circular)) and k.index is None:
                k = type(k)(k.lo, k.hi, next(free))
            resolved.append(k)
        self.kinds = tuple(resolved)
        self.ndim = n_dims
        if names is None:
            names = [f"x{i}" for i in range(n_dims)]
        names = tuple(str(n) for n in names)
        if len(names) != n_dims:
            raise UsageError(f"expected {n_dims} names, got {len(names)}")
        self.names = names

        lo = np.empty(n_dims)
        hi = np.empty(n_dims)
        closed = np.zeros(n_dims, dtype=bool)
        log_prior = 0.0
        for k in self.kinds:
            if isinstance(k, SphericalPair):
                lo[k.theta_index], hi[k.theta_index] = 0.0, math.pi
                closed[k.theta_index] = True
                lo[k.phi_index], hi[k.phi_index] = 0.0, TWO_PI
                log_prior -= LOG_4PI
            else:
                lo[k.index], hi[k.index] = k.lo, k.hi
                closed[k.index] = isinstance(k, Linear)
                log_prior -= math.log(k.hi - k.lo)
        self._lo, self._hi, self._closed = lo, hi, closed
        self.log_prior_const = log_prior

    # convenience constructors -------------------------------------------

    @classmethod
    def circle(cls, lo=0.0, hi=TWO_PI, name="theta"):
        return cls([Circular(lo, hi)], [name])

    @classmethod
    def torus(cls, n=2, lo=0.0, hi=TWO_PI):
        return cls([Circular(lo, hi) for _ in range(n)], [f"theta{i + 1}" for i in range(n)])

    @classmethod
    def sphere(cls):
        return cls([SphericalPair(0, 1)], ["theta", "phi"])

    @classmethod
    def box(cls, ndim, lo=0.0, hi=1.0):
        return cls([Linear(lo, hi) for _ in range(ndim)], [f"x{i}" for i in range(ndim)])

    @property
    def bounds(self):
        """``(lo, hi)`` arrays of per-dimension domain bounds."""
        return self._lo.copy(), self._hi.copy()

    @property
    def is_periodic(self):
        """True when every kind is Circular or SphericalPair (no rejection at edges)."""
        return not any(isinstance(k, Linear) for k in self.kinds)

    def __eq__(self, other):
        return (isinstance(other, ParameterSpace) and self.kinds == other.kinds
                and self.names == other.names)

    def __hash__(self):
        return hash((self.kinds, self.names))

    def __repr__(self):
        return f"ParameterSpace({list(self.kinds)!r}, names={list(self.names)!r})"


def domain_contains(space, coords):
    """Whether ``coords`` lies in the domain of ``space``.

    Accepts a single point of shape ``(D,)`` (returns bool) or a batch of
    shape ``(N, D)`` (returns a boolean array).
    """
    x = np.asarray(coords, dtype=float)
    if x.shape[-1:] != (space.ndim,) or x.ndim > 2:
        raise UsageError(f"expected coordinates of length {space.ndim}, got shape {x.shape}")
    lo, hi, closed = space._lo, space._hi, space._closed
    upper = np.where(closed, x <= hi, x < hi)
    inside = np.all((x >= lo) & upper, axis=-1)
    return bool(inside) if x.ndim == 1 else inside


def log_prior_density(space, p):
    """Log prior density of ``p``; ``-inf`` outside the domain.

    Spherical pairs are measured against the surface area element, so each
    contributes ``-log(4 pi)`` irrespective of theta.
    """
    if not domain_contains(space, p):
        return -math.inf
    return space.log_prior_const


def sample_prior(space, rng, size=None):
    """Draw from the uniform prior of ``space``.

    Returns shape ``(D,)`` when ``size`` is None, otherwise ``(size, D)``.
    Spherical pairs are drawn with cos(theta) uniform on [-1, 1].
    """
    n = 1 if size is None else int(size)
    out = np.empty((n, space.ndim))
    for k in space.kinds:
        if isinstance(k, SphericalPair):
            cos_t = rng.uniform(-1.0, 1.0, n)
            out[:, k.theta_index] = np.arccos(np.clip(cos_t, -1.0, 1.0))
            phi = rng.random(n) * TWO_PI
            out[:, k.phi_index] = np.where(phi < TWO_PI, phi, 0.0)
        else:
            v = k.lo + (k.hi - k.lo) * rng.random(n)
            if isinstance(k, Circular):
                v = np.where(v < k.hi, v, k.lo)
            else:
                v = np.minimum(v, k.hi)
            out[:, k.index] = v
    return out[0] if size is None else out
