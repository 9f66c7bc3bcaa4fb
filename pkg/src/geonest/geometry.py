"""Periodic wrapping and unit-sphere primitives."""

import math
from typing import NamedTuple

from .exceptions import DegenerateInputError, UsageError

TWO_PI = 2.0 * math.pi

#: Below this Euclidean norm a vector cannot be projected onto the sphere.
MIN_PROJECT_NORM = 1e-300

#: Points closer than this to the z axis are poles, where phi is set to 0.
POLE_TOL = 1e-12


class UnitVec3(NamedTuple):
    x: float
    y: float
    z: float


def wrap(value, lo, hi):
    """Map ``value`` onto the half-open interval ``[lo, hi)``.

    Uses a floored modulo so negative inputs land inside the interval.
    In-range values are returned unchanged.
    """
    if not math.isfinite(value):
        raise UsageError(f"cannot wrap non-finite value {value!r}")
    if not lo < hi:
        raise UsageError(f"wrap needs lo < hi, got [{lo}, {hi})")
    if lo <= value < hi:
        return value
    width = hi - lo
    r = math.fmod(value - lo, width)
    if r < 0.0:
        r += width
    out = lo + r
    if out >= hi:
        out = lo
    return out


def angles_to_cart(theta, phi):
    """Unit vector for polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2pi)."""
    if not (0.0 <= theta <= math.pi and 0.0 <= phi < TWO_PI):
        raise UsageError(f"angles out of domain: theta={theta!r}, phi={phi!r}")
    st = math.sin(theta)
    return UnitVec3(st * math.cos(phi), st * math.sin(phi), math.cos(theta))


def cart_to_angles(v):
    """Inverse of :func:`angles_to_cart`.

    Returns ``(theta, phi)`` with ``phi`` in [0, 2pi). At the poles phi is 0.
    """
    x, y, z = v
    if z > 1.0:
        z = 1.0
    elif z < -1.0:
        z = -1.0
    theta = math.acos(z)
    if math.sqrt(x * x + y * y) < POLE_TOL:
        return theta, 0.0
    phi = math.atan2(y, x)
    if phi < 0.0:
        phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
    return theta, phi


def project_to_sphere(x, y, z):
    """Radially project a non-zero 3-vector onto the unit sphere."""
    norm = math.sqrt(x * x + y * y + z * z)
    if not norm >= MIN_PROJECT_NORM:
        raise DegenerateInputError(f"cannot project vector of norm {norm!r}")
    return UnitVec3(x / norm, y / norm, z / norm)
