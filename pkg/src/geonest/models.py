"""Built-in toy likelihoods on circles, tori, spheres and boxes.

Every likelihood is unnormalised; recovering its normalisation as the
evidence is what the sampler is tested on. Scalar functions use :mod:`math`
and are what the pure-Python kernel calls; the ``*_batch`` twins are
vectorised for grid quadrature. The compiled kernel reimplements the scalar
forms from ``Model.kernel_code``/``Model.kernel_params``.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from .exceptions import UsageError
from .geometry import TWO_PI, project_to_sphere
from .space import ParameterSpace

LOG_HALF = math.log(0.5)

# Model codes understood by the compiled kernel; 0 means "call back into Python".
CODE_PYTHON = 0
CODE_CONSTANT = 1
CODE_VON_MISES = 2
CODE_EDGE_TORUS = 3
CODE_VMF = 4
CODE_ANTIPODAL_VMF = 5
CODE_GAUSSIAN_BOX = 6

EDGE_OFFSET = 0.1


def _logaddexp(a, b):
    m = a if a > b else b
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.exp(a - m) + math.exp(b - m))


def _check_kappa(kappa):
    if not kappa >= 0.0:
        raise UsageError(f"kappa must be >= 0, got {kappa!r}")


# -- scalar likelihoods ------------------------------------------------------

def von_mises_circle(theta, mu, kappa):
    """``kappa * cos(theta - mu)``."""
    _check_kappa(kappa)
    return kappa * math.cos(theta - mu)


def edge_bimodal_torus(p, kappa, offset=EDGE_OFFSET):
    """Equal mixture of two von Mises products centred at ``(offset, offset)``
    and ``(2pi - offset, 2pi - offset)``, i.e. on either side of the seam."""
    if len(p) != 2:
        raise UsageError("edge_bimodal_torus needs a 2-D torus point")
    a = TWO_PI - offset
    la = kappa * (math.cos(p[0] - offset) + math.cos(p[1] - offset))
    lb = kappa * (math.cos(p[0] - a) + math.cos(p[1] - a))
    return _logaddexp(la, lb) + LOG_HALF


def vmf_sphere(p, m_hat, kappa, theta_index=0, phi_index=1):
    """``kappa * (m_hat . n)`` with ``n`` the unit vector at ``(theta, phi)``."""
    th = p[theta_index]
    ph = p[phi_index]
    st = math.sin(th)
    dot = m_hat[0] * (st * math.cos(ph)) + m_hat[1] * (st * math.sin(ph)) + m_hat[2] * math.cos(th)
    return kappa * dot


def antipodal_vmf_mixture(p, m_hat, kappa, theta_index=0, phi_index=1):
    """Equal mixture of von Mises-Fisher components at ``m_hat`` and ``-m_hat``."""
    d = vmf_sphere(p, m_hat, kappa, theta_index, phi_index)
    return _logaddexp(d, -d) + LOG_HALF


def gaussian_box(p, mean, sigma):
    """``-0.5 * sum(((p - mean) / sigma) ** 2)``."""
    s = 0.0
    for i in range(len(mean)):
        d = (p[i] - mean[i]) / sigma[i]
        s += d * d
    return -0.5 * s


# -- vectorised twins (oracle only) -----------------------------------------

def _unit_vectors(x, theta_index, phi_index):
    th = x[:, theta_index]
    ph = x[:, phi_index]
    st = np.sin(th)
    return st * np.cos(ph), st * np.sin(ph), np.cos(th)


def _vmf_batch(x, m_hat, kappa, ti=0, pi=1):
    nx, ny, nz = _unit_vectors(x, ti, pi)
    return kappa * (m_hat[0] * nx + m_hat[1] * ny + m_hat[2] * nz)


def _antipodal_batch(x, m_hat, kappa, ti=0, pi=1):
    d = _vmf_batch(x, m_hat, kappa, ti, pi)
    return np.logaddexp(d, -d) + LOG_HALF


def _edge_batch(x, kappa, offset=EDGE_OFFSET):
    a = TWO_PI - offset
    la = kappa * (np.cos(x[:, 0] - offset) + np.cos(x[:, 1] - offset))
    lb = kappa * (np.cos(x[:, 0] - a) + np.cos(x[:, 1] - a))
    return np.logaddexp(la, lb) + LOG_HALF


def _gauss_batch(x, mean, sigma):
    return -0.5 * np.sum(((x - np.asarray(mean)) / np.asarray(sigma)) ** 2, axis=1)


# -- model objects -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Model:
    """A named likelihood bound to its parameter space.

    Calling the model evaluates the log-likelihood of one point.
    """

    name: str
    space: ParameterSpace
    params: Dict[str, object]
    log_l: Callable = field(repr=False)
    log_l_batch: Callable = field(repr=False)
    kernel_code: int = CODE_PYTHON
    kernel_params: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)
    default_grid: int = 512

    def __call__(self, p):
        return self.log_l(p)


def _unit(m_hat):
    if len(m_hat) != 3:
        raise UsageError(f"m_hat needs 3 components, got {len(m_hat)}")
    return tuple(project_to_sphere(*(float(c) for c in m_hat)))


def _make_von_mises(kappa=5.0, mu=1.0):
    kappa, mu = float(kappa), float(mu)
    _check_kappa(kappa)
    if not 0.0 <= mu < TWO_PI:
        raise UsageError(f"mu must lie in [0, 2pi), got {mu!r}")
    return Model(
        "von_mises", ParameterSpace.circle(), {"kappa": kappa, "mu": mu},
        lambda p: kappa * math.cos(p[0] - mu),
        lambda x: kappa * np.cos(x[:, 0] - mu),
        CODE_VON_MISES, np.array([0.0, mu, kappa]), 512)


def _make_edge_torus(kappa=10.0):
    kappa = float(kappa)
    _check_kappa(kappa)
    return Model(
        "edge_bimodal_torus", ParameterSpace.torus(2), {"kappa": kappa},
        lambda p: edge_bimodal_torus(p, kappa),
        lambda x: _edge_batch(x, kappa),
        CODE_EDGE_TORUS, np.array([kappa, EDGE_OFFSET]), 512)


def _make_vmf(kappa=10.0, m_hat=(1.0, 0.0, 0.0)):
    kappa = float(kappa)
    _check_kappa(kappa)
    m = _unit(m_hat)
    return Model(
        "vmf_sphere", ParameterSpace.sphere(), {"kappa": kappa, "m_hat": list(m)},
        lambda p: vmf_sphere(p, m, kappa),
        lambda x: _vmf_batch(x, m, kappa),
        CODE_VMF, np.array([0.0, 1.0, kappa, *m]), 4096)


def _make_antipodal(kappa=10.0, m_hat=(1.0, 0.0, 0.0)):
    kappa = float(kappa)
    _check_kappa(kappa)
    m = _unit(m_hat)
    return Model(
        "antipodal_vmf_mixture", ParameterSpace.sphere(), {"kappa": kappa, "m_hat": list(m)},
        lambda p: antipodal_vmf_mixture(p, m, kappa),
        lambda x: _antipodal_batch(x, m, kappa),
        CODE_ANTIPODAL_VMF, np.array([0.0, 1.0, kappa, *m]), 4096)


def _make_gaussian_box(mean=(0.5,), sigma=(0.05,), lo=0.0, hi=1.0):
    mean = [float(m) for m in mean]
    sigma = [float(s) for s in sigma]
    lo, hi = float(lo), float(hi)
    if not mean or len(mean) != len(sigma):
        raise UsageError("mean and sigma must be non-empty and of equal length")
    if any(not s > 0.0 for s in sigma):
        raise UsageError("sigma entries must be > 0")
    if not lo < hi:
        raise UsageError(f"box needs lo < hi, got [{lo}, {hi}]")
    if any(not lo <= m <= hi for m in mean):
        raise UsageError("mean must lie inside the box")
    ndim = len(mean)
    return Model(
        "gaussian_box", ParameterSpace.box(ndim, lo, hi),
        {"mean": mean, "sigma": sigma, "lo": lo, "hi": hi},
        lambda p: gaussian_box(p, mean, sigma),
        lambda x: _gauss_batch(x, mean, sigma),
        CODE_GAUSSIAN_BOX, np.array([float(ndim), *mean, *sigma]),
        512 if ndim <= 2 else 256)


_GEOMETRIES = {
    "circle": ParameterSpace.circle,
    "torus": ParameterSpace.torus,
    "sphere": ParameterSpace.sphere,
    "box": lambda: ParameterSpace.box(1),
}


def _make_constant(log_l=0.0, geometry="circle"):
    c = float(log_l)
    if not math.isfinite(c):
        raise UsageError("log_l must be finite")
    if geometry not in _GEOMETRIES:
        raise UsageError(f"geometry must be one of {sorted(_GEOMETRIES)}, got {geometry!r}")
    return Model(
        "constant", _GEOMETRIES[geometry](), {"log_l": c, "geometry": geometry},
        lambda p: c,
        lambda x: np.full(len(x), c),
        CODE_CONSTANT, np.array([c]), 64)


@dataclass(frozen=True)
class ModelInfo:
    factory: Callable
    defaults: Dict[str, object]
    description: str


MODELS = {
    "von_mises": ModelInfo(
        _make_von_mises, {"kappa": 5.0, "mu": 1.0},
        "kappa*cos(theta - mu) on the circle [0, 2pi)"),
    "edge_bimodal_torus": ModelInfo(
        _make_edge_torus, {"kappa": 10.0},
        "von Mises mixture at (0.1, 0.1) and (2pi-0.1, 2pi-0.1) on the 2-torus"),
    "vmf_sphere": ModelInfo(
        _make_vmf, {"kappa": 10.0, "m_hat": [1.0, 0.0, 0.0]},
        "von Mises-Fisher kappa*(m_hat . n) on the unit sphere"),
    "antipodal_vmf_mixture": ModelInfo(
        _make_antipodal, {"kappa": 10.0, "m_hat": [1.0, 0.0, 0.0]},
        "equal von Mises-Fisher mixture at m_hat and -m_hat on the unit sphere"),
    "gaussian_box": ModelInfo(
        _make_gaussian_box, {"mean": [0.5], "sigma": [0.05], "lo": 0.0, "hi": 1.0},
        "axis-aligned Gaussian on a linear box (edge proposals are rejected)"),
    "constant": ModelInfo(
        _make_constant, {"log_l": 0.0, "geometry": "circle"},
        "flat likelihood on a circle, torus, sphere or box"),
}


def build_model(name, **params):
    """Instantiate a built-in model by name, filling unspecified parameters with defaults."""
    if name not in MODELS:
        raise UsageError(f"unknown model {name!r}; available: {', '.join(MODELS)}")
    info = MODELS[name]
    unknown = set(params) - set(info.defaults)
    if unknown:
        raise UsageError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")
    return info.factory(**{**info.defaults, **params})
