"""Backend selection for the constrained Metropolis-Hastings chain.

The compiled ``_ckernel`` extension is used when it is importable; otherwise
the pure-Python ``_pykernel`` takes over. Set ``GEONEST_BACKEND=python`` (or
``cython``) to force a choice.
"""

import logging
import os

import numpy as np

from . import _pykernel
from .models import CODE_PYTHON, Model
from .proposal import layout_tuple

log = logging.getLogger(__name__)

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

AVAILABLE = ("python",) + (("cython",) if _ckernel is not None else ())


def _default_backend():
    forced = os.environ.get("GEONEST_BACKEND", "").strip().lower()
    if forced:
        if forced not in ("python", "cython"):
            raise ImportError(f"GEONEST_BACKEND must be 'python' or 'cython', got {forced!r}")
        if forced == "cython" and _ckernel is None:
            raise ImportError("GEONEST_BACKEND=cython but the compiled kernel is not built")
        return forced
    return "cython" if _ckernel is not None else "python"


BACKEND = _default_backend()
log.debug("geonest kernel backend: %s", BACKEND)


def resolve(backend=None):
    backend = backend or BACKEND
    if backend not in AVAILABLE:
        raise ValueError(f"backend {backend!r} unavailable; have {AVAILABLE}")
    return backend


def python_loglike(likelihood):
    """Scalar callable taking a list of floats, for the pure-Python backend."""
    if isinstance(likelihood, Model):
        return likelihood.log_l
    return lambda coords: float(likelihood(np.array(coords)))


class ChainRunner:
    """Binds a layout and likelihood to one backend's ``evolve``.

    Built once per run so the per-iteration call does no setup work.
    """

    def __init__(self, layout, likelihood, backend=None):
        self.backend = resolve(backend)
        self.layout = layout
        if self.backend == "cython":
            if isinstance(likelihood, Model) and likelihood.kernel_code != CODE_PYTHON:
                self._code = likelihood.kernel_code
                self._params = np.ascontiguousarray(likelihood.kernel_params, dtype=float)
                self._fn = None
            else:
                self._code = CODE_PYTHON
                self._params = np.zeros(0)
                self._fn = lambda arr: float(likelihood(arr))
        else:
            self._lay = layout_tuple(layout)
            self._fn = python_loglike(likelihood)

    def evolve(self, start, start_logl, lmin, normals, uniforms, redraw):
        """Returns ``(end, end_logl, accepted, evals, out_of_domain, last_accepted,
        last_evaluated)``; ``end`` is a float array."""
        if self.backend == "cython":
            return _ckernel.evolve(start, start_logl, lmin, normals, uniforms, self.layout,
                                   self._code, self._params, self._fn, redraw)
        out = _pykernel.evolve(start, start_logl, lmin, normals, uniforms, self._lay,
                               self.layout.log_prior, self._fn, redraw)
        return (np.array(out[0]),) + tuple(out[1:])
