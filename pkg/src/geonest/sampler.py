"""Nested sampling driven by geometric Metropolis-Hastings chains.

Prior volume shrinks deterministically, ``X_i = exp(-i / n_live)``, and the
evidence is accumulated with rectangle weights ``L_i * (X_{i-1} - X_i)``.
At termination the remaining livepoints share the final volume equally.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import ConfigError, KernelError, ModelMisconfigurationError, UsageError
from .kernel import ChainRunner, python_loglike
from .mh import ChainStats, draw_chain_randoms
from .proposal import DEFAULT_FRACTION, make_layout, suggest_scales
from .rng import make_streams
from .space import sample_prior

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplerConfig:
    """Outer-loop settings.

    ``termination_frac``: stop once ``max(L_live) * X_i`` falls below this
    fraction of the evidence accumulated so far.
    """

    n_live: int = 500
    chain_steps: int = 20
    termination_frac: float = 1e-3
    max_iterations: int = 100_000
    seed: int = 0

    def __post_init__(self):
        checks = [
            ("n_live", isinstance(self.n_live, int) and self.n_live >= 2, "n_live ≥ 2"),
            ("chain_steps", isinstance(self.chain_steps, int) and self.chain_steps >= 1,
             "chain_steps ≥ 1"),
            ("termination_frac", 0.0 < self.termination_frac < 1.0,
             "0 < termination_frac < 1"),
            ("max_iterations", isinstance(self.max_iterations, int) and self.max_iterations >= 1,
             "max_iterations ≥ 1"),
            ("seed", isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64,
             "0 ≤ seed < 2^64"),
        ]
        for name, ok, rule in checks:
            if not ok:
                raise ConfigError(f"invalid {name}={getattr(self, name)!r}: requires {rule}")


class DeadPointRecord(NamedTuple):
    point: np.ndarray
    log_l: float
    log_x: float
    log_weight: float


@dataclass
class RunResult:
    """Output of :func:`run`.

    Dead points and final livepoints are kept as arrays; ``dead_points``
    gives the record view. ``log_weights`` covers dead points followed by
    final livepoints and is normalised by ``exp(log_z)``.
    """

    log_z: float
    log_z_err: float
    information_nats: float
    n_iterations: int
    dead_coords: np.ndarray
    dead_log_l: np.ndarray
    dead_log_x: np.ndarray
    dead_log_weight: np.ndarray
    live_coords: np.ndarray
    live_log_l: np.ndarray
    live_log_weight: np.ndarray
    posterior_samples: np.ndarray
    acceptance_rate: float
    likelihood_evals: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def dead_points(self):
        return [DeadPointRecord(p, l, x, w) for p, l, x, w in
                zip(self.dead_coords, self.dead_log_l.tolist(), self.dead_log_x.tolist(),
                    self.dead_log_weight.tolist())]

    @property
    def truncated(self):
        return bool(self.diagnostics.get("truncated", False))

    @property
    def log_weights(self):
        return np.concatenate([self.dead_log_weight, self.live_log_weight])

    @property
    def all_coords(self):
        return np.concatenate([self.dead_coords, self.live_coords])

    @property
    def all_log_l(self):
        return np.concatenate([self.dead_log_l, self.live_log_l])

    def summary(self):
        return (f"log_z = {self.log_z:.4f} +/- {self.log_z_err:.4f}  "
                f"H = {self.information_nats:.3f} nats  iterations = {self.n_iterations}  "
                f"acceptance = {self.acceptance_rate:.3f}")


def log_sum_exp(values):
    """``log(sum(exp(values)))`` without overflow or underflow."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise UsageError("log_sum_exp of an empty sequence")
    m = v.max()
    if not np.isfinite(m):
        return float(m)
    return float(m + np.log(np.sum(np.exp(v - m))))


def systematic_resample(weights, count, rng):
    """Indices drawn by systematic resampling; multiplicities are within one
    of ``count * w / sum(w)``."""
    if count <= 0:
        return np.zeros(0, dtype=np.intp)
    w = np.asarray(weights, dtype=float)
    cdf = np.cumsum(w / w.sum())
    cdf[-1] = 1.0
    positions = (rng.random() + np.arange(count)) / count
    return np.searchsorted(cdf, positions, side="right")


def posterior_resample(coords, log_weights, log_z, count, rng):
    """Equal-weight posterior samples from weighted points.

    ``coords`` holds every weighted point (dead points, then final
    livepoints) and ``log_weights`` their unnormalised log weights.
    """
    coords = np.asarray(coords, dtype=float)
    if count <= 0:
        return np.zeros((0, coords.shape[1]))
    p = np.exp(np.asarray(log_weights, dtype=float) - log_z)
    if not (np.all(np.isfinite(p)) and p.sum() > 0.0):
        raise UsageError("posterior weights are not finite after normalisation")
    return coords[systematic_resample(p, count, rng)]


def run(config, space, likelihood, scales=None, *, posterior_count=10_000,
        wrap_circular=True, backend=None):
    """Estimate the evidence of ``likelihood`` under the uniform prior of ``space``.

    Parameters
    ----------
    config : SamplerConfig
    space : ParameterSpace
    likelihood : Model or callable
        Deterministic log-likelihood; may return ``-inf``.
    scales : ProposalScales, optional
        Fixed proposal widths; defaults to the suggested widths at the default
        fraction.
    posterior_count : int
        Number of equal-weight posterior samples to draw.
    wrap_circular : bool
        Diagnostic switch. False turns wrapped circular steps into
        clamp-reject steps, which is only useful for comparison.
    backend : {"cython", "python"}, optional
        Kernel backend; defaults to the one selected at import.

    Returns
    -------
    RunResult
    """
    n = config.n_live
    scales = scales or suggest_scales(space, DEFAULT_FRACTION)
    layout = make_layout(space, scales, wrap_circular)
    runner = ChainRunner(layout, likelihood, backend)
    streams = make_streams(config.seed)
    rng = streams.chain
    redraw = lambda: rng.standard_normal(3).tolist()  # noqa: E731

    live = sample_prior(space, streams.init, n)
    loglike = python_loglike(likelihood)
    live_l = np.array([loglike(p) for p in live.tolist()], dtype=float)
    if np.any(np.isnan(live_l)):
        raise ModelMisconfigurationError("likelihood returned NaN on a prior draw")
    if not np.any(live_l > -math.inf):
        raise ModelMisconfigurationError(
            f"all {n} initial livepoints have zero likelihood; check the model and its domain")

    stats = ChainStats(likelihood_evals=n)
    coords_rec, l_rec, w_rec = [], [], []
    replacement_l = []
    log_shrink = math.log1p(-math.exp(-1.0 / n))
    log_frac = math.log(config.termination_frac)
    log_z = -math.inf
    l_max = float(live_l.max())
    n_iter = 0
    stop = "max_iterations"

    while n_iter < config.max_iterations:
        worst = int(np.argmin(live_l))
        l_min = float(live_l[worst])
        candidates = np.flatnonzero(live_l > l_min)
        if candidates.size == 0:
            # every livepoint sits on the same plateau: the rest is exact
            stop = "plateau"
            break
        n_iter += 1
        log_w = l_min + (-(n_iter - 1) / n) + log_shrink
        coords_rec.append(live[worst].copy())
        l_rec.append(l_min)
        w_rec.append(log_w)
        log_z = np.logaddexp(log_z, log_w)

        j = candidates[rng.integers(candidates.size)]
        normals, uniforms = draw_chain_randoms(rng, config.chain_steps, layout.n_normals)
        end, end_l, acc, evals, ood, _, _ = runner.evolve(
            live[j], float(live_l[j]), l_min, normals, uniforms, redraw)
        if not end_l > l_min:
            raise KernelError(f"replacement logL {end_l!r} does not exceed L_min {l_min!r}")
        live[worst] = end
        live_l[worst] = end_l
        replacement_l.append(end_l)
        stats += ChainStats(config.chain_steps, acc, evals, ood)
        if end_l > l_max:
            l_max = end_l

        if n_iter % 1000 == 0:
            log.debug("iter %d  log_z %.4f  L_min %.4f", n_iter, log_z, l_min)
        if l_max + (-n_iter / n) < log_frac + log_z:
            stop = "converged"
            break

    truncated = stop == "max_iterations"
    if truncated:
        log.warning("stopped at max_iterations=%d before the termination criterion",
                    config.max_iterations)

    dead_coords = np.array(coords_rec).reshape(-1, space.ndim)
    dead_l = np.array(l_rec, dtype=float)
    dead_x = -np.arange(1, n_iter + 1, dtype=float) / n
    dead_w = np.array(w_rec, dtype=float)
    live_w = live_l + (-n_iter / n) - math.log(n)

    all_w = np.concatenate([dead_w, live_w])
    all_l = np.concatenate([dead_l, live_l])
    log_z = log_sum_exp(all_w)
    p = np.exp(all_w - log_z)
    mask = p > 0.0
    info = float(np.sum(p[mask] * (all_l[mask] - log_z)))
    log_z_err = math.sqrt(max(info, 0.0) / n)

    posterior = posterior_resample(np.concatenate([dead_coords, live]), all_w, log_z,
                                   posterior_count, streams.resample)

    diagnostics = {
        "truncated": truncated,
        "stop_reason": stop,
        "proposals": stats.steps,
        "out_of_domain": stats.out_of_domain,
        "chain_accepted": stats.accepted,
        "replacement_log_l": np.array(replacement_l, dtype=float),
        "backend": runner.backend,
        "wrap_circular": bool(wrap_circular),
    }
    return RunResult(
        log_z=log_z, log_z_err=log_z_err, information_nats=info, n_iterations=n_iter,
        dead_coords=dead_coords, dead_log_l=dead_l, dead_log_x=dead_x, dead_log_weight=dead_w,
        live_coords=live, live_log_l=live_l, live_log_weight=live_w,
        posterior_samples=posterior,
        acceptance_rate=stats.acceptance_rate, likelihood_evals=stats.likelihood_evals,
        diagnostics=diagnostics)
