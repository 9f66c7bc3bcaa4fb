"""Likelihood-constrained Metropolis-Hastings chains.

Each step draws a geometric trial, applies the Metropolis test on prior and
proposal ratio first (so out-of-domain trials never cost a likelihood call)
and then requires ``logL(trial) > log_l_min``. A rejected step keeps the
current point.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import UsageError
from .kernel import ChainRunner
from .proposal import DEFAULT_FRACTION, make_layout, suggest_scales
from .space import domain_contains


class LivePoint(NamedTuple):
    coords: np.ndarray
    log_l: float


@dataclass
class ChainStats:
    steps: int = 0
    accepted: int = 0
    likelihood_evals: int = 0
    out_of_domain: int = 0

    def __iadd__(self, other):
        self.steps += other.steps
        self.accepted += other.accepted
        self.likelihood_evals += other.likelihood_evals
        self.out_of_domain += other.out_of_domain
        return self

    @property
    def acceptance_rate(self):
        return self.accepted / self.steps if self.steps else 0.0


def draw_chain_randoms(rng, n_steps, n_normals):
    """Normals then uniforms, in the fixed order every chain consumes them."""
    normals = rng.standard_normal((n_steps, n_normals))
    uniforms = rng.random(n_steps)
    return normals, uniforms


def _redraw(rng):
    return lambda: rng.standard_normal(3).tolist()


def _check_start(space, start, log_l_min):
    if not start.log_l > log_l_min:
        raise UsageError(f"start logL {start.log_l!r} must exceed log_l_min {log_l_min!r}")
    if not domain_contains(space, start.coords):
        raise UsageError("start point lies outside the domain")


def evolve_chain(start, log_l_min, n_steps, space, likelihood, scales=None, rng=None, *,
                 wrap_circular=True, backend=None):
    """Run ``n_steps`` constrained Metropolis-Hastings steps from ``start``.

    Parameters
    ----------
    start : LivePoint
        Must satisfy ``start.log_l > log_l_min``.
    log_l_min : float
        Hard likelihood floor; ``-inf`` gives a plain Metropolis chain.
    n_steps : int
    space : ParameterSpace
    likelihood : Model or callable
        Deterministic log-likelihood of a point.
    scales : ProposalScales, optional
        Defaults to :func:`~geonest.proposal.suggest_scales` at the default fraction.
    rng : numpy.random.Generator
    wrap_circular : bool
        Diagnostic switch; False rejects circular steps that leave ``[lo, hi)``.
    backend : {"cython", "python"}, optional

    Returns
    -------
    end : LivePoint
    stats : ChainStats
    """
    if n_steps < 1:
        raise UsageError("n_steps must be >= 1")
    if rng is None:
        raise UsageError("evolve_chain needs an explicit rng")
    _check_start(space, start, log_l_min)
    scales = scales or suggest_scales(space, DEFAULT_FRACTION)
    layout = make_layout(space, scales, wrap_circular)
    runner = ChainRunner(layout, likelihood, backend)
    normals, uniforms = draw_chain_randoms(rng, n_steps, layout.n_normals)
    end, end_l, acc, evals, ood, _, _ = runner.evolve(
        np.asarray(start.coords, dtype=float), float(start.log_l), float(log_l_min),
        normals, uniforms, _redraw(rng))
    return LivePoint(end, float(end_l)), ChainStats(n_steps, acc, evals, ood)


def mh_step(current, log_l_min, space, likelihood, scales=None, rng=None, *,
            wrap_circular=True, backend=None):
    """One constrained step. Returns ``(next, accepted, likelihood_evaluated)``."""
    end, stats = evolve_chain(current, log_l_min, 1, space, likelihood, scales, rng,
                              wrap_circular=wrap_circular, backend=backend)
    return end, stats.accepted == 1, stats.likelihood_evals == 1
