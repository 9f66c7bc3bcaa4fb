import math

import numpy as np
import pytest
from scipy import stats

from geonest import _pykernel
from geonest.exceptions import KernelError, UsageError
from geonest.proposal import (ProposalScales, layout_tuple, make_layout, propose,
                              suggest_scales)
from geonest.space import Circular, Linear, ParameterSpace, SphericalPair, domain_contains

PI = math.pi


def _apply(space, current, z, sigma, redraw=None, wrap=True):
    lay = layout_tuple(make_layout(space, ProposalScales(sigma), wrap))
    return _pykernel.propose_from_draws(list(current), lay, list(z), 0, redraw)


def test_wrapped_step_hops_the_edge():
    trial, inside = _apply(ParameterSpace([Circular(0, 1)]), [0.95], [0.10], [1.0])
    assert trial[0] == pytest.approx(0.05, abs=1e-12)
    assert inside


def test_pole_is_fixed_under_radial_step():
    trial, inside = _apply(ParameterSpace.sphere(), [0.0, 0.0], [0.0, 0.0, 0.5], [1.0])
    assert trial == [0.0, 0.0] and inside


def test_linear_step_may_leave_domain():
    trial, inside = _apply(ParameterSpace([Linear(0, 1)]), [0.95], [1.0], [0.1])
    assert trial[0] == pytest.approx(1.05) and not inside


def test_unwrapped_circular_is_rejected_not_moved():
    trial, inside = _apply(ParameterSpace([Circular(0, 1)]), [0.95], [0.10], [1.0], wrap=False)
    assert trial[0] == pytest.approx(1.05) and not inside


def test_degenerate_projection_redraws():
    calls = []

    def redraw():
        calls.append(1)
        return [0.0, 0.0, 1.0]

    # z = -1/sigma exactly cancels the north pole
    trial, _ = _apply(ParameterSpace.sphere(), [0.0, 0.0], [0.0, 0.0, -2.0], [0.5], redraw)
    assert len(calls) == 1 and trial == [0.0, 0.0]


def test_degenerate_projection_gives_up():
    with pytest.raises(KernelError):
        _apply(ParameterSpace.sphere(), [0.0, 0.0], [0.0, 0.0, -2.0], [0.5],
               lambda: [0.0, 0.0, -2.0])


def test_tiny_sigma_is_identity(rng):
    space = ParameterSpace.circle()
    scales = ProposalScales((1e-12,))
    for _ in range(100):
        cur = np.array([rng.uniform(0, 2 * PI)])
        out = propose(cur, space, scales, rng)
        assert abs(out.trial[0] - cur[0]) < 1e-10
        assert out.log_q_ratio == 0.0


def test_propose_is_deterministic():
    space = ParameterSpace([Linear(0, 1), SphericalPair(1, 2), Circular(0, 3)])
    cur = np.array([0.5, 1.0, 2.0, 1.5])
    scales = suggest_scales(space, 0.2)
    a = propose(cur, space, scales, np.random.default_rng(9))
    b = propose(cur, space, scales, np.random.default_rng(9))
    assert np.array_equal(a.trial, b.trial)


@pytest.mark.parametrize("space, fraction, expected", [
    (ParameterSpace([Linear(0, 10)]), 0.1, 1.0),
    (ParameterSpace([Circular(0, 2 * PI)]), 0.05, 0.1 * PI),
    (ParameterSpace.sphere(), 0.1, 0.2),
])
def test_suggest_scales(space, fraction, expected):
    assert suggest_scales(space, fraction).sigma[0] == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("fraction", [0.0, -0.1, 1.5])
def test_suggest_scales_range(fraction):
    with pytest.raises(UsageError):
        suggest_scales(ParameterSpace.circle(), fraction)


def test_scales_validation():
    with pytest.raises(UsageError):
        ProposalScales((0.0,))
    with pytest.raises(UsageError):
        ProposalScales((math.inf,))
    with pytest.raises(UsageError):
        make_layout(ParameterSpace.torus(2), ProposalScales((0.1,)))


def _many(space, cur, sigma, n, seed):
    lay = make_layout(space, ProposalScales(sigma))
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, lay.n_normals))
    lt = layout_tuple(lay)
    out = np.empty((n, space.ndim))
    inside = np.empty(n, dtype=bool)
    for i in range(n):
        out[i], inside[i] = _pykernel.propose_from_draws(cur, lt, z[i].tolist())
    return out, inside


def test_wrapped_normal_edge_symmetry():
    x, _ = _many(ParameterSpace([Circular(0, 1)]), [0.0], [0.2], 100_000, 1)
    right = np.mean((x[:, 0] >= 0.0) & (x[:, 0] < 0.2))
    left = np.mean(x[:, 0] >= 0.8)
    se = math.sqrt((right * (1 - right) + left * (1 - left)) / len(x))
    assert abs(right - left) < 3 * se


def test_wrapped_normal_transition_symmetry():
    # density a -> b equals b -> a: compare histograms of (trial - start) mod 1
    # started from two different points
    n = 100_000
    bins = np.linspace(0, 1, 11)
    xa, _ = _many(ParameterSpace([Circular(0, 1)]), [0.1], [0.3], n, 2)
    xb, _ = _many(ParameterSpace([Circular(0, 1)]), [0.85], [0.3], n, 3)
    ha = np.histogram(np.mod(xa[:, 0] - 0.1, 1.0), bins)[0] / n
    hb = np.histogram(np.mod(0.85 - xb[:, 0], 1.0), bins)[0] / n
    se = np.sqrt((ha * (1 - ha) + hb * (1 - hb)) / n)
    assert np.all(np.abs(ha - hb) < 3 * se + 1e-12)


def test_sphere_pole_isotropy():
    x, _ = _many(ParameterSpace.sphere(), [0.0, 0.0], [0.3], 100_000, 4)
    assert stats.kstest(x[:, 1] / (2 * PI), "uniform").pvalue > 0.01


def test_sphere_projection_kernel_depends_only_on_angle():
    # the projected Gaussian is rotation-invariant about its centre, hence
    # symmetric: angular step distributions from the pole and the equator agree
    pole, _ = _many(ParameterSpace.sphere(), [0.0, 0.0], [0.3], 50_000, 5)
    eq, _ = _many(ParameterSpace.sphere(), [PI / 2, 0.0], [0.3], 50_000, 6)
    ang_pole = pole[:, 0]
    n_eq = np.column_stack([np.sin(eq[:, 0]) * np.cos(eq[:, 1]),
                            np.sin(eq[:, 0]) * np.sin(eq[:, 1]), np.cos(eq[:, 0])])
    ang_eq = np.arccos(np.clip(n_eq[:, 0], -1, 1))
    assert stats.ks_2samp(ang_pole, ang_eq).pvalue > 0.01


@pytest.mark.parametrize("space", [ParameterSpace.torus(3), ParameterSpace.sphere(),
                                   ParameterSpace([SphericalPair(0, 2), Circular(-1, 1)])])
def test_periodic_proposals_never_leave_domain(space):
    rng = np.random.default_rng(7)
    lay = make_layout(space, suggest_scales(space, 0.5))
    lt = layout_tuple(lay)
    cur = [float(c) for c in space.bounds[0]]
    z = rng.standard_normal((20_000, lay.n_normals)).tolist()
    for row in z:
        trial, inside = _pykernel.propose_from_draws(cur, lt, row)
        assert inside and domain_contains(space, trial)
        cur = trial
