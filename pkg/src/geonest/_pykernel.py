"""Pure-Python chain kernel.

Mirrors ``_ckernel.pyx`` operation for operation so the two backends give
bit-identical chains for the built-in models. Keep them in sync.
"""

import math

from .exceptions import KernelError
from .geometry import MIN_PROJECT_NORM, cart_to_angles, wrap

BACKEND = "python"

MAX_PROJECT_ATTEMPTS = 100

_LINEAR, _CIRCULAR, _SPHERE = 0, 1, 2


def propose_from_draws(cur, lay, z, off=0, redraw=None):
    """Apply pre-drawn standard normals ``z[off:]`` to ``cur``.

    Returns ``(trial, inside)`` where ``inside`` is False only when a linear
    coordinate (or an unwrapped circular one) left the domain.
    """
    kinds, ia, ib, lo, hi, sigma, do_wrap = lay
    trial = list(cur)
    inside = True
    for d in range(len(kinds)):
        kind = kinds[d]
        s = sigma[d]
        if kind == _SPHERE:
            a = ia[d]
            b = ib[d]
            th = cur[a]
            ph = cur[b]
            st = math.sin(th)
            x = st * math.cos(ph)
            y = st * math.sin(ph)
            w = math.cos(th)
            xp = x + s * z[off]
            yp = y + s * z[off + 1]
            zp = w + s * z[off + 2]
            off += 3
            norm = math.sqrt(xp * xp + yp * yp + zp * zp)
            attempts = 1
            while not norm >= MIN_PROJECT_NORM:
                if attempts >= MAX_PROJECT_ATTEMPTS or redraw is None:
                    raise KernelError(f"{attempts} consecutive degenerate sphere projections")
                e = redraw()
                xp = x + s * e[0]
                yp = y + s * e[1]
                zp = w + s * e[2]
                norm = math.sqrt(xp * xp + yp * yp + zp * zp)
                attempts += 1
            trial[a], trial[b] = cart_to_angles((xp / norm, yp / norm, zp / norm))
        else:
            i = ia[d]
            v = cur[i] + s * z[off]
            off += 1
            if kind == _CIRCULAR:
                if do_wrap:
                    v = wrap(v, lo[d], hi[d])
                elif not lo[d] <= v < hi[d]:
                    inside = False
            elif not lo[d] <= v <= hi[d]:
                inside = False
            trial[i] = v
    return trial, inside


def evolve(start, start_logl, lmin, normals, uniforms, lay, log_prior, loglike, redraw):
    """Run ``len(uniforms)`` constrained Metropolis-Hastings steps from ``start``.

    Returns ``(end, end_logl, accepted, evals, out_of_domain, last_accepted,
    last_evaluated)``.
    """
    cur = [float(c) for c in start]
    cur_l = float(start_logl)
    k = normals.shape[1] if normals.ndim == 2 else 0
    z = normals.ravel().tolist()
    u = uniforms.tolist()
    accepted = evals = out_of_domain = 0
    last_acc = last_eval = False
    for step in range(len(u)):
        trial, inside = propose_from_draws(cur, lay, z, step * k, redraw)
        last_acc = last_eval = False
        if inside:
            log_r = log_prior - log_prior
        else:
            out_of_domain += 1
            log_r = -math.inf
        lu = math.log(u[step]) if u[step] > 0.0 else -math.inf
        if lu >= min(0.0, log_r):
            continue
        lt = loglike(trial)
        evals += 1
        last_eval = True
        if lt > lmin:
            cur = trial
            cur_l = lt
            accepted += 1
            last_acc = True
    return cur, cur_l, accepted, evals, out_of_domain, last_acc, last_eval
