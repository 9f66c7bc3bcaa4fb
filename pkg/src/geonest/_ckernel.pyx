# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled chain kernel.

Same arithmetic, in the same order, as ``_pykernel.py``; the built-in
likelihoods are evaluated in C from their model code, anything else is
called back through Python.
"""

import numpy as np

from libc.math cimport acos, atan2, cos, exp, fmod, log, sin, sqrt, INFINITY

from .exceptions import KernelError

BACKEND = "cython"

cdef enum:
    MAX_PROJECT_ATTEMPTS = 100
    K_LINEAR = 0
    K_CIRCULAR = 1
    K_SPHERE = 2
    C_PYTHON = 0
    C_CONSTANT = 1
    C_VON_MISES = 2
    C_EDGE_TORUS = 3
    C_VMF = 4
    C_ANTIPODAL = 5
    C_GAUSS = 6

cdef double MIN_PROJECT_NORM = 1e-300
cdef double POLE_TOL = 1e-12
cdef double TWO_PI = 6.283185307179586
cdef double LOG_HALF = -0.6931471805599453


cdef inline double _wrap(double v, double lo, double hi) nogil:
    cdef double width, r, out
    if lo <= v and v < hi:
        return v
    width = hi - lo
    r = fmod(v - lo, width)
    if r < 0.0:
        r += width
    out = lo + r
    if out >= hi:
        out = lo
    return out


cdef inline double _logaddexp(double a, double b) nogil:
    cdef double m = a if a > b else b
    if m == -INFINITY:
        return -INFINITY
    return m + log(exp(a - m) + exp(b - m))


cdef inline double _vmf_dot(const double[::1] x, const double[::1] p) nogil:
    # p = [theta_index, phi_index, kappa, mx, my, mz]
    cdef double th = x[<Py_ssize_t>p[0]]
    cdef double ph = x[<Py_ssize_t>p[1]]
    cdef double st = sin(th)
    return p[3] * (st * cos(ph)) + p[4] * (st * sin(ph)) + p[5] * cos(th)


cdef double _builtin_loglike(int code, const double[::1] x, const double[::1] p) nogil:
    cdef double la, lb, a, d, s
    cdef Py_ssize_t i, n
    if code == C_CONSTANT:
        return p[0]
    if code == C_VON_MISES:
        return p[2] * cos(x[<Py_ssize_t>p[0]] - p[1])
    if code == C_EDGE_TORUS:
        a = TWO_PI - p[1]
        la = p[0] * (cos(x[0] - p[1]) + cos(x[1] - p[1]))
        lb = p[0] * (cos(x[0] - a) + cos(x[1] - a))
        return _logaddexp(la, lb) + LOG_HALF
    if code == C_VMF:
        return p[2] * _vmf_dot(x, p)
    if code == C_ANTIPODAL:
        d = p[2] * _vmf_dot(x, p)
        return _logaddexp(d, -d) + LOG_HALF
    if code == C_GAUSS:
        n = <Py_ssize_t>p[0]
        s = 0.0
        for i in range(n):
            d = (x[i] - p[1 + i]) / p[1 + n + i]
            s += d * d
        return -0.5 * s
    return -INFINITY


cdef int _propose(const double[::1] cur, double[::1] trial,
                  const int[::1] kinds, const int[::1] ia, const int[::1] ib,
                  const double[::1] lo, const double[::1] hi, const double[::1] sigma,
                  int do_wrap, const double[::1] z, Py_ssize_t off, object redraw) except -1:
    """Fill ``trial``; return 1 if inside the domain, 0 otherwise."""
    cdef Py_ssize_t d, a, b, i
    cdef int kind, attempts, inside = 1
    cdef double s, th, ph, st, x, y, w, xp, yp, zp, norm, v, xt, yt, zt, theta, phi
    for i in range(cur.shape[0]):
        trial[i] = cur[i]
    for d in range(kinds.shape[0]):
        kind = kinds[d]
        s = sigma[d]
        if kind == K_SPHERE:
            a = ia[d]
            b = ib[d]
            th = cur[a]
            ph = cur[b]
            st = sin(th)
            x = st * cos(ph)
            y = st * sin(ph)
            w = cos(th)
            xp = x + s * z[off]
            yp = y + s * z[off + 1]
            zp = w + s * z[off + 2]
            off += 3
            norm = sqrt(xp * xp + yp * yp + zp * zp)
            attempts = 1
            while not norm >= MIN_PROJECT_NORM:
                if attempts >= MAX_PROJECT_ATTEMPTS or redraw is None:
                    raise KernelError(f"{attempts} consecutive degenerate sphere projections")
                e = redraw()
                xp = x + s * <double>e[0]
                yp = y + s * <double>e[1]
                zp = w + s * <double>e[2]
                norm = sqrt(xp * xp + yp * yp + zp * zp)
                attempts += 1
            xt = xp / norm
            yt = yp / norm
            zt = zp / norm
            if zt > 1.0:
                zt = 1.0
            elif zt < -1.0:
                zt = -1.0
            theta = acos(zt)
            if sqrt(xt * xt + yt * yt) < POLE_TOL:
                phi = 0.0
            else:
                phi = atan2(yt, xt)
                if phi < 0.0:
                    phi += TWO_PI
                    if phi >= TWO_PI:
                        phi = 0.0
            trial[a] = theta
            trial[b] = phi
        else:
            i = ia[d]
            v = cur[i] + s * z[off]
            off += 1
            if kind == K_CIRCULAR:
                if do_wrap:
                    v = _wrap(v, lo[d], hi[d])
                elif not (lo[d] <= v and v < hi[d]):
                    inside = 0
            elif not (lo[d] <= v and v <= hi[d]):
                inside = 0
            trial[i] = v
    return inside


def propose_from_draws(cur, lay, z, Py_ssize_t off=0, redraw=None):
    """Compiled counterpart of ``_pykernel.propose_from_draws`` (array inputs)."""
    kinds, ia, ib, lo, hi, sigma, do_wrap = lay
    cdef double[::1] c = np.ascontiguousarray(cur, dtype=np.float64)
    trial = np.empty(c.shape[0])
    inside = _propose(c, trial, np.ascontiguousarray(kinds, dtype=np.int32),
                      np.ascontiguousarray(ia, dtype=np.int32),
                      np.ascontiguousarray(ib, dtype=np.int32),
                      np.ascontiguousarray(lo, dtype=np.float64),
                      np.ascontiguousarray(hi, dtype=np.float64),
                      np.ascontiguousarray(sigma, dtype=np.float64),
                      int(do_wrap), np.ascontiguousarray(z, dtype=np.float64), off, redraw)
    return trial.tolist(), bool(inside)


def evolve(start, double start_logl, double lmin, normals, uniforms, layout,
           int code, params, loglike, redraw):
    """Run ``len(uniforms)`` constrained Metropolis-Hastings steps from ``start``.

    ``code``/``params`` select a built-in likelihood; with ``code == 0`` the
    Python callable ``loglike`` is called with a fresh float array.
    """
    cdef const int[::1] kinds = layout.kinds
    cdef const int[::1] ia = layout.idx_a
    cdef const int[::1] ib = layout.idx_b
    cdef const double[::1] lo = layout.lo
    cdef const double[::1] hi = layout.hi
    cdef const double[::1] sigma = layout.sigma
    cdef int do_wrap = layout.wrap
    cdef double log_prior = layout.log_prior
    cdef const double[::1] p = np.ascontiguousarray(params, dtype=np.float64)
    cdef const double[::1] z = np.ascontiguousarray(normals, dtype=np.float64).ravel()
    cdef const double[::1] u = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef Py_ssize_t k = normals.shape[1] if normals.ndim == 2 else 0
    cdef Py_ssize_t ndim = len(start)
    cur_arr = np.array(start, dtype=np.float64)
    trial_arr = np.empty(ndim)
    cdef double[::1] cur = cur_arr
    cdef double[::1] trial = trial_arr
    cdef double cur_l = start_logl, lt, log_r, lu, bound
    cdef Py_ssize_t step, i
    cdef int inside
    cdef long accepted = 0, evals = 0, out_of_domain = 0
    cdef bint last_acc = False, last_eval = False
    for step in range(u.shape[0]):
        inside = _propose(cur, trial, kinds, ia, ib, lo, hi, sigma, do_wrap, z, step * k, redraw)
        last_acc = False
        last_eval = False
        if inside:
            log_r = log_prior - log_prior
        else:
            out_of_domain += 1
            log_r = -INFINITY
        lu = log(u[step]) if u[step] > 0.0 else -INFINITY
        bound = log_r if log_r < 0.0 else 0.0
        if lu >= bound:
            continue
        if code == C_PYTHON:
            lt = loglike(trial_arr.copy())
        else:
            lt = _builtin_loglike(code, trial, p)
        evals += 1
        last_eval = True
        if lt > lmin:
            for i in range(ndim):
                cur[i] = trial[i]
            cur_l = lt
            accepted += 1
            last_acc = True
    return cur_arr, cur_l, accepted, evals, out_of_domain, last_acc, last_eval
