"""Pure-numpy drivers, vectorized over rays (and over receivers for the beam sum).

They mirror the per-ray loops in ``_kernels`` operation for operation, so the
two backends agree to rounding.
"""

import math

import numpy as np

from ._kernels import BRANCH, EXITED, MISSED, NONFINITE, OK, cutoff_array, python_namespace

_K = python_namespace()


def _finite(*arrs):
    ok = np.ones(arrs[0].shape, dtype=bool)
    for a in arrs:
        ok &= np.isfinite(a)
    return ok


def trace_rays_np(kind, params, bbox, x0, y0, th0, Q0, P0, dt, nsteps, xs, ys, ths, Qs, Ps, nvalid, status):
    xmin, xmax, ymin, ymax = bbox
    n = x0.shape[0]
    x = x0.astype(float).copy()
    y = y0.astype(float).copy()
    th = th0.astype(float).copy()
    Q = np.asarray(Q0, dtype=complex).copy()
    P = np.asarray(P0, dtype=complex).copy()
    xs[:, 0] = x
    ys[:, 0] = y
    ths[:, 0] = th
    Qs[:, 0] = Q
    Ps[:, 0] = P
    nvalid[:] = nsteps + 1
    status[:] = OK
    comp = [np.zeros(n), np.zeros(n), np.zeros(n), np.zeros(n, complex), np.zeros(n, complex)]
    live = np.arange(n)
    for k in range(nsteps):
        if live.size == 0:
            break
        xn, yn, thn, Qn, Pn, *ecn = _K.rk4_step(kind, params, dt, x[live], y[live], th[live], Q[live], P[live],
                                               *(e[live] for e in comp))
        bad = ~_finite(xn, yn, thn, Qn.real, Qn.imag, Pn.real, Pn.imag)
        out = ~bad & ((xn < xmin) | (xn > xmax) | (yn < ymin) | (yn > ymax))
        stop = bad | out
        if np.any(stop):
            nvalid[live[stop]] = k + 1
            status[live[bad]] = NONFINITE
            status[live[out]] = EXITED
        keep = ~stop
        idx = live[keep]
        x[idx], y[idx], th[idx], Q[idx], P[idx] = xn[keep], yn[keep], thn[keep], Qn[keep], Pn[keep]
        for e, en in zip(comp, ecn):
            e[idx] = en[keep]
        xs[idx, k + 1] = xn[keep]
        ys[idx, k + 1] = yn[keep]
        ths[idx, k + 1] = thn[keep]
        Qs[idx, k + 1] = Qn[keep]
        Ps[idx, k + 1] = Pn[keep]
        live = idx


def cross_rays_np(kind, params, bbox, x0, y0, th0, Q0, P0, dt, nmax, y_star, nbis, real_out, cplx_out, status):
    xmin, xmax, ymin, ymax = bbox
    n = x0.shape[0]
    x = x0.astype(float).copy()
    y = y0.astype(float).copy()
    th = th0.astype(float).copy()
    Q = np.asarray(Q0, dtype=complex).copy()
    P = np.asarray(P0, dtype=complex).copy()
    c_start = _K.medium_eval(kind, params, x, y)[0] + np.zeros(n)
    ratio = np.ones(n, dtype=complex)
    arg = np.zeros(n)
    status[:] = MISSED

    at_start = y == y_star
    if np.any(at_start):
        real_out[at_start, 0] = 0.0
        real_out[at_start, 1] = x[at_start]
        real_out[at_start, 2] = y[at_start]
        real_out[at_start, 3] = th[at_start]
        real_out[at_start, 4] = c_start[at_start]
        cplx_out[at_start, 0] = Q[at_start]
        cplx_out[at_start, 1] = P[at_start]
        cplx_out[at_start, 2] = 1.0
        status[at_start] = OK
    live = np.nonzero(~at_start)[0]
    comp = [np.zeros(n), np.zeros(n), np.zeros(n), np.zeros(n, complex), np.zeros(n, complex)]

    for k in range(nmax):
        if live.size == 0:
            break
        xl, yl, thl, Ql, Pl = x[live], y[live], th[live], Q[live], P[live]
        xn, yn, thn, Qn, Pn, *ecn = _K.rk4_step(kind, params, dt, xl, yl, thl, Ql, Pl, *(e[live] for e in comp))
        bad = ~_finite(xn, yn, thn, Qn.real, Qn.imag, Pn.real, Pn.imag)
        status[live[bad]] = NONFINITE
        cross = ~bad & (yl < y_star) & (yn >= y_star)
        done = bad.copy()
        if np.any(cross):
            ci = np.nonzero(cross)[0]
            t0 = k * dt
            t1 = (k + 1) * dt
            s0 = (xl[ci], yl[ci], thl[ci], Ql[ci], Pl[ci])
            s1 = (xn[ci], yn[ci], thn[ci], Qn[ci], Pn[ci])
            f0 = _K.ray_rhs(kind, params, *s0)
            f1 = _K.ray_rhs(kind, params, *s1)
            a = np.full(ci.size, t0)
            b = np.full(ci.size, t1)
            for _ in range(nbis):
                m = 0.5 * (a + b)
                below = _K.hermite(t0, t1, s0[1], s1[1], f0[1], f1[1], m) < y_star
                a = np.where(below, m, a)
                b = np.where(below, b, m)
            tc = 0.5 * (a + b)
            st = [_K.hermite(t0, t1, s0[q], s1[q], f0[q], f1[q], tc) for q in range(5)]
            cc = _K.medium_eval(kind, params, st[0], st[1])[0] + np.zeros(ci.size)
            gi = live[ci]
            rc = cc * Q0[gi] / (c_start[gi] * st[3])
            d = np.angle(rc / ratio[gi])
            jump = np.abs(d) > 0.5 * math.pi
            argc = arg[gi] + d
            good = ~jump
            g = gi[good]
            real_out[g, 0] = tc[good]
            real_out[g, 1] = st[0][good]
            real_out[g, 2] = st[1][good]
            real_out[g, 3] = st[2][good]
            real_out[g, 4] = cc[good]
            cplx_out[g, 0] = st[3][good]
            cplx_out[g, 1] = st[4][good]
            cplx_out[g, 2] = np.sqrt(np.abs(rc[good])) * np.exp(0.5j * argc[good])
            status[g] = OK
            status[gi[jump]] = BRANCH
            done[ci] = True

        rest = ~done
        out = rest & ((xn < xmin) | (xn > xmax) | (yn < ymin) | (yn > ymax))
        status[live[out]] = EXITED
        rest &= ~out
        ri = np.nonzero(rest)[0]
        gi = live[ri]
        cn = _K.medium_eval(kind, params, xn[ri], yn[ri])[0] + np.zeros(ri.size)
        rn = cn * Q0[gi] / (c_start[gi] * Qn[ri])
        d = np.angle(rn / ratio[gi])
        jump = np.abs(d) > 0.5 * math.pi
        status[gi[jump]] = BRANCH
        ok = ~jump
        g = gi[ok]
        r_ok = ri[ok]
        arg[g] += d[ok]
        ratio[g] = rn[ok]
        x[g], y[g], th[g], Q[g], P[g] = xn[r_ok], yn[r_ok], thn[r_ok], Qn[r_ok], Pn[r_ok]
        for e, en in zip(comp, ecn):
            e[g] = en[r_ok]
        live = g


def beam_sum_np(xr, X, phase, px, phixx, amp, omega, alpha, weight, out):
    acc = np.zeros(xr.shape[0], dtype=complex)
    for j in range(X.shape[0]):
        r = xr - X[j]
        cut = cutoff_array(r, alpha)
        near = cut != 0.0
        if not np.any(near):
            continue
        rn = r[near]
        ph = phase[j] + rn * px[j] + 0.5 * rn * rn * phixx[j]
        acc[near] += cut[near] * amp[j] * np.exp(1j * omega * ph)
    out[:] = weight * acc
