"""Hot numeric kernels.

Every function here is written so the same body runs on scalars (inside the
numba per-ray drivers) and on numpy arrays (inside the vectorized drivers of
``_numpy_drivers``).  ``python_namespace`` returns un-jitted clones whose
nested calls also resolve to un-jitted code, so the numpy path never
triggers a numba compilation.
"""

import math
import types

import numpy as np

from ._accel import njit

CONSTANT = 0
WAVEGUIDE = 1

# ray status codes
OK = 0
MISSED = 1
EXITED = 2
BRANCH = 3
NONFINITE = 4

STATUS_NAMES = {OK: "ok", MISSED: "missed", EXITED: "exited", BRANCH: "branch", NONFINITE: "nonfinite"}

HALF_PI = 0.5 * math.pi


@njit
def medium_eval(kind, params, x, y):
    """Return ``(c, c_x, c_y, c_xx, c_xy, c_yy)``."""
    if kind == CONSTANT:
        z = 0.0 * x
        return params[0] + z, z, z, z, z, z
    c0 = params[0]
    a = params[1]
    kx = params[2]
    ky = params[3]
    sx = np.sin(kx * x)
    cx = np.cos(kx * x)
    sy = np.sin(ky * y)
    cy = np.cos(ky * y)
    return (
        c0 + a * sx * sy,
        a * kx * cx * sy,
        a * ky * sx * cy,
        -a * kx * kx * sx * sy,
        a * kx * ky * cx * cy,
        -a * ky * ky * sx * sy,
    )


@njit
def ray_rhs(kind, params, x, y, th, Q, P):
    c, cx, cy, cxx, cxy, cyy = medium_eval(kind, params, x, y)
    s = np.sin(th)
    co = np.cos(th)
    dq = c * c * P
    dp = -(cxx * s * s - 2.0 * cxy * s * co + cyy * co * co) / c * Q
    return c * co, c * s, cx * s - cy * co, dq, dp


@njit
def rk4_increment(kind, params, dt, x, y, th, Q, P):
    """State increment of one classical RK4 step of the coupled central + dynamic system."""
    h2 = 0.5 * dt
    a1, b1, c1, d1, e1 = ray_rhs(kind, params, x, y, th, Q, P)
    a2, b2, c2, d2, e2 = ray_rhs(
        kind, params, x + h2 * a1, y + h2 * b1, th + h2 * c1, Q + h2 * d1, P + h2 * e1
    )
    a3, b3, c3, d3, e3 = ray_rhs(
        kind, params, x + h2 * a2, y + h2 * b2, th + h2 * c2, Q + h2 * d2, P + h2 * e2
    )
    a4, b4, c4, d4, e4 = ray_rhs(
        kind, params, x + dt * a3, y + dt * b3, th + dt * c3, Q + dt * d3, P + dt * e3
    )
    w = dt / 6.0
    return (
        w * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
        w * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
        w * (c1 + 2.0 * c2 + 2.0 * c3 + c4),
        w * (d1 + 2.0 * d2 + 2.0 * d3 + d4),
        w * (e1 + 2.0 * e2 + 2.0 * e3 + e4),
    )


@njit
def kahan_add(s, comp, inc):
    """Compensated ``s + inc``; returns the new sum and compensation."""
    yk = inc - comp
    t = s + yk
    return t, (t - s) - yk


@njit
def rk4_step(kind, params, dt, x, y, th, Q, P, ex, ey, eth, eQ, eP):
    """One RK4 step with compensated accumulation of every state component.

    Thousands of small steps would otherwise lose ~1e-13 in position, which
    the phase turns into an error of order omega * 1e-13.
    """
    dx, dy, dth, dQ, dP = rk4_increment(kind, params, dt, x, y, th, Q, P)
    x, ex = kahan_add(x, ex, dx)
    y, ey = kahan_add(y, ey, dy)
    th, eth = kahan_add(th, eth, dth)
    Q, eQ = kahan_add(Q, eQ, dQ)
    P, eP = kahan_add(P, eP, dP)
    return x, y, th, Q, P, ex, ey, eth, eQ, eP


@njit
def hermite(t0, t1, f0, f1, d0, d1, tau):
    """Cubic Hermite interpolant on [t0, t1] with end slopes d0, d1."""
    hh = t1 - t0
    u = (tau - t0) / hh
    u2 = u * u
    u3 = u2 * u
    return (
        (2.0 * u3 - 3.0 * u2 + 1.0) * f0
        + (u3 - 2.0 * u2 + u) * hh * d0
        + (-2.0 * u3 + 3.0 * u2) * f1
        + (u3 - u2) * hh * d1
    )


@njit
def cutoff_value(r, alpha):
    a = abs(r)
    half = 0.5 * alpha
    if a <= half:
        return 1.0
    if a >= alpha:
        return 0.0
    u = (a - half) / half
    f1 = math.exp(-1.0 / u)
    f2 = math.exp(-1.0 / (1.0 - u))
    return f2 / (f1 + f2)


def cutoff_array(r, alpha):
    a = np.abs(np.asarray(r, dtype=float))
    half = 0.5 * alpha
    out = np.where(a <= half, 1.0, 0.0)
    mid = (a > half) & (a < alpha)
    if np.any(mid):
        u = (a[mid] - half) / half
        f1 = np.exp(-1.0 / u)
        f2 = np.exp(-1.0 / (1.0 - u))
        out[mid] = f2 / (f1 + f2)
    return out


def n_bisection_steps(dt, tol=1e-16):
    # bisect to roundoff: the crossing time feeds the phase, which gets multiplied by omega
    return max(1, int(math.ceil(math.log2(dt / tol))) + 1)


# ---------------------------------------------------------------- numba drivers


@njit
def trace_rays_nb(kind, params, bbox, x0, y0, th0, Q0, P0, dt, nsteps, xs, ys, ths, Qs, Ps, nvalid, status):
    """Integrate each ray for ``nsteps`` steps, storing every sample.

    ``Q0``/``P0`` are per-ray complex arrays.

    Stops early (status EXITED) when a ray leaves ``bbox`` and
    (status NONFINITE) on a non-finite state.
    """
    xmin, xmax, ymin, ymax = bbox[0], bbox[1], bbox[2], bbox[3]
    for r in range(x0.shape[0]):
        x = x0[r]
        y = y0[r]
        th = th0[r]
        Q = Q0[r]
        P = P0[r]
        xs[r, 0] = x
        ys[r, 0] = y
        ths[r, 0] = th
        Qs[r, 0] = Q
        Ps[r, 0] = P
        nvalid[r] = nsteps + 1
        status[r] = OK
        ex = 0.0
        ey = 0.0
        eth = 0.0
        eQ = 0.0j
        eP = 0.0j
        for k in range(nsteps):
            x, y, th, Q, P, ex, ey, eth, eQ, eP = rk4_step(kind, params, dt, x, y, th, Q, P, ex, ey, eth, eQ, eP)
            if not (np.isfinite(x) and np.isfinite(y) and np.isfinite(th)
                    and np.isfinite(Q.real) and np.isfinite(Q.imag)
                    and np.isfinite(P.real) and np.isfinite(P.imag)):
                nvalid[r] = k + 1
                status[r] = NONFINITE
                break
            if x < xmin or x > xmax or y < ymin or y > ymax:
                nvalid[r] = k + 1
                status[r] = EXITED
                break
            xs[r, k + 1] = x
            ys[r, k + 1] = y
            ths[r, k + 1] = th
            Qs[r, k + 1] = Q
            Ps[r, k + 1] = P


@njit
def cross_rays_nb(kind, params, bbox, x0, y0, th0, Q0, P0, dt, nmax, y_star, nbis, real_out, cplx_out, status):
    """Trace rays up to their first upward crossing of ``y = y_star``.

    ``real_out[:, :]`` receives ``t, x, y, theta, c`` at the crossing and
    ``cplx_out[:, :]`` receives ``Q, P, sqrt(c Q0 / (c_start Q))`` with the
    square-root branch followed continuously from t = 0.
    """
    xmin, xmax, ymin, ymax = bbox[0], bbox[1], bbox[2], bbox[3]
    for r in range(x0.shape[0]):
        x = x0[r]
        y = y0[r]
        th = th0[r]
        Q = Q0[r]
        P = P0[r]
        c_start = medium_eval(kind, params, x, y)[0]
        ratio = 1.0 + 0.0j
        arg = 0.0
        status[r] = MISSED
        if y == y_star:
            real_out[r, 0] = 0.0
            real_out[r, 1] = x
            real_out[r, 2] = y
            real_out[r, 3] = th
            real_out[r, 4] = c_start
            cplx_out[r, 0] = Q
            cplx_out[r, 1] = P
            cplx_out[r, 2] = 1.0 + 0.0j
            status[r] = OK
            continue
        ex = 0.0
        ey = 0.0
        eth = 0.0
        eQ = 0.0j
        eP = 0.0j
        for k in range(nmax):
            xn, yn, thn, Qn, Pn, ex, ey, eth, eQ, eP = rk4_step(
                kind, params, dt, x, y, th, Q, P, ex, ey, eth, eQ, eP
            )
            if not (np.isfinite(xn) and np.isfinite(yn) and np.isfinite(thn)
                    and np.isfinite(Qn.real) and np.isfinite(Qn.imag)
                    and np.isfinite(Pn.real) and np.isfinite(Pn.imag)):
                status[r] = NONFINITE
                break
            if y < y_star and yn >= y_star:
                t0 = k * dt
                t1 = (k + 1) * dt
                f0 = ray_rhs(kind, params, x, y, th, Q, P)
                f1 = ray_rhs(kind, params, xn, yn, thn, Qn, Pn)
                a = t0
                b = t1
                for it in range(nbis):
                    m = 0.5 * (a + b)
                    if hermite(t0, t1, y, yn, f0[1], f1[1], m) < y_star:
                        a = m
                    else:
                        b = m
                tc = 0.5 * (a + b)
                xc = hermite(t0, t1, x, xn, f0[0], f1[0], tc)
                yc = hermite(t0, t1, y, yn, f0[1], f1[1], tc)
                thc = hermite(t0, t1, th, thn, f0[2], f1[2], tc)
                Qc = hermite(t0, t1, Q, Qn, f0[3], f1[3], tc)
                Pc = hermite(t0, t1, P, Pn, f0[4], f1[4], tc)
                cc = medium_eval(kind, params, xc, yc)[0]
                rc = cc * Q0[r] / (c_start * Qc)
                d = np.angle(rc / ratio)
                if abs(d) > HALF_PI:
                    status[r] = BRANCH
                    break
                arg += d
                real_out[r, 0] = tc
                real_out[r, 1] = xc
                real_out[r, 2] = yc
                real_out[r, 3] = thc
                real_out[r, 4] = cc
                cplx_out[r, 0] = Qc
                cplx_out[r, 1] = Pc
                cplx_out[r, 2] = math.sqrt(abs(rc)) * np.exp(0.5j * arg)
                status[r] = OK
                break
            if xn < xmin or xn > xmax or yn < ymin or yn > ymax:
                status[r] = EXITED
                break
            cn = medium_eval(kind, params, xn, yn)[0]
            rn = cn * Q0[r] / (c_start * Qn)
            d = np.angle(rn / ratio)
            if abs(d) > HALF_PI:
                status[r] = BRANCH
                break
            arg += d
            ratio = rn
            x, y, th, Q, P = xn, yn, thn, Qn, Pn


@njit
def beam_sum_nb(xr, X, phase, px, phixx, amp, omega, alpha, weight, out):
    """``out[i] = weight * sum_j cutoff * amp_j * exp(i omega phase_j(x_i))`` in fixed j order."""
    for i in range(xr.shape[0]):
        acc = 0.0 + 0.0j
        for j in range(X.shape[0]):
            r = xr[i] - X[j]
            cut = cutoff_value(r, alpha)
            if cut == 0.0:
                continue
            ph = phase[j] + r * px[j] + 0.5 * r * r * phixx[j]
            acc += cut * amp[j] * np.exp(1j * omega * ph)
        out[i] = weight * acc


def python_namespace(module=None):
    """Un-jitted clones of this module's functions, wired to call each other."""
    import sys

    module = module or sys.modules[__name__]
    env = dict(vars(module))
    for name, obj in list(env.items()):
        py = getattr(obj, "py_func", None)
        if py is not None:
            env[name] = types.FunctionType(py.__code__, env, name, py.__defaults__, py.__closure__)
    return types.SimpleNamespace(**env)
