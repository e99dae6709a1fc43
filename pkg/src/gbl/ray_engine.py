"""Central-ray and dynamic ray tracing with a fixed-step RK4 integrator.

The central ray (x, y, theta) and the dynamic quantities (Q, P) are always
integrated together in one coupled pass.  Batches of rays go through the
numba drivers when available, otherwise through the numpy drivers; both are
chunked with a chunk size that does not depend on the worker count, so the
results are bit-identical for any ``workers``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from . import _accel
from ._kernels import (
    BRANCH,
    EXITED,
    NONFINITE,
    OK,
    STATUS_NAMES,
    cross_rays_nb,
    n_bisection_steps,
    python_namespace,
    trace_rays_nb,
)
from ._numpy_drivers import cross_rays_np, trace_rays_np

_PY = python_namespace()

DEFAULT_DT = 1e-3
CHUNK = 64


class RayIntegrationError(RuntimeError):
    """Non-finite state while integrating a ray."""


class InvariantError(RuntimeError):
    """Dynamic ray data lost non-degeneracy (Im(P/Q) <= 0 or Q = 0)."""


class StepSizeError(RuntimeError):
    """The amplitude square root jumped by more than pi/2 between samples."""


@dataclass(frozen=True)
class RaySample:
    t: float
    x: float
    y: float
    theta: float
    Q: complex | None = None
    P: complex | None = None
    phase_on_ray: float = 0.0


@dataclass
class RayTrace:
    """Uniformly sampled ray.  ``Q``/``P`` are ``None`` for a central-only trace."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    Q: np.ndarray | None = None
    P: np.ndarray | None = None
    s: float = 0.0
    phase0: float = 0.0
    dt: float = DEFAULT_DT
    exit_time: float | None = None
    status: str = "ok"

    def __len__(self):
        return self.t.shape[0]

    @property
    def truncated(self):
        return self.exit_time is not None

    @property
    def has_dynamics(self):
        return self.Q is not None

    def sample(self, k):
        Q = None if self.Q is None else complex(self.Q[k])
        P = None if self.P is None else complex(self.P[k])
        return RaySample(
            float(self.t[k]), float(self.x[k]), float(self.y[k]), float(self.theta[k]),
            Q, P, self.phase0 + float(self.t[k]),
        )

    @property
    def samples(self):
        return [self.sample(k) for k in range(len(self))]


# ------------------------------------------------------------------ batches


def _chunks(n, size=CHUNK):
    return [(i, min(i + size, n)) for i in range(0, n, size)]


def _run_chunks(fn, n, workers):
    spans = _chunks(n)
    if workers is None or workers <= 1 or len(spans) <= 1:
        for a, b in spans:
            fn(a, b)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for fut in [pool.submit(fn, a, b) for a, b in spans]:
            fut.result()


def _per_ray(v, n):
    """Broadcast a scalar or array of initial dynamic data to a complex array of length n."""
    return np.ascontiguousarray(np.broadcast_to(np.asarray(v, dtype=complex), (n,)))


@dataclass
class FanTrace:
    """Full sample arrays for a batch of rays, shape (n_rays, nsteps + 1)."""

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    Q: np.ndarray
    P: np.ndarray
    nvalid: np.ndarray
    status: np.ndarray
    dt: float


def trace_fan(medium, x0, y0, theta0, Q0, P0, dt, nsteps, workers=1):
    x0 = np.ascontiguousarray(x0, dtype=float)
    y0 = np.ascontiguousarray(y0, dtype=float)
    th0 = np.ascontiguousarray(theta0, dtype=float)
    n = x0.shape[0]
    shape = (n, nsteps + 1)
    xs, ys, ths = np.zeros(shape), np.zeros(shape), np.zeros(shape)
    Qs, Ps = np.zeros(shape, complex), np.zeros(shape, complex)
    nvalid = np.zeros(n, np.int64)
    status = np.zeros(n, np.int64)
    kind, params, bbox = medium.kind, medium.param_array, medium.bbox
    driver = trace_rays_nb if _accel.use_numba() else trace_rays_np
    Q0, P0 = _per_ray(Q0, n), _per_ray(P0, n)

    def work(a, b):
        driver(kind, params, bbox, x0[a:b], y0[a:b], th0[a:b], Q0[a:b], P0[a:b], float(dt), int(nsteps),
               xs[a:b], ys[a:b], ths[a:b], Qs[a:b], Ps[a:b], nvalid[a:b], status[a:b])

    _run_chunks(work, n, workers)
    return FanTrace(xs, ys, ths, Qs, Ps, nvalid, status, float(dt))


@dataclass
class FanCrossing:
    """State of each ray where it first crosses ``y = y_star`` going upward.

    ``root`` holds ``sqrt(c Q0 / (c_start Q))`` on the continuously tracked branch.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    c: np.ndarray
    Q: np.ndarray
    P: np.ndarray
    root: np.ndarray
    status: np.ndarray
    y_star: float

    @property
    def ok(self):
        return self.status == OK

    def subset(self, mask):
        return FanCrossing(self.t[mask], self.x[mask], self.y[mask], self.theta[mask], self.c[mask],
                           self.Q[mask], self.P[mask], self.root[mask], self.status[mask], self.y_star)


def cross_fan(medium, x0, y0, theta0, Q0, P0, y_star, dt=DEFAULT_DT, t_max=None, workers=1):
    """Trace each ray just far enough to reach the receiver line."""
    x0 = np.ascontiguousarray(x0, dtype=float)
    y0 = np.ascontiguousarray(y0, dtype=float)
    th0 = np.ascontiguousarray(theta0, dtype=float)
    n = x0.shape[0]
    if t_max is None:
        xmin, xmax, ymin, ymax = medium.domain
        cmin = float(np.min(medium.speed(np.linspace(xmin, xmax, 65)[:, None], np.linspace(ymin, ymax, 65))))
        t_max = 4.0 * math.hypot(xmax - xmin, ymax - ymin) / cmin
    nmax = int(math.ceil(t_max / dt))
    real = np.zeros((n, 5))
    cplx = np.zeros((n, 3), complex)
    status = np.zeros(n, np.int64)
    kind, params, bbox = medium.kind, medium.param_array, medium.bbox
    driver = cross_rays_nb if _accel.use_numba() else cross_rays_np
    nbis = n_bisection_steps(dt)
    Q0, P0 = _per_ray(Q0, n), _per_ray(P0, n)

    def work(a, b):
        driver(kind, params, bbox, x0[a:b], y0[a:b], th0[a:b], Q0[a:b], P0[a:b], float(dt), nmax, float(y_star),
               nbis, real[a:b], cplx[a:b], status[a:b])

    _run_chunks(work, n, workers)
    return FanCrossing(real[:, 0], real[:, 1], real[:, 2], real[:, 3], real[:, 4],
                       cplx[:, 0], cplx[:, 1], cplx[:, 2], status, float(y_star))


# --------------------------------------------------------------- single rays


def _single(medium, start, theta0, T, dt, Q0, P0, s, phase0):
    if dt <= 0:
        raise ValueError("dt must be positive")
    if T < dt:
        raise ValueError("duration T must be at least dt")
    x0, y0 = float(start[0]), float(start[1])
    medium.check_point(x0, y0)
    nsteps = max(1, int(round(T / dt)))
    fan = trace_fan(medium, [x0], [y0], [theta0], Q0, P0, dt, nsteps)
    nv = int(fan.nvalid[0])
    code = int(fan.status[0])
    if code == NONFINITE:
        raise RayIntegrationError(f"non-finite ray state after t = {nv * dt:g}")
    t = np.arange(nv) * dt
    exit_time = nv * dt if code == EXITED else None
    return fan, nv, RayTrace(
        t, fan.x[0, :nv].copy(), fan.y[0, :nv].copy(), fan.theta[0, :nv].copy(),
        s=float(s), phase0=float(phase0), dt=float(dt), exit_time=exit_time, status=STATUS_NAMES[code],
    )


def trace_central(medium, start, theta0, T, dt=DEFAULT_DT, s=0.0, phase0=0.0):
    """RK4 central ray from ``start`` with initial angle ``theta0`` for duration ``T``.

    A ray that leaves the medium box is returned truncated, with ``exit_time`` set.
    """
    _, _, trace = _single(medium, start, theta0, T, dt, 1.0, 1j, s, phase0)
    return trace


def trace_dynamic(medium, ray, Q0=1.0, P0=1j):
    """Fill in Q, P along an already traced ray.

    The coupled system is re-integrated from the ray's start with the same
    step, so (x, y, theta) are reproduced bit for bit.
    """
    Q0, P0 = complex(Q0), complex(P0)
    if Q0 == 0 or (P0 / Q0).imag <= 0:
        raise InvariantError("initial data need Q0 != 0 and Im(P0/Q0) > 0")
    fan = trace_fan(medium, [ray.x[0]], [ray.y[0]], [ray.theta[0]], Q0, P0, ray.dt, len(ray) - 1)
    n = len(ray)
    Q = fan.Q[0, :n].copy()
    P = fan.P[0, :n].copy()
    _check_nondegenerate(Q, P, ray.t)
    return RayTrace(ray.t, ray.x, ray.y, ray.theta, Q, P, ray.s, ray.phase0, ray.dt, ray.exit_time, ray.status)


def _check_nondegenerate(Q, P, t):
    zero = Q == 0
    if np.any(zero):
        raise InvariantError(f"Q vanished at t = {t[np.argmax(zero)]:g}")
    bad = (P / Q).imag <= 0
    if np.any(bad):
        raise InvariantError(f"Im(P/Q) <= 0 at t = {t[np.argmax(bad)]:g}; reduce dt or check the medium")


def trace_beam(medium, start, theta0, T, dt=DEFAULT_DT, Q0=1.0, P0=1j, s=0.0, phase0=0.0):
    """Central ray and dynamic data in one call."""
    Q0, P0 = complex(Q0), complex(P0)
    if Q0 == 0 or (P0 / Q0).imag <= 0:
        raise InvariantError("initial data need Q0 != 0 and Im(P0/Q0) > 0")
    fan, nv, trace = _single(medium, start, theta0, T, dt, Q0, P0, s, phase0)
    trace.Q = fan.Q[0, :nv].copy()
    trace.P = fan.P[0, :nv].copy()
    _check_nondegenerate(trace.Q, trace.P, trace.t)
    return trace


# ------------------------------------------------------ hessian and amplitude


def hessian_entries(theta, c, cx, cy, P, Q):
    """Entries ``(phi_xx, phi_xy, phi_yy)`` of the phase Hessian, vectorized."""
    s = np.sin(theta)
    co = np.cos(theta)
    c1 = s * cx - co * cy
    c2 = co * cx + s * cy
    n11 = P / Q
    n12 = -c1 / (c * c)
    n22 = -c2 / (c * c)
    # H = [[s, co], [-co, s]];  D2phi = H N H^T
    pxx = s * s * n11 + 2.0 * s * co * n12 + co * co * n22
    pxy = -s * co * n11 + (s * s - co * co) * n12 + s * co * n22
    pyy = co * co * n11 - 2.0 * s * co * n12 + s * s * n22
    return pxx, pxy, pyy


def phase_hessian(sample, medium):
    """Complex symmetric 2x2 Hessian of the beam phase at a ray sample."""
    if sample.Q is None or sample.P is None:
        raise ValueError("sample carries no dynamic data; use trace_dynamic first")
    if sample.Q == 0:
        raise InvariantError("degenerate beam: Q = 0")
    c, (cx, cy), _ = medium.eval((sample.x, sample.y))
    pxx, pxy, pyy = hessian_entries(sample.theta, c, cx, cy, sample.P, sample.Q)
    return np.array([[pxx, pxy], [pxy, pyy]], dtype=complex)


def _pick_branch(root, ref):
    """Choose +root or -root, whichever is closer in argument to ``ref``."""
    if ref is None:
        return root
    return root if abs(np.angle(root / ref)) <= 0.5 * math.pi else -root


def amplitude_on_ray(sample, medium, A_start, c_start, Q_start, branch_ref=None):
    """``A_start * sqrt(c Q_start / (c_start Q))`` at one sample.

    Without ``branch_ref`` the principal root is returned; pass the root from
    a neighbouring sample (see :func:`amplitude_along`) to continue a branch.
    """
    if sample.Q is None:
        raise ValueError("sample carries no dynamic data")
    c = medium.eval((sample.x, sample.y))[0]
    root = np.sqrt(complex(c * Q_start / (c_start * sample.Q)))
    return complex(A_start) * _pick_branch(root, branch_ref)


def amplitude_along(trace, medium, A_start=1.0):
    """Amplitude at every sample with the square-root branch followed from t = 0."""
    if not trace.has_dynamics:
        raise ValueError("trace carries no dynamic data")
    c = medium.speed(trace.x, trace.y)
    ratio = c * trace.Q[0] / (c[0] * trace.Q)
    steps = np.angle(ratio[1:] / ratio[:-1])
    big = np.abs(steps) > 0.5 * math.pi
    if np.any(big):
        k = int(np.argmax(big)) + 1
        raise StepSizeError(f"amplitude branch jump at t = {trace.t[k]:g}; reduce dt")
    arg = np.concatenate(([np.angle(ratio[0])], np.angle(ratio[0]) + np.cumsum(steps)))
    return complex(A_start) * np.sqrt(np.abs(ratio)) * np.exp(0.5j * arg)


def status_counts(status):
    return {STATUS_NAMES[k]: int(np.sum(status == k)) for k in STATUS_NAMES if np.any(status == k)}


__all__ = [
    "BRANCH", "DEFAULT_DT", "FanCrossing", "FanTrace", "InvariantError", "RayIntegrationError",
    "RaySample", "RayTrace", "StepSizeError", "amplitude_along", "amplitude_on_ray", "cross_fan",
    "hessian_entries", "phase_hessian", "status_counts", "trace_beam", "trace_central",
    "trace_dynamic", "trace_fan",
]
