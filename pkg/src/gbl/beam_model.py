"""First-order Gaussian beams evaluated on a horizontal receiver line.

A beam is expanded around the point where its central ray meets the line
y = y_star: the phase to second order in the offset, the amplitude to zeroth
order, multiplied by a smooth compactly supported cutoff.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from . import _accel
from ._kernels import beam_sum_nb, cutoff_array, n_bisection_steps, python_namespace
from ._numpy_drivers import beam_sum_np
from .ray_engine import RaySample, hessian_entries

_PY = python_namespace()

RECEIVER_CHUNK = 128


class BeamMissesReceiver(LookupError):
    """The ray never crosses the receiver line going upward."""


class DegenerateBeam(ValueError):
    """Im(phi_xx) <= 0 at the receiver, so the beam has no Gaussian profile."""


@dataclass(frozen=True)
class Cutoff:
    """Smooth bump: 1 on |r| <= alpha/2, 0 on |r| >= alpha.  ``alpha = inf`` disables it."""

    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("cutoff radius must be positive")

    def __call__(self, r):
        if math.isinf(self.alpha):
            return np.ones_like(np.asarray(r, dtype=float))
        return cutoff_array(r, self.alpha)


NO_CUTOFF = Cutoff(math.inf)


@dataclass(frozen=True)
class ReceiverCrossing:
    s: float
    t_cross: float
    X: float
    sample: RaySample
    c: float
    phi_xx: complex

    @property
    def px(self):
        """x-component of the phase gradient on the ray."""
        return math.cos(self.sample.theta) / self.c


def _rhs(medium, x, y, th, Q, P):
    return _PY.ray_rhs(medium.kind, medium.param_array, x, y, th, Q, P)


def find_crossing(trace, y_star, medium):
    """Locate the first upward crossing of ``y = y_star`` on a stored trace.

    The crossing time is found by bisection on the cubic Hermite interpolant
    of y(t) between bracketing samples; the rest of the state is interpolated
    with the same Hermite basis.
    """
    y = trace.y
    has_dyn = trace.has_dynamics
    Q = trace.Q if has_dyn else np.ones(len(trace), complex)
    P = trace.P if has_dyn else np.full(len(trace), 1j)
    if y[0] == y_star:
        tc = float(trace.t[0])
        st = (trace.x[0], y[0], trace.theta[0], Q[0], P[0])
    else:
        up = np.nonzero((y[:-1] < y_star) & (y[1:] >= y_star))[0]
        if up.size == 0:
            raise BeamMissesReceiver(f"ray from s = {trace.s:g} does not reach y = {y_star:g}")
        k = int(up[0])
        t0, t1 = k * trace.dt, (k + 1) * trace.dt
        s0 = (trace.x[k], y[k], trace.theta[k], Q[k], P[k])
        s1 = (trace.x[k + 1], y[k + 1], trace.theta[k + 1], Q[k + 1], P[k + 1])
        f0 = _rhs(medium, *s0)
        f1 = _rhs(medium, *s1)
        a, b = t0, t1
        for _ in range(n_bisection_steps(trace.dt)):
            m = 0.5 * (a + b)
            if _PY.hermite(t0, t1, s0[1], s1[1], f0[1], f1[1], m) < y_star:
                a = m
            else:
                b = m
        tc = 0.5 * (a + b)
        st = tuple(_PY.hermite(t0, t1, s0[q], s1[q], f0[q], f1[q], tc) for q in range(5))
    x, yc, th = float(st[0]), float(st[1]), float(st[2])
    c, (cx, cy), _ = medium.eval((x, yc))
    Qc = complex(st[3]) if has_dyn else None
    Pc = complex(st[4]) if has_dyn else None
    phi_xx = complex(hessian_entries(th, c, cx, cy, Pc, Qc)[0]) if has_dyn else complex("nan")
    sample = RaySample(float(tc), x, yc, th, Qc, Pc, trace.phase0 + float(tc))
    return ReceiverCrossing(trace.s, float(tc), x, sample, c, phi_xx)


def beam_width(omega, crossing, medium=None):
    """1 / sqrt(omega Im phi_xx) at the crossing."""
    im = crossing.phi_xx.imag
    if not im > 0:
        raise DegenerateBeam(f"Im phi_xx = {im:g} at s = {crossing.s:g}")
    return 1.0 / math.sqrt(omega * im)


def eval_beam(point_x, y_star, crossing, omega, amp, cutoff=Cutoff()):
    """Complex value of one beam at receiver abscissa(s) ``point_x`` on ``y = y_star``."""
    if abs(crossing.sample.y - y_star) > 1e-10:
        raise ValueError("crossing does not lie on the requested receiver line")
    r = np.asarray(point_x, dtype=float) - crossing.X
    phase = crossing.sample.phase_on_ray + r * crossing.px + 0.5 * r * r * crossing.phi_xx
    return cutoff(r) * complex(amp) * np.exp(1j * omega * phase)


@dataclass
class BeamCoefficients:
    """Per-beam data for the second-order Taylor beam, struct-of-arrays."""

    X: np.ndarray
    phase: np.ndarray
    px: np.ndarray
    phi_xx: np.ndarray
    amp: np.ndarray

    def __len__(self):
        return self.X.shape[0]

    def concat(self, other):
        return BeamCoefficients(*(np.concatenate((getattr(self, f), getattr(other, f)))
                                  for f in ("X", "phase", "px", "phi_xx", "amp")))


def coefficients_from_fan(medium, fan, amp_start, phase0=0.0):
    """Taylor-beam coefficients from a :class:`~gbl.ray_engine.FanCrossing`."""
    c, cx, cy, *_ = medium.derivatives(fan.x, fan.y)
    c = c + np.zeros_like(fan.x)
    phi_xx = hessian_entries(fan.theta, c, cx, cy, fan.P, fan.Q)[0]
    return BeamCoefficients(
        fan.x.copy(), phase0 + fan.t, np.cos(fan.theta) / c, np.asarray(phi_xx, complex),
        np.asarray(amp_start * fan.root, complex),
    )


def sum_beams(xr, coeffs, omega, cutoff, weight, workers=1):
    """``weight * sum_j cutoff * amp_j * exp(i omega phase_j)`` at each receiver.

    Beams are added in index order for every receiver, and receivers are split
    into fixed-size chunks, so the output does not depend on ``workers``.
    """
    xr = np.ascontiguousarray(xr, dtype=float)
    out = np.zeros(xr.shape[0], complex)
    if len(coeffs) == 0:
        return out
    driver = beam_sum_nb if _accel.use_numba() else beam_sum_np
    args = (np.ascontiguousarray(coeffs.X), np.ascontiguousarray(coeffs.phase),
            np.ascontiguousarray(coeffs.px), np.ascontiguousarray(coeffs.phi_xx),
            np.ascontiguousarray(coeffs.amp))
    alpha = float(cutoff.alpha)

    def work(a, b):
        driver(xr[a:b], *args, float(omega), alpha, float(weight), out[a:b])

    spans = [(i, min(i + RECEIVER_CHUNK, xr.shape[0])) for i in range(0, xr.shape[0], RECEIVER_CHUNK)]
    if workers and workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for fut in [pool.submit(work, a, b) for a, b in spans]:
                fut.result()
    else:
        for a, b in spans:
            work(a, b)
    return out
