"""Reference fields: geometrical optics, closed-form plane waves, and an
exact-profile beam sum used to isolate the Taylor-expansion error.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.interpolate import BPoly, CubicSpline

from .cc_analysis import taylor_coeffs
from .ray_engine import DEFAULT_DT, cross_fan, hessian_entries
from .superposition import CausticError, ComplexFieldSamples, check_monotone


@dataclass(frozen=True)
class GOSolution:
    receiver_xs: np.ndarray
    phase: np.ndarray
    amplitude: np.ndarray
    y_star: float

    def field(self, omega):
        return ComplexFieldSamples(self.receiver_xs, self.y_star, self.amplitude * np.exp(1j * omega * self.phase))


def go_fan(medium, source, y_star, s, dt=DEFAULT_DT, workers=1):
    """Real-ray fan: phase, its x-derivatives and amplitude at each crossing.

    Each ray starts with Q = 1 and P equal to the wavefront curvature over
    c, so Q stays real and its ratio gives the geometric spreading.  The
    starting amplitude 1/|x0'(s)| matches the boundary data that the beam sum
    reconstructs on a parametrized curve.
    """
    x0, y0 = source.point(s)
    c0 = medium.speed(x0, y0) + np.zeros_like(x0)
    P0 = source.curvature(s) / c0
    fan = cross_fan(medium, x0, y0, source.theta0(s), 1.0, P0, y_star, dt=dt, workers=workers)
    if not np.all(fan.ok):
        bad = int(np.sum(~fan.ok))
        raise CausticError(f"{bad} GO rays failed to reach y = {y_star:g} cleanly")
    if np.any(fan.Q.real <= 0):
        raise CausticError("geometric spreading changed sign: caustic before the receiver")
    check_monotone(fan.x, "GO crossing abscissas")
    c, cx, cy, *_ = medium.derivatives(fan.x, fan.y)
    c = c + np.zeros_like(fan.x)
    pxx = hessian_entries(fan.theta, c, cx, cy, fan.P.real, fan.Q.real)[0]
    amp = fan.root.real / source.jacobian(s)
    return fan.x, fan.t, np.cos(fan.theta) / c, np.asarray(pxx, float), amp


def go_field(medium, source, y_star, omega, fan_spacing, receiver_xs, s_range=None, dt=DEFAULT_DT, workers=1):
    """Geometrical-optics field on the receiver line, resampled from a ray fan.

    Phase is interpolated by quintic Hermite pieces using the exact slope and
    curvature along the line; amplitude by a cubic spline.
    """
    xr = np.asarray(receiver_xs, dtype=float)
    if s_range is None:
        s_range = _go_s_range(medium, source, y_star, xr, dt)
    n = max(8, int(math.ceil((s_range[1] - s_range[0]) / fan_spacing)) + 1)
    s = np.linspace(s_range[0], s_range[1], n)
    X, t, px, pxx, amp = go_fan(medium, source, y_star, s, dt, workers)
    order = np.argsort(X)
    X, t, px, pxx, amp = X[order], t[order], px[order], pxx[order], amp[order]
    if xr.min() < X[0] or xr.max() > X[-1]:
        raise ValueError("GO fan does not cover the receiver window; widen s_range")
    phase = BPoly.from_derivatives(X, np.column_stack((t, px, pxx)))(xr)
    amplitude = CubicSpline(X, amp)(xr)
    return GOSolution(xr, phase, amplitude.astype(complex), float(y_star))


def _go_s_range(medium, source, y_star, xr, dt):
    lim = source.s_limit
    cap = 0.999 * lim if math.isfinite(lim) else math.inf
    w = float(xr.max() - xr.min())
    guess = source.straight_ray_parameter([xr.min() - 0.5 * w - 0.5, xr.max() + 0.5 * w + 0.5], y_star)
    a, b = max(float(guess.min()), -cap), min(float(guess.max()), cap)
    span = b - a
    for _ in range(10):
        s = np.linspace(a, b, 33)
        X = go_fan(medium, source, y_star, s, dt)[0]
        if X.min() < xr.min() and X.max() > xr.max():
            return a, b
        a, b = max(a - span, -cap), min(b + span, cap)
    raise CausticError("GO fan cannot cover the receiver window")


def exact_field_constant(omega, y_star, receiver_xs, c0=1.0):
    """Plane wave exp(i omega y / c0) for a flat source in a homogeneous medium."""
    xr = np.asarray(receiver_xs, dtype=float)
    return ComplexFieldSamples(xr, float(y_star), np.full(xr.shape, np.exp(1j * omega * y_star / c0)))


def exact_plane_wave(omega, receiver_xs, y_star, angle, c0=1.0):
    """exp(i omega (x cos a + y sin a) / c0), the field of an oblique flat source."""
    xr = np.asarray(receiver_xs, dtype=float)
    phase = (xr * math.cos(angle) + y_star * math.sin(angle)) / c0
    return ComplexFieldSamples(xr, float(y_star), np.exp(1j * omega * phase))


def ray_centered_beams(bundle, xs, cutoff=None):
    """Beam sum with each beam evaluated in its own ray-centred frame (homogeneous c = 1).

    Each beam keeps the transverse phase through fourth order and amplitude
    through second order, so its difference from the second-order Taylor beam
    is the leading Taylor-expansion error.  The quartic phase term enters
    linearized.
    """
    med = bundle.medium
    if not med.is_constant or med.params[0] != 1.0:
        raise ValueError("ray-centred reference needs a homogeneous medium with c = 1")
    cfg = bundle.config
    cut = cfg.cutoff if cutoff is None else cutoff
    xs = np.asarray(xs, dtype=float)
    x0, y0 = bundle.source.point(bundle.s)
    th = bundle.source.theta0(bundle.s)
    Q0 = float(np.real(cfg.Q0))
    out = np.zeros(xs.shape, complex)
    d = (np.cos(th), np.sin(th))
    for j in range(bundle.s.size):
        X = bundle.crossings.x[j]
        r = xs - X
        w = cut(r)
        near = w != 0
        if not np.any(near):
            continue
        px, py = xs[near] - x0[j], cfg.y_star - y0[j]
        t = px * d[0][j] + py * d[1][j]
        n = px * d[1][j] - py * d[0][j]
        k = taylor_coeffs(t, Q0)
        phase = t + 0.5 * k.phi2 * n * n
        amp = k.A0 + 0.5 * k.A2 * n * n + 1j * cfg.omega * k.A0 * k.phi4 * n**4 / 24.0
        out[near] += w[near] * cfg.amp0 * amp * np.exp(1j * cfg.omega * phase)
    return ComplexFieldSamples(xs, cfg.y_star, bundle.weight * out)


def measured_taylor_error(bundle, xs, workers=1):
    """|ordinary beam sum - ray-centred beam sum| at ``xs``."""
    from .superposition import field_discrete

    return np.abs(field_discrete(bundle, xs=xs, workers=workers).values - ray_centered_beams(bundle, xs).values)


__all__ = [
    "GOSolution", "exact_field_constant", "exact_plane_wave", "go_fan", "go_field",
    "measured_taylor_error", "ray_centered_beams",
]
