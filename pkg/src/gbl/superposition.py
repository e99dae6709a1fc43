"""Plane-wave initial data decomposed into Gaussian beams, and the beam sums.

Beam j starts at x0(s_j), s_j = j h, with width parameter eta0 =
sqrt(2 / (omega Im(P0/Q0))) and amplitude 1 / (sqrt(pi omega) eta0).  The
discrete field is ``sqrt(omega) h sum_j beam_j``; refining h with freshly
traced beams approximates the continuous superposition integral.
"""

from dataclasses import dataclass, field, replace
import math
import warnings

import numpy as np

from .beam_model import BeamCoefficients, Cutoff, coefficients_from_fan, sum_beams
from .ray_engine import DEFAULT_DT, FanCrossing, cross_fan, hessian_entries, status_counts


class ConfigError(ValueError):
    """Invalid superposition parameters."""


class CausticError(RuntimeError):
    """Crossing abscissas X(s) are not strictly monotone: rays cross before the receiver."""


@dataclass(frozen=True)
class ComplexFieldSamples:
    xs: np.ndarray
    y_star: float
    values: np.ndarray

    def __sub__(self, other):
        if self.xs.shape != other.xs.shape or not np.array_equal(self.xs, other.xs):
            raise ValueError("field samples live on different receiver grids")
        return ComplexFieldSamples(self.xs, self.y_star, self.values - other.values)

    @property
    def magnitude(self):
        return np.abs(self.values)


@dataclass(frozen=True)
class SuperposConfig:
    omega: float
    Q0: float = 1.0
    y_star: float = 2.0
    receiver_xs: np.ndarray = field(default_factory=lambda: np.linspace(-0.5, 0.5, 400))
    P0: complex = 1j
    h: float | None = None
    s_range: tuple | None = None
    alpha: float = 1.0
    dt: float = DEFAULT_DT

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigError("omega must be positive")
        q = complex(self.Q0)
        if q == 0 or (complex(self.P0) / q).imag <= 0:
            raise ConfigError("initial data need Q0 != 0 and Im(P0/Q0) > 0")
        object.__setattr__(self, "receiver_xs", np.asarray(self.receiver_xs, dtype=float))
        if self.h is None:
            object.__setattr__(self, "h", 0.5 * self.eta0)
        if not 0 < self.h < self.eta0:
            raise ConfigError(
                f"beam spacing h = {self.h:.6g} must satisfy 0 < h < eta0 = sqrt(2 Q0/omega) = {self.eta0:.6g}"
            )

    @property
    def eta0(self):
        return math.sqrt(2.0 / (self.omega * (complex(self.P0) / complex(self.Q0)).imag))

    @property
    def amp0(self):
        return 1.0 / (math.sqrt(math.pi * self.omega) * self.eta0)

    @property
    def cutoff(self):
        return Cutoff(self.alpha)


@dataclass
class BeamBundle:
    config: SuperposConfig
    medium: object
    source: object
    s: np.ndarray
    h: float
    crossings: FanCrossing
    coeffs: BeamCoefficients
    missed: int = 0
    status: dict = field(default_factory=dict)

    def __len__(self):
        return self.s.shape[0]

    @property
    def weight(self):
        return math.sqrt(self.config.omega) * self.h

    def widths(self):
        return 1.0 / np.sqrt(self.config.omega * self.coeffs.phi_xx.imag)


def empty_bundle(medium, source, config):
    empty = np.zeros(0)
    fan = FanCrossing(empty, empty, empty, empty, empty, empty.astype(complex), empty.astype(complex),
                      empty.astype(complex), np.zeros(0, np.int64), config.y_star)
    coeffs = BeamCoefficients(empty, empty, empty, empty.astype(complex), empty.astype(complex))
    return BeamBundle(config, medium, source, empty, config.h, fan, coeffs)


def _trace(medium, source, s, config, workers):
    x0, y0 = source.point(s)
    return cross_fan(medium, x0, y0, source.theta0(s), config.Q0, config.P0, config.y_star,
                     dt=config.dt, workers=workers)


def check_monotone(X, what="crossing abscissas"):
    d = np.diff(X)
    if X.size > 1 and not (np.all(d > 0) or np.all(d < 0)):
        k = int(np.argmax(d <= 0)) if np.any(d > 0) else int(np.argmax(d >= 0))
        raise CausticError(f"{what} not strictly monotone near index {k}: rays cross before the receiver")


def covering_s_range(medium, source, config, x_lo, x_hi, n=65, workers=1):
    """Parameter interval whose rays reach ``[x_lo - pad, x_hi + pad]`` on the receiver line.

    ``pad = max(alpha, 6 eta)`` with eta the largest width, on a coarse fan,
    among beams landing inside the window; with no cutoff the pad is 8 eta.  Returns ``(s_lo, s_hi, pad)``.
    """
    lim = source.s_limit
    cap = 0.999 * lim if math.isfinite(lim) else math.inf
    width = x_hi - x_lo
    guess = source.straight_ray_parameter([x_lo - 1.0 - 0.5 * width, x_hi + 1.0 + 0.5 * width], config.y_star)
    lo, hi = max(float(guess.min()), -cap), min(float(guess.max()), cap)
    for _ in range(12):
        s = np.linspace(lo, hi, n)
        fan = _trace(medium, source, s, config, workers)
        ok = fan.ok
        if np.sum(ok) < 4:
            raise CausticError(
                f"too few rays reach y = {config.y_star:g} inside the medium domain to cover "
                f"[{x_lo:g}, {x_hi:g}] plus padding; enlarge the domain or shrink the window"
            )
        X = fan.x[ok]
        check_monotone(X)
        c, cx, cy, *_ = medium.derivatives(fan.x[ok], fan.y[ok])
        pxx = hessian_entries(fan.theta[ok], c + 0 * X, cx, cy, fan.P[ok], fan.Q[ok])[0]
        eta_all = 1.0 / np.sqrt(config.omega * np.imag(pxx))
        inside = (X >= x_lo) & (X <= x_hi)
        eta = float(np.max(eta_all[inside])) if np.any(inside) else float(np.max(eta_all))
        pad = max(config.alpha, 6.0 * eta) if math.isfinite(config.alpha) else 8.0 * eta
        need_lo, need_hi = x_lo - pad, x_hi + pad
        increasing = X[-1] > X[0]
        Xs, ss = (X, s[ok]) if increasing else (X[::-1], s[ok][::-1])
        short_lo, short_hi = Xs[0] > need_lo, Xs[-1] < need_hi
        if not (short_lo or short_hi):
            s_a = float(np.interp(need_lo, Xs, ss))
            s_b = float(np.interp(need_hi, Xs, ss))
            margin = 2.0 * (hi - lo) / (n - 1)
            return max(min(s_a, s_b) - margin, -cap), min(max(s_a, s_b) + margin, cap), pad
        # widen only the side(s) of s that map to the uncovered end(s)
        grow_lo = short_lo if increasing else short_hi
        grow_hi = short_hi if increasing else short_lo
        if (not grow_lo or lo <= -cap) and (not grow_hi or hi >= cap):
            raise CausticError("receiver window cannot be covered by rays from the admissible source curve")
        span = hi - lo
        if grow_lo:
            lo = max(lo - span, -cap)
        if grow_hi:
            hi = min(hi + span, cap)
    raise CausticError("failed to find a covering source interval")


def beam_parameters(s_range, h):
    """s_j = j h for every integer j with s_j inside ``s_range``."""
    j0 = math.ceil(s_range[0] / h)
    j1 = math.floor(s_range[1] / h)
    return np.arange(j0, j1 + 1) * h


def plane_wave_bundle(medium, config, source, workers=1, h=None):
    """Trace one beam per s_j and prepare its Taylor coefficients at the receiver."""
    h = config.h if h is None else h
    s_range = config.s_range
    if s_range is None:
        xr = config.receiver_xs
        s_lo, s_hi, _ = covering_s_range(medium, source, config, float(xr.min()), float(xr.max()),
                                         workers=workers)
        s_range = (s_lo, s_hi)
    s = beam_parameters(s_range, h)
    if s.size == 0:
        return empty_bundle(medium, source, config)
    fan = _trace(medium, source, s, config, workers)
    ok = fan.ok
    missed = int(np.sum(~ok))
    if missed:
        warnings.warn(f"{missed} of {s.size} beams did not reach y = {config.y_star:g}; excluded",
                      RuntimeWarning, stacklevel=2)
    good = fan.subset(ok)
    check_monotone(good.x)
    coeffs = coefficients_from_fan(medium, good, config.amp0)
    return BeamBundle(config, medium, source, s[ok], h, good, coeffs, missed, status_counts(fan.status))


def field_discrete(bundle, xs=None, workers=1, alpha=None):
    """Trapezoidal beam sum ``sqrt(omega) h sum_j beam_j`` on the receiver line."""
    cfg = bundle.config
    xs = cfg.receiver_xs if xs is None else np.asarray(xs, dtype=float)
    cut = cfg.cutoff if alpha is None else Cutoff(alpha)
    vals = sum_beams(xs, bundle.coeffs, cfg.omega, cut, bundle.weight, workers)
    return ComplexFieldSamples(xs, cfg.y_star, vals)


def refined_bundle(bundle, refine, workers=1):
    """Same parameter interval, spacing h / refine, every beam traced fresh."""
    if refine < 1 or int(refine) != refine:
        raise ConfigError("refine must be a positive integer")
    if refine == 1:
        return bundle
    cfg = bundle.config
    if bundle.s.size == 0:
        return empty_bundle(bundle.medium, bundle.source, replace(cfg, h=cfg.h / refine))
    s_range = cfg.s_range or (float(bundle.s[0]), float(bundle.s[-1]))
    fine_cfg = replace(cfg, h=bundle.h / refine, s_range=s_range)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return plane_wave_bundle(bundle.medium, fine_cfg, bundle.source, workers=workers)


def field_quadrature(bundle, refine=32, workers=1, xs=None):
    """Fine-spacing approximation of the continuous superposition integral."""
    return field_discrete(refined_bundle(bundle, refine, workers), xs=xs, workers=workers)


def source_reconstruction(x, h, eta0, s=None):
    """``sum_j h / (sqrt(pi) eta0) exp(-(x - s_j)^2 / eta0^2)`` for a flat source."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if s is None:
        reach = 12.0 * eta0
        s = beam_parameters((float(x.min()) - reach, float(x.max()) + reach), h)
    d = x[:, None] - s[None, :]
    return (h / (math.sqrt(math.pi) * eta0)) * np.exp(-(d / eta0) ** 2).sum(axis=1)


def merge_bundles(a, b):
    """Union of two bundles with the same configuration (fields add linearly)."""
    if a.config.omega != b.config.omega or a.h != b.h:
        raise ConfigError("bundles must share omega and spacing")
    fan = FanCrossing(*(np.concatenate((getattr(a.crossings, f), getattr(b.crossings, f)))
                        for f in ("t", "x", "y", "theta", "c", "Q", "P", "root", "status")),
                      a.crossings.y_star)
    return BeamBundle(a.config, a.medium, a.source, np.concatenate((a.s, b.s)), a.h, fan,
                      a.coeffs.concat(b.coeffs), a.missed + b.missed)
