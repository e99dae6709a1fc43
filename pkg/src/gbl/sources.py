"""Source curves x0(s) on which the incoming plane wave has zero phase.

Rays are shot orthogonally to the curve.  For graph curves y = y0(s) the
launch angle is pi/2 + atan(y0'(s)).
"""

from dataclasses import dataclass
import math

import numpy as np


@dataclass(frozen=True)
class SourceCurve:
    kind: str
    angle: float = math.pi / 2  # propagation angle, used by "oblique"

    def __post_init__(self):
        if self.kind not in ("flat", "circle", "parabola", "oblique"):
            raise ValueError(f"unknown source curve {self.kind!r}")
        if self.kind == "oblique" and not 0.0 < self.angle < math.pi:
            raise ValueError("oblique angle must lie in (0, pi) so rays move upward")

    @property
    def s_limit(self):
        """Largest admissible |s| (the circle is a graph only for |s| < 1)."""
        return 1.0 if self.kind == "circle" else math.inf

    def point(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "flat":
            return s.copy(), np.zeros_like(s)
        if self.kind == "circle":
            return s.copy(), -1.0 + np.sqrt(1.0 - s * s)
        if self.kind == "parabola":
            return s.copy(), -0.5 * s * s
        return s * math.sin(self.angle), -s * math.cos(self.angle)

    def slope(self, s):
        """dy0/dx0 along the curve."""
        s = np.asarray(s, dtype=float)
        if self.kind == "flat":
            return np.zeros_like(s)
        if self.kind == "circle":
            return -s / np.sqrt(1.0 - s * s)
        if self.kind == "parabola":
            return -s
        return np.full_like(s, -1.0 / math.tan(self.angle))

    def second_derivative(self, s):
        """d^2 y0 / dx0^2 along the curve."""
        s = np.asarray(s, dtype=float)
        if self.kind == "circle":
            return -1.0 / (1.0 - s * s) ** 1.5
        if self.kind == "parabola":
            return np.full_like(s, -1.0)
        return np.zeros_like(s)

    def theta0(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "oblique":
            return np.full_like(s, self.angle)
        return 0.5 * math.pi + np.arctan(self.slope(s))

    def jacobian(self, s):
        """|dx0/ds|, the arclength per unit parameter."""
        s = np.asarray(s, dtype=float)
        if self.kind == "oblique":
            return np.ones_like(s)
        return np.sqrt(1.0 + self.slope(s) ** 2)

    def curvature(self, s):
        """Curvature of the outgoing wavefront; positive means diverging."""
        s = np.asarray(s, dtype=float)
        return -self.second_derivative(s) / self.jacobian(s) ** 3

    def straight_ray_parameter(self, X, y_star):
        """Parameter s whose ray hits ``(X, y_star)`` in a homogeneous medium."""
        X = np.asarray(X, dtype=float)
        if self.kind == "flat":
            return X.copy()
        if self.kind == "oblique":
            return (X - y_star / math.tan(self.angle)) * math.sin(self.angle)
        if self.kind == "circle":
            return X / np.sqrt(X * X + (y_star + 1.0) ** 2)
        # parabola: X = s (1 + y* + s^2/2), increasing in s
        s = X / (1.0 + y_star)
        for _ in range(60):
            s = s - (s * (1.0 + y_star + 0.5 * s * s) - X) / (1.0 + y_star + 1.5 * s * s)
        return s

    @property
    def y0pp(self):
        return float(self.second_derivative(0.0))


def flat():
    return SourceCurve("flat")


def circle():
    return SourceCurve("circle")


def parabola():
    return SourceCurve("parabola")


def oblique(angle=math.pi / 4):
    return SourceCurve("oblique", float(angle))


def from_spec(spec):
    """``"flat"`` or a mapping like ``{"name": "oblique", "angle_deg": 45}``."""
    if isinstance(spec, str):
        spec = {"name": spec}
    spec = dict(spec)
    name = spec.pop("name", None)
    if name == "oblique":
        if "angle_deg" in spec:
            angle = math.radians(spec.pop("angle_deg"))
        else:
            angle = spec.pop("angle", math.pi / 4)
        if spec:
            raise ValueError(f"unknown oblique source keys {sorted(spec)}")
        return oblique(angle)
    if spec:
        raise ValueError(f"source {name!r} takes no parameters, got {sorted(spec)}")
    if name not in ("flat", "circle", "parabola"):
        raise ValueError(f"unknown source {name!r}")
    return SourceCurve(name)
