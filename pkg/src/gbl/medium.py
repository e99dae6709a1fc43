"""Smooth speed models c(x, y) with exact first and second derivatives."""

from dataclasses import dataclass
import math

import numpy as np

from ._kernels import CONSTANT, WAVEGUIDE, python_namespace

_PY = python_namespace()

DEFAULT_DOMAIN = (-2.0, 2.0, 0.0, 4.0)


class DomainError(ValueError):
    """Raised when a medium is evaluated outside its bounding box."""


@dataclass(frozen=True)
class Medium:
    kind: int
    params: tuple
    domain: tuple = DEFAULT_DOMAIN
    name: str = "medium"

    @property
    def param_array(self):
        return np.asarray(self.params, dtype=np.float64)

    @property
    def bbox(self):
        return np.asarray(self.domain, dtype=np.float64)

    @property
    def is_constant(self):
        return self.kind == CONSTANT

    def check_point(self, x, y):
        xmin, xmax, ymin, ymax = self.domain
        if not xmin <= x <= xmax:
            raise DomainError(f"x = {x!r} outside medium domain [{xmin}, {xmax}]")
        if not ymin <= y <= ymax:
            raise DomainError(f"y = {y!r} outside medium domain [{ymin}, {ymax}]")

    def eval(self, point):
        """Speed, gradient and Hessian ``(c, (c_x, c_y), (c_xx, c_xy, c_yy))`` at a point."""
        x, y = float(point[0]), float(point[1])
        self.check_point(x, y)
        c, cx, cy, cxx, cxy, cyy = _PY.medium_eval(self.kind, self.param_array, x, y)
        return float(c), (float(cx), float(cy)), (float(cxx), float(cxy), float(cyy))

    def speed(self, x, y):
        """Vectorized c(x, y) without the domain check."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return _vector_eval(self, x, y)[0]

    def derivatives(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return _vector_eval(self, x, y)

    def with_domain(self, domain):
        return Medium(self.kind, self.params, tuple(float(v) for v in domain), self.name)


def _vector_eval(medium, x, y):
    return _PY.medium_eval(medium.kind, medium.param_array, x, y)


def constant(c0=1.0, domain=DEFAULT_DOMAIN):
    if c0 <= 0:
        raise ValueError("constant speed must be positive")
    return Medium(CONSTANT, (float(c0),), tuple(domain), "constant")


def waveguide(a=0.2, kx=math.pi / 2, ky=math.pi / 2, c0=1.0, domain=DEFAULT_DOMAIN):
    """c = c0 + a sin(kx x) sin(ky y); positivity needs |a| < c0."""
    if abs(a) >= c0:
        raise ValueError(f"waveguide amplitude |a| = {abs(a)} must be below c0 = {c0}")
    return Medium(WAVEGUIDE, (float(c0), float(a), float(kx), float(ky)), tuple(domain), "waveguide")


_FACTORIES = {"constant": constant, "waveguide": waveguide}


def from_spec(spec, domain=None):
    """Build a medium from a config mapping such as ``{"name": "waveguide", "a": 0.2}``."""
    spec = dict(spec)
    name = spec.pop("name", None)
    if name not in _FACTORIES:
        raise ValueError(f"unknown medium {name!r}; choose one of {sorted(_FACTORIES)}")
    if domain is not None:
        spec["domain"] = tuple(domain)
    try:
        return _FACTORIES[name](**spec)
    except TypeError as exc:
        raise ValueError(f"bad parameters for medium {name!r}: {exc}") from None
