"""Gaussian beam superposition for the 2D Helmholtz equation, with error studies."""

from ._accel import backend, set_backend

__version__ = "0.1.0"

__all__ = ["backend", "set_backend", "__version__"]
