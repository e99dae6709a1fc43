"""Closed-form error analysis for a homogeneous medium (c = 1).

Along a straight ray with P0 = i and real Q0 > 0, the derivatives of phase
and amplitude across the ray (``phi2 = d^2 phi / dn^2`` and so on) solve a
small triangular linear system with elementary solutions.  Combined with the
Gaussian moments ``d_p`` they give the leading Taylor-error constant at the
receiver point x = 0 for a source curve with y0'(0) = 0.
"""

from dataclasses import dataclass
import math

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)
MAX_MOMENT = 8


@dataclass(frozen=True)
class TaylorCoeffs:
    t: float
    phi2: complex
    phi3: complex
    phi4: complex
    A0: complex
    A1: complex
    A2: complex

    def as_array(self):
        return np.array([self.phi2, self.phi3, self.phi4, self.A0, self.A1, self.A2], dtype=complex)


def taylor_coeffs(t, Q0):
    """Ray-centred derivatives of phase (orders 2-4) and amplitude (orders 0-2).

    With w = Q0 + i t:  phi2 = i/w,  phi4 = -3t/w^4,  A0 = (Q0/w)^(1/2),
    A2 = (3i/2) Q0^(1/2) t / w^(7/2); the odd orders vanish.  ``t`` may be an
    array, in which case the fields are arrays.
    """
    if not Q0 > 0:
        raise ValueError("Q0 must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")
    w = Q0 + 1j * t_arr
    phi2 = 1j / w
    phi4 = -3.0 * t_arr / w**4
    A0 = np.sqrt(Q0) / np.sqrt(w)
    A2 = 1.5j * math.sqrt(Q0) * t_arr / (np.sqrt(w) * w**3)
    zero = np.zeros_like(w)
    if t_arr.ndim == 0:
        return TaylorCoeffs(float(t_arr), complex(phi2), 0j, complex(phi4), complex(A0), 0j, complex(A2))
    return TaylorCoeffs(t_arr, phi2, zero, phi4, A0, zero.copy(), A2)


def taylor_rhs(y):
    """Right-hand side of the transverse-derivative system, state order as in ``as_array``."""
    p2, p3, p4, a0, a1, a2 = y
    return np.array([
        -p2 * p2,
        -3.0 * p2 * p3,
        -4.0 * p2 * p4 - 3.0 * p2**4 - 3.0 * p3 * p3,
        -0.5 * p2 * a0,
        -1.5 * p2 * a1 - 0.5 * p3 * a0,
        -2.5 * p2 * a2 - 2.0 * p3 * a1 - 0.5 * p4 * a0 - 1.5 * p2**3 * a0,
    ])


def _double_factorial(n):
    return math.prod(range(n, 0, -2))


def d_moment(p, c1):
    """Gaussian moment of order p: the integral of z^p exp(i c1 z^2 - z^2/2) over the real line."""
    if int(p) != p or not 0 <= p <= MAX_MOMENT:
        raise ValueError(f"moment order must be an integer in [0, {MAX_MOMENT}], got {p!r}")
    p = int(p)
    if p % 2:
        return 0j
    return _double_factorial(p - 1) * SQRT_2PI * (1.0 - 2j * c1) ** (-(p + 1) / 2)


@dataclass(frozen=True)
class ErrorConstants:
    a1: complex
    a2: complex
    b1: complex
    b2: complex
    c1: float
    c2: float
    sigma: int
    e11: complex
    e12: complex
    e21: complex
    e22: complex
    C_star: complex
    q: int
    q_star: int
    q_a: int
    # evaluation point data
    omega: float
    Q0: float
    y_star: float
    y0_pp: float
    eta: float
    A00: complex
    m_prime: float


def error_constants(Q0, y_star, omega, y0_pp=0.0):
    """Leading Taylor-error constant at x = 0 for first-order beams (q = 0).

    ``y0_pp`` is the source curvature y0''(0); the ray turning rate at the
    receiver equals it in a homogeneous medium.
    """
    if not Q0 > 0:
        raise ValueError("Q0 must be positive")
    focus = 1.0 - y_star * y0_pp
    if not focus > 0:
        raise ValueError(f"1 - y* y0''(0) = {focus:g} <= 0: rays focus before the receiver")
    m_prime = 1.0 / focus
    dtheta = y0_pp
    w = Q0 + 1j * y_star
    rq = math.sqrt(Q0)
    w72 = np.sqrt(w) * w**3
    a2 = 1j * (3.0 * rq * y_star - 2.0 * rq * w * w * m_prime * dtheta) / (4.0 * w72)
    b2 = 1j * (Q0 * Q0 + y_star**2) * (-y_star + 4.0 * w * w * m_prime * dtheta) / (8.0 * Q0 * w**4)
    c1 = (y_star + (Q0 * Q0 + y_star**2) * m_prime * dtheta) / (2.0 * Q0)
    A00 = rq / np.sqrt(w)
    eta = math.sqrt((Q0 * Q0 + y_star**2) / (omega * Q0))
    e12 = m_prime * a2 * d_moment(2, c1)
    e22 = m_prime * A00 * b2 * d_moment(4, c1)
    C_star = np.exp(1j * omega * y_star) * (e12 + e22)
    return ErrorConstants(
        a1=0j, a2=complex(a2), b1=0j, b2=complex(b2), c1=float(c1), c2=0.0, sigma=1,
        e11=0j, e12=complex(e12), e21=0j, e22=complex(e22), C_star=complex(C_star),
        q=0, q_star=2, q_a=0,
        omega=float(omega), Q0=float(Q0), y_star=float(y_star), y0_pp=float(y0_pp),
        eta=eta, A00=complex(A00), m_prime=m_prime,
    )


def relative_error(constants):
    """Leading term sqrt(omega) eta^3 |C*| |1 - y* y0''|^(1/2) of the relative Taylor error."""
    k = constants
    return math.sqrt(k.omega) * k.eta**3 * abs(k.C_star) * math.sqrt(abs(1.0 - k.y_star * k.y0_pp))


def line_constant(Q0=1.0, y_star=1.0):
    """The constant n0 with C* = e^{i omega y*} n0 y* Q0^2 / ((Q0 + i y*)^2 (Q0^2 + y*^2)^{3/2}).

    Read off from the assembled constants of a straight source; it does not
    depend on the evaluation point.
    """
    k = error_constants(Q0, y_star, 1.0, 0.0)
    w = Q0 + 1j * y_star
    shape = y_star * Q0**2 / (w * w * (Q0 * Q0 + y_star**2) ** 1.5)
    return complex(k.e12 + k.e22) / shape


def line_relative_error(Q0, y_star, omega):
    """omega^-1 |n0 y* Q0^(1/2) / (Q0 + i y*)^2| with n0 from :func:`line_constant`."""
    n0 = line_constant()
    return abs(n0 * y_star * math.sqrt(Q0) / (Q0 + 1j * y_star) ** 2) / omega


def width_at_receiver(Q0, y_star, omega):
    """Beam width at x = 0: ((Q0^2 + y*^2) / (omega Q0))^(1/2)."""
    Q0 = np.asarray(Q0, dtype=float)
    return np.sqrt((Q0 * Q0 + y_star**2) / (omega * Q0))


@dataclass(frozen=True)
class WidthTable:
    q0: np.ndarray
    eta: np.ndarray
    argmin: float


def width_vs_q0(y_star, omega, q0_grid):
    q0 = np.asarray(q0_grid, dtype=float)
    if np.any(q0 <= 0):
        raise ValueError("Q0 grid must be positive")
    eta = width_at_receiver(q0, y_star, omega)
    return WidthTable(q0, eta, float(q0[int(np.argmin(eta))]))


def equal_width_partner(Q0, y_star):
    """The other Q0 giving the same width: eta is invariant under Q0 -> y*^2 / Q0."""
    return y_star**2 / Q0
