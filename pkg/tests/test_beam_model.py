import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbl import medium as media
from gbl import ray_engine as re
from gbl import sources as srcs
from gbl.beam_model import (
    NO_CUTOFF, BeamMissesReceiver, Cutoff, beam_width, eval_beam, find_crossing,
)

TALL = media.constant(domain=(-6, 6, -2, 6))


def _crossing(Q0=1.0, start=(0.0, 0.0), theta=math.pi / 2, y_star=3.0, m=TALL, s=0.0):
    tr = re.trace_beam(m, start, theta, y_star + 2.0, Q0=Q0, s=s)
    return find_crossing(tr, y_star, m)


def test_vertical_crossing():
    tr = re.trace_beam(TALL, (0.3, 0.0), math.pi / 2, 3.0)
    cr = find_crossing(tr, 2.0, TALL)
    assert cr.X == pytest.approx(0.3, abs=1e-12)
    assert cr.t_cross == pytest.approx(2.0, abs=1e-12)
    assert abs(cr.sample.y - 2.0) < 1e-10


def test_circle_crossings():
    circ = srcs.circle()
    y_star = 2.0
    for s in (0.0, 0.2, -0.45):
        x0, y0 = circ.point(s)
        cr = _crossing(start=(float(x0), float(y0)), theta=float(circ.theta0(s)), y_star=y_star, s=s)
        if s == 0.0:
            assert cr.X == pytest.approx(0.0, abs=1e-12)
            assert cr.t_cross == pytest.approx(y_star, abs=1e-12)
        dist = math.hypot(cr.X - float(x0), y_star - float(y0))
        assert cr.t_cross == pytest.approx(dist, abs=1e-11)


def test_crossing_agrees_with_fan_driver():
    m = media.waveguide(domain=(-4, 4, -1, 4))
    s = np.array([-0.7, 0.2, 0.9])
    fan = re.cross_fan(m, s, np.zeros(3), np.full(3, math.pi / 2), 1.0, 1j, 2.0)
    for j in range(3):
        tr = re.trace_beam(m, (s[j], 0.0), math.pi / 2, 3.0)
        cr = find_crossing(tr, 2.0, m)
        assert cr.X == pytest.approx(fan.x[j], abs=1e-10)
        assert cr.t_cross == pytest.approx(fan.t[j], abs=1e-10)
        assert cr.sample.Q == pytest.approx(fan.Q[j], abs=1e-10)


def test_missed_receiver():
    tr = re.trace_beam(TALL, (0.0, 0.0), math.pi / 2, 1.0)
    with pytest.raises(BeamMissesReceiver):
        find_crossing(tr, 2.0, TALL)


def test_beam_width_closed_form():
    cr = _crossing(Q0=1.0, y_star=3.0)
    assert beam_width(100.0, cr) == pytest.approx(math.sqrt(10 / 100), rel=1e-12)
    assert beam_width(400.0, cr) == pytest.approx(0.5 * beam_width(100.0, cr), rel=1e-14)


def test_width_minimized_at_q0_equal_y_star():
    q0 = np.linspace(1.0, 6.0, 51)
    widths = [beam_width(100.0, _crossing(Q0=q, y_star=3.0)) for q in q0]
    assert q0[int(np.argmin(widths))] == pytest.approx(3.0)


def test_eval_beam_on_ray_and_at_one_width():
    omega = 100.0
    cr = _crossing(Q0=1.0, y_star=3.0)
    amp = 0.3 - 0.2j
    v0 = eval_beam(cr.X, 3.0, cr, omega, amp, NO_CUTOFF)
    assert v0 == pytest.approx(amp * np.exp(1j * omega * cr.sample.phase_on_ray), abs=1e-15)
    eta = beam_width(omega, cr)
    v1 = eval_beam(cr.X + eta, 3.0, cr, omega, amp, Cutoff(1.0))
    assert abs(v1) / abs(v0) == pytest.approx(math.exp(-0.5), abs=1e-12)
    assert eval_beam(cr.X + 1.0001, 3.0, cr, omega, amp, Cutoff(1.0)) == 0


def test_gaussian_decay_is_affine_in_offset_squared():
    omega = 100.0
    cr = _crossing(Q0=1.0, y_star=3.0)
    r = np.linspace(-0.5, 0.5, 81)
    v = eval_beam(cr.X + r, 3.0, cr, omega, 1.0, Cutoff(1.0))
    A = np.column_stack((r * r, np.ones_like(r)))
    coef, *_ = np.linalg.lstsq(A, np.log(np.abs(v)), rcond=None)
    eta = beam_width(omega, cr)
    assert coef[0] == pytest.approx(-1 / (2 * eta**2), rel=1e-10)
    assert np.max(np.abs(A @ coef - np.log(np.abs(v)))) < 1e-10


def test_cutoff_plateau_bitwise():
    cr = _crossing()
    r = np.linspace(-0.5, 0.5, 101)
    a = eval_beam(cr.X + r, 3.0, cr, 80.0, 1.0, Cutoff(1.0))
    b = eval_beam(cr.X + r, 3.0, cr, 80.0, 1.0, NO_CUTOFF)
    assert np.array_equal(a, b)


def test_phase_is_real_on_ray():
    m = media.waveguide(domain=(-4, 4, -1, 4))
    tr = re.trace_beam(m, (0.4, 0.0), 1.4, 3.0)
    cr = find_crossing(tr, 2.0, m)
    v = eval_beam(cr.X, 2.0, cr, 50.0, 1.0)
    assert abs(v) == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(-10.0, 10.0))
def test_cutoff_shape(alpha, r):
    cut = Cutoff(alpha)
    v = float(cut(r))
    assert 0.0 <= v <= 1.0
    if abs(r) <= alpha / 2:
        assert v == 1.0
    if abs(r) >= alpha:
        assert v == 0.0


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 4.0))
def test_cutoff_monotone_on_transition(alpha):
    r = np.linspace(alpha / 2, alpha, 401)
    assert np.all(np.diff(Cutoff(alpha)(r)) <= 0)


def test_cutoff_rejects_bad_radius():
    with pytest.raises(ValueError):
        Cutoff(0.0)
