import math

import numpy as np
import pytest

from gbl import medium as media
from gbl import ray_engine as re
from gbl import reference_fields as ref
from gbl import sources as srcs
from gbl import superposition as sp

WIDE = media.constant(domain=(-12, 12, -12, 6))
WAVE = media.waveguide(domain=(-6, 6, -1, 4))


def test_exact_plane_wave():
    u = ref.exact_field_constant(100.0, 2.0, np.linspace(-1, 1, 5))
    assert np.all(u.values == np.exp(200j))
    assert np.all(u.magnitude == 1.0)
    ob = ref.exact_plane_wave(50.0, np.array([0.0, 1.0]), 2.0, math.pi / 2)
    assert np.allclose(ob.values, np.exp(100j), atol=1e-12)


def test_go_matches_exact_in_constant_medium():
    xs = np.linspace(-1, 1, 201)
    go = ref.go_field(WIDE, srcs.flat(), 2.0, 100.0, 0.02, xs)
    exact = ref.exact_field_constant(100.0, 2.0, xs)
    assert np.max(np.abs(go.field(100.0).values - exact.values)) < 1e-12
    assert np.all(np.abs(go.field(100.0).magnitude - 1.0) < 1e-14)


def test_go_amplitude_for_curved_sources():
    xs = np.array([0.0])
    for src, ypp in ((srcs.flat(), 0.0), (srcs.circle(), -1.0), (srcs.parabola(), -1.0)):
        go = ref.go_field(WIDE, src, 3.0, 100.0, 0.01, xs)
        assert abs(go.amplitude[0]) == pytest.approx(abs(1 - 3.0 * ypp) ** -0.5, rel=1e-8)
        assert go.phase[0] == pytest.approx(3.0, abs=1e-10)


def test_go_converged_in_fan_spacing():
    xs = np.linspace(-1, 1, 401)
    a = ref.go_field(WAVE, srcs.flat(), 2.0, 200.0, 0.01, xs).field(200.0).values
    b = ref.go_field(WAVE, srcs.flat(), 2.0, 200.0, 0.005, xs).field(200.0).values
    assert np.max(np.abs(a - b)) < 1e-8


def test_go_phase_obeys_eikonal_along_ray():
    tr = re.trace_central(WAVE, (0.3, 0.0), math.pi / 2, 2.0)
    # phase = travel time, so d(phase)/d(arclength) = 1/c
    ds = np.hypot(np.diff(tr.x), np.diff(tr.y))
    xm, ym = 0.5 * (tr.x[1:] + tr.x[:-1]), 0.5 * (tr.y[1:] + tr.y[:-1])
    slope = tr.dt / ds
    assert np.max(np.abs(slope - 1 / WAVE.speed(xm, ym))) < 1e-6


def test_go_phase_increases_with_distance():
    xs = np.linspace(-1, 1, 11)
    p1 = ref.go_field(WAVE, srcs.flat(), 1.0, 100.0, 0.02, xs).phase
    p2 = ref.go_field(WAVE, srcs.flat(), 2.0, 100.0, 0.02, xs).phase
    assert np.all(p2 > p1)


def test_go_rejects_uncovered_window():
    with pytest.raises(ValueError):
        ref.go_field(WIDE, srcs.flat(), 2.0, 100.0, 0.05, np.array([0.0, 3.0]), s_range=(-1.0, 1.0))


def test_ray_centred_reference_reduces_to_taylor_on_ray_axis():
    # at y* tiny the Taylor and ray-centred beams coincide up to O(t)
    xs = np.linspace(-0.3, 0.3, 31)
    cfg = sp.SuperposConfig(omega=100.0, receiver_xs=xs, y_star=2.0)
    b = sp.plane_wave_bundle(WIDE, cfg, srcs.flat())
    e = ref.measured_taylor_error(b, xs)
    assert 0 < e.max() < 0.01
    with pytest.raises(ValueError):
        cfg2 = sp.SuperposConfig(omega=100.0, receiver_xs=xs, y_star=2.0)
        ref.ray_centered_beams(sp.plane_wave_bundle(WAVE, cfg2, srcs.flat()), xs)
