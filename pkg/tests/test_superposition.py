import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbl import medium as media
from gbl import ray_engine as re
from gbl import set_backend
from gbl import sources as srcs
from gbl import superposition as sp
from gbl.beam_model import NO_CUTOFF, eval_beam, find_crossing

WIDE = media.constant(domain=(-12, 12, -12, 6))
WAVE = media.waveguide(domain=(-6, 6, -1, 4))


def _bundle(omega=100.0, medium=WIDE, xs=None, **kw):
    xs = np.linspace(-1, 1, 101) if xs is None else xs
    cfg = sp.SuperposConfig(omega=omega, receiver_xs=xs, **kw)
    return sp.plane_wave_bundle(medium, cfg, srcs.flat())


def test_eta0_and_spacing_rule():
    cfg = sp.SuperposConfig(omega=100.0)
    assert cfg.eta0 == pytest.approx(math.sqrt(2 / 100))
    assert cfg.h == pytest.approx(0.5 * cfg.eta0)
    assert cfg.amp0 == pytest.approx(1 / (math.sqrt(100 * math.pi) * cfg.eta0))
    with pytest.raises(sp.ConfigError, match="eta0"):
        sp.SuperposConfig(omega=100.0, h=0.15)
    with pytest.raises(sp.ConfigError):
        sp.SuperposConfig(omega=100.0, P0=-1j)


def test_initial_beam_phase_on_flat_source():
    omega, Q0, s = 100.0, 1.0, 0.3
    eta0 = math.sqrt(2 * Q0 / omega)
    tr = re.trace_beam(WIDE, (s, 0.0), math.pi / 2, 1.0, Q0=Q0)
    cr = find_crossing(tr, 0.0, WIDE)
    x = np.linspace(-0.2, 0.8, 11)
    v = eval_beam(x, 0.0, cr, omega, 1.0, NO_CUTOFF)
    assert np.allclose(v, np.exp(1j * omega * 1j * (x - s) ** 2 / (omega * eta0**2)), rtol=0, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.3, 0.95), st.floats(-3.0, 3.0))
def test_source_reconstruction_bound(frac, x):
    eta0 = 0.2
    h = frac * eta0
    dev = abs(sp.source_reconstruction(x, h, eta0)[0] - 1.0)
    assert dev <= math.exp(-((eta0 / h) ** 2))


def test_source_reconstruction_default_spacing():
    x = np.linspace(-2, 2, 801)
    eta0 = math.sqrt(2 / 100)
    dev = np.abs(sp.source_reconstruction(x, eta0 / 2, eta0) - 1)
    assert dev.max() <= 0.02
    assert dev.max() <= math.exp(-4)


def test_constant_medium_plane_wave_magnitude():
    for omega in (100.0, 200.0):
        b = _bundle(omega, y_star=2.0)
        u = sp.field_discrete(b)
        assert np.max(np.abs(u.magnitude - 1.0)) < 1.0 / omega


def test_empty_bundle_field_is_zero():
    cfg = sp.SuperposConfig(omega=100.0, receiver_xs=np.linspace(-1, 1, 9))
    b = sp.empty_bundle(WIDE, srcs.flat(), cfg)
    assert np.array_equal(sp.field_discrete(b).values, np.zeros(9, complex))


def test_refine_one_is_identity_and_quadrature_converged():
    b = _bundle(100.0, y_star=2.0)
    assert np.array_equal(sp.field_quadrature(b, refine=1).values, sp.field_discrete(b).values)
    q32 = sp.field_quadrature(b, refine=32).values
    q64 = sp.field_quadrature(b, refine=64).values
    assert np.max(np.abs(q64 - q32)) < 1e-12


def test_halving_spacing_changes_field_below_spacing_error():
    b = _bundle(100.0, medium=WAVE, y_star=2.0)
    fine = sp.refined_bundle(b, 2)
    oracle = sp.field_quadrature(b, refine=32).values
    u, u2 = sp.field_discrete(b).values, sp.field_discrete(fine).values
    ed = np.max(np.abs(u - oracle))
    assert np.max(np.abs(u2 - u)) <= 1.01 * ed + 1e-13
    assert np.max(np.abs(u2 - oracle)) < ed / 16


def test_linearity_of_disjoint_bundles():
    b = _bundle(100.0, medium=WAVE, y_star=2.0)
    n = len(b) // 2
    cfg = b.config
    lo = sp.plane_wave_bundle(WAVE, sp.SuperposConfig(omega=100.0, receiver_xs=cfg.receiver_xs, y_star=2.0,
                                                       s_range=(b.s[0], b.s[n - 1])), srcs.flat())
    hi = sp.plane_wave_bundle(WAVE, sp.SuperposConfig(omega=100.0, receiver_xs=cfg.receiver_xs, y_star=2.0,
                                                       s_range=(b.s[n], b.s[-1])), srcs.flat())
    merged = sp.merge_bundles(lo, hi)
    total = sp.field_discrete(b).values
    parts = sp.field_discrete(lo).values + sp.field_discrete(hi).values
    assert np.max(np.abs(sp.field_discrete(merged).values - total)) < 1e-13
    assert np.max(np.abs(parts - total)) < 1e-13


def test_translation_equivariance_constant_medium():
    omega = 100.0
    h = 0.5 * math.sqrt(2 / omega)
    xs = np.linspace(-0.5, 0.5, 41)
    delta = 7 * h
    a = sp.field_discrete(_bundle(omega, xs=xs, y_star=2.0)).magnitude
    b = sp.field_discrete(_bundle(omega, xs=xs + delta, y_star=2.0)).magnitude
    assert np.max(np.abs(a - b)) < 1e-12


def test_backends_and_workers_agree():
    xs = np.linspace(-1, 1, 301)
    out = {}
    for name in ("numba", "numpy"):
        set_backend(name)
        b = _bundle(200.0, medium=WAVE, xs=xs, y_star=2.0)
        out[name] = sp.field_discrete(b).values
        assert np.array_equal(out[name], sp.field_discrete(b, workers=3).values)
    set_backend("numba")
    assert np.max(np.abs(out["numba"] - out["numpy"])) < 1e-12


def test_caustic_detection():
    with pytest.raises(sp.CausticError):
        sp.check_monotone(np.array([0.0, 0.5, 0.4, 1.0]))
    sp.check_monotone(np.array([3.0, 2.0, 1.0]))


def test_missed_beams_are_excluded_with_warning():
    m = media.constant(domain=(-1.2, 1.2, -1, 4))
    cfg = sp.SuperposConfig(omega=100.0, receiver_xs=np.linspace(-0.2, 0.2, 5), s_range=(-1.5, 1.5))
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        b = sp.plane_wave_bundle(m, cfg, srcs.flat())
    assert b.missed > 0 and any("did not reach" in str(x.message) for x in w)
    assert np.all(np.abs(b.s) <= 1.2)
