import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad, solve_ivp

from gbl import cc_analysis as cc


def test_initial_values():
    k = cc.taylor_coeffs(0.0, 2.0)
    assert k.phi2 == pytest.approx(0.5j) and k.phi4 == 0 and k.A0 == 1 and k.A2 == 0
    assert k.phi3 == 0 and k.A1 == 0


def test_documented_values():
    k = cc.taylor_coeffs(1.0, 1.0)
    assert k.phi2 == pytest.approx(0.5 + 0.5j, abs=1e-15)
    assert k.phi4 == pytest.approx(0.75, abs=1e-15)


def _integrate(Q0, t_end):
    y0 = np.array([1j / Q0, 0, 0, 1, 0, 0], complex)
    sol = solve_ivp(lambda t, y: cc.taylor_rhs(y), (0.0, t_end), y0, method="DOP853", rtol=1e-13, atol=1e-15,
                    dense_output=True)
    return sol


def test_closed_forms_match_integration():
    ts = np.linspace(0, 5, 51)
    for Q0 in (0.1, 1.0, 10.0):
        sol = _integrate(Q0, 5.0)
        num = sol.sol(ts)
        k = cc.taylor_coeffs(ts, Q0)
        closed = np.vstack([k.phi2, k.phi3, k.phi4, k.A0, k.A1, k.A2])
        assert np.max(np.abs(num - closed)) < 1e-9


def test_d_moment_odd_vanishes_and_gaussian():
    for p in (1, 3, 5, 7):
        assert cc.d_moment(p, 0.4) == 0
    assert cc.d_moment(0, 0.0) == pytest.approx(2.5066283, abs=1e-7)
    with pytest.raises(ValueError):
        cc.d_moment(9, 0.0)


def _moment_quad(p, c1):
    re_ = quad(lambda z: z**p * math.exp(-z * z / 2) * math.cos(c1 * z * z), -12, 12, limit=400, epsabs=1e-13)[0]
    im = quad(lambda z: z**p * math.exp(-z * z / 2) * math.sin(c1 * z * z), -12, 12, limit=400, epsabs=1e-13)[0]
    return re_ + 1j * im


def test_d4_documented_example():
    want = math.gamma(2.5) * 2**2.5 * (1 - 1.4j) ** -2.5
    assert cc.d_moment(4, 0.7) == pytest.approx(want, abs=1e-12)
    assert abs(cc.d_moment(4, 0.7) - _moment_quad(4, 0.7)) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([0, 2, 4, 6]), st.floats(-2.0, 2.0))
def test_d_moment_matches_quadrature(p, c1):
    assert abs(cc.d_moment(p, c1) - _moment_quad(p, c1)) < 1e-9


def test_line_constant_is_universal():
    n0 = [cc.line_constant(q, y) for q in (0.2, 1.0, 4.0, 9.0) for y in (0.5, 2.0, 3.0, 7.0, 11.0)]
    assert max(abs(v - n0[0]) for v in n0) < 1e-12 * abs(n0[0])
    assert n0[0] == pytest.approx(0.375j * math.sqrt(2 * math.pi), rel=1e-12)


def test_line_star_magnitude():
    n0 = abs(cc.line_constant())
    for Q0, y in ((0.5, 1.0), (3.0, 3.0), (10.0, 2.0)):
        k = cc.error_constants(Q0, y, 77.0)
        assert abs(k.C_star) == pytest.approx(n0 * y * Q0**2 / (Q0**2 + y**2) ** 2.5, rel=1e-12)


def test_constants_vanish_at_source():
    k = cc.error_constants(1.0, 1e-9, 100.0)
    assert abs(k.C_star) < 1e-8


def test_relative_error_forms_agree():
    for Q0 in (0.3, 1.0, 3.0, 30.0):
        for y in (0.5, 3.0):
            for w in (50.0, 400.0):
                a = cc.relative_error(cc.error_constants(Q0, y, w))
                b = cc.line_relative_error(Q0, y, w)
                assert a == pytest.approx(b, rel=1e-12)


def test_relative_error_scaling():
    a = cc.relative_error(cc.error_constants(2.0, 3.0, 100.0, -1.0))
    b = cc.relative_error(cc.error_constants(2.0, 3.0, 200.0, -1.0))
    assert b == pytest.approx(a / 2, rel=1e-13)


def test_line_q0_equal_y_star_limit():
    vals = [cc.relative_error(cc.error_constants(y, y, 100.0)) * 100.0 * math.sqrt(y) for y in (10.0, 100.0, 1000.0)]
    assert max(vals) / min(vals) - 1 < 1e-12


def test_error_constant_invariants():
    k = cc.error_constants(1.5, 2.0, 100.0, -1.0)
    assert k.a1 == 0 and k.b1 == 0 and k.e11 == 0 and k.e21 == 0
    assert k.C_star == pytest.approx(np.exp(1j * 100.0 * 2.0) * (k.e12 + k.e22))
    assert k.q_star == k.q + 2 and k.sigma == 1
    with pytest.raises(ValueError):
        cc.error_constants(1.0, 2.0, 100.0, 0.6)


def test_width_table():
    tab = cc.width_vs_q0(3.0, 100.0, np.linspace(0.5, 8.0, 76))
    assert tab.argmin == pytest.approx(3.0)
    assert cc.width_at_receiver(3.0, 3.0, 100.0) == pytest.approx(math.sqrt(18 / 300))
    left = tab.eta[tab.q0 < 3.0]
    right = tab.eta[tab.q0 > 3.0]
    assert np.all(np.diff(left) < 0) and np.all(np.diff(right) > 0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 100.0), st.floats(0.1, 10.0))
def test_equal_width_partner(Q0, y):
    q2 = cc.equal_width_partner(Q0, y)
    assert cc.width_at_receiver(q2, y, 100.0) == pytest.approx(float(cc.width_at_receiver(Q0, y, 100.0)), rel=1e-12)
