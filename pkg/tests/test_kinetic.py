import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zdlab.characteristics import alternating_sum, branches
from zdlab.fourier import TorusFunction, grid_points
from zdlab.kinetic import (KineticDensity, QuadratureError, as_coefficient, as_coefficients,
                           as_hardy_log, as_profile, as_profile_quadrature, chi0, chi_values,
                           godunov_reference, l1_distance, riemann_datum,
                           riemann_entropy_solution, transport_collapse_step, trotter_entropy)


def test_chi_examples():
    two, minus_two = TorusFunction.constant(2.0), TorusFunction.constant(-2.0)
    assert chi0(two, 0.0, 1.0) == 1
    assert chi0(minus_two, 0.0, -1.0) == -1
    assert chi0(two, 0.0, 3.0) == 0
    assert chi0(two, 0.0, -1.0) == 0
    assert set(np.unique(chi_values(np.linspace(-2, 2, 9), np.linspace(-3, 3, 9)))) <= {-1, 0, 1}


def test_density_support(two_mode):
    f = KineticDensity.of(two_mode)
    x = grid_points(64)
    assert np.all(f(x, f.Y + 1e-9) == 0) and np.all(f(x, -f.Y - 1e-9) == 0)


def test_constant_and_time_zero(two_mode):
    x = grid_points(256)
    np.testing.assert_array_equal(as_profile(TorusFunction.constant(1.25), 3.0, x), 1.25)
    np.testing.assert_allclose(as_profile(two_mode, 0.0, x), two_mode(x), atol=1e-7)


def test_spot_value(cos1):
    assert abs(as_profile_quadrature(cos1, 1.0, np.pi / 2)) < 1e-6


def test_quadrature_validation(cos1):
    with pytest.raises(ValueError):
        as_profile(cos1, 1.0, [0.0], n_quad=64)
    with pytest.raises(QuadratureError):
        as_profile(cos1, 1.0, [0.3], max_doublings=0)


def test_coefficient_limits(two_mode, cos2):
    assert as_coefficient(two_mode, 0.7, 0) == pytest.approx(0.0, abs=1e-15)
    assert as_coefficient(cos2, 1e-12, 1) == pytest.approx(1.0, abs=1e-10)
    assert as_coefficient(TorusFunction.constant(3.0), 0.4, 0) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        as_coefficient(cos2, 0.3, -1)


def test_coefficient_self_oracle(cos2):
    # two quadrature resolutions of the same integral
    from zdlab.kinetic import _phi
    a = -2j * 0.3

    def mean(n):
        x = grid_points(n)
        u = cos2(x)
        return np.mean(u * _phi(a * u) * np.exp(-1j * x))

    assert abs(mean(64) - mean(128)) < 1e-10
    assert abs(as_coefficient(cos2, 0.3, 1) - mean(128)) < 1e-10


def test_coefficients_match_profile_transform(two_mode):
    # the profile has square-root cusps after breaking, so aliasing decays slowly
    n = 4096
    v = as_profile(two_mode, 0.8, grid_points(n), tol=1e-9, max_doublings=40)
    fft = np.fft.fft(v) / n
    np.testing.assert_allclose(fft[:17], as_coefficients(two_mode, 0.8, 16), atol=1e-5)


def test_hardy_log(two_mode):
    assert as_hardy_log(two_mode, 0.5, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert as_hardy_log(TorusFunction.constant(1.5), 0.7, 0.3 - 0.4j) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        as_hardy_log(two_mode, 0.5, 1.0)
    with pytest.raises(ValueError):
        as_hardy_log(two_mode, 0.0, 0.5)


def test_hardy_log_series(two_mode):
    # Taylor coefficients in z by FFT on the circle |z| = 0.5
    n, r, t = 64, 0.5, 0.6
    z = r * np.exp(2j * np.pi * np.arange(n) / n)
    F = np.array([as_hardy_log(two_mode, t, zz) for zz in z])
    taylor = np.fft.fft(F) / n / r ** np.arange(n)
    np.testing.assert_allclose(taylor[:17], as_coefficients(two_mode, t, 16), atol=1e-6)


@given(st.floats(-10, 10), st.floats(-1.5, 1.5))
def test_translation_equivariance(a, t):
    u = TorusFunction.trig(0.1, [1.0, 0.4], [0.0, 0.3])
    x = grid_points(16)
    lhs = as_profile(u.shifted(a), t, x, tol=1e-10, max_doublings=40)
    rhs = as_profile(u, t, x - a, tol=1e-10, max_doublings=40)
    np.testing.assert_allclose(lhs, rhs, atol=1e-8)


def test_odd_symmetry():
    # odd data give odd profiles
    u = TorusFunction.trig(0, [0.0, 0.0], [1.0, 0.3])
    x = grid_points(32)
    np.testing.assert_allclose(as_profile(u, 0.9, -x), -as_profile(u, 0.9, x), atol=1e-7)


def test_collapse_step_examples(cos1):
    x = grid_points(64)
    np.testing.assert_allclose(transport_collapse_step(cos1, 0.0, 64)(x), cos1(x))
    np.testing.assert_array_equal(
        transport_collapse_step(TorusFunction.constant(0.5), 0.3, 64).values, 0.5)
    v = transport_collapse_step(cos1, 0.25, 64)
    ref = [alternating_sum(branches(cos1, 0.25, xi)) for xi in x]
    np.testing.assert_allclose(v.values, ref, atol=1e-6)
    with pytest.raises(ValueError):
        transport_collapse_step(cos1, 0.1, 48)


def test_trotter_trivial(cos1):
    x = grid_points(64)
    np.testing.assert_allclose(trotter_entropy(cos1, 0.0, 3, 64)(x), cos1(x), atol=1e-12)
    c = trotter_entropy(TorusFunction.constant(-0.4), 1.0, 4, 64)
    np.testing.assert_array_equal(c.values, -0.4)
    with pytest.raises(ValueError):
        trotter_entropy(cos1, 1.0, 0, 64)


def test_trotter_riemann_absolute():
    err = l1_distance(trotter_entropy(riemann_datum(1024), 0.5, 64, 1024),
                      lambda x: riemann_entropy_solution(0.5, x))
    assert err <= 0.05


def test_trotter_smooth_convergence(cos1):
    # after breaking, against a fine Godunov reference
    ref = godunov_reference(cos1, 1.0, 8192)
    e = [l1_distance(trotter_entropy(cos1, 1.0, n, 512), ref) for n in (4, 16)]
    assert e[1] < 0.6 * e[0]


def test_godunov(cos1):
    np.testing.assert_allclose(godunov_reference(TorusFunction.constant(0.3), 1.0, 64).values, 0.3)
    g = godunov_reference(cos1, 0.3, 1024)
    x = grid_points(1024)
    exact = [alternating_sum(branches(cos1, 0.3, xi)) for xi in x[::16]]
    assert np.max(np.abs(g(x[::16]) - exact)) < 0.02
    err = l1_distance(godunov_reference(riemann_datum(1024), 0.5, 1024),
                      lambda x: riemann_entropy_solution(0.5, x))
    assert err <= 0.02
    with pytest.raises(ValueError):
        godunov_reference(cos1, 1.0, 32)


def test_riemann_closed_form():
    x = np.array([0.5, -0.5, 2.0, np.pi, 4.0])
    np.testing.assert_allclose(riemann_entropy_solution(0.5, x), [0.5, -0.5, 1, 0, -1])
