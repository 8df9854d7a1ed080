import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zdlab.fourier import (HardyCoeffs, TorusFunction, fourier_coeffs, grid_points,
                           inner_product, l2_norm_sq, reconstruct_real, szego_project)

coef = st.floats(-2, 2, allow_nan=False)
trig_polys = st.builds(
    lambda m, a, b: TorusFunction.trig(m, a, b[: len(a)] + [0.0] * (len(a) - len(b))),
    coef, st.lists(coef, min_size=1, max_size=5), st.lists(coef, max_size=5))


def test_cosine_coefficients():
    f = fourier_coeffs(TorusFunction.trig(0, [2.0]), 2)
    assert f[1] == 1 and f[-1] == 1
    assert f[0] == 0 and f[2] == 0 and f[-2] == 0


def test_constant_coefficients():
    f = fourier_coeffs(TorusFunction.constant(3.0), 1)
    assert f[0] == 3 and f[1] == 0 and f[-1] == 0


def test_sine_coefficients():
    f = fourier_coeffs(TorusFunction.trig(0, [0.0], [1.0]), 1)
    assert f[1] == -0.5j and f[-1] == 0.5j


def test_bad_truncation():
    with pytest.raises(ValueError):
        fourier_coeffs(TorusFunction.constant(1.0), 0)


def test_grid_aliasing_rejected():
    u = TorusFunction.sample(np.cos, 8)
    with pytest.raises(ValueError):
        fourier_coeffs(u, 4)
    assert abs(fourier_coeffs(u, 3)[1] - 0.5) < 1e-14


@pytest.mark.parametrize("u, expected", [
    (TorusFunction.trig(0, [2.0]), [0, 1, 0]),
    (TorusFunction.constant(3.0), [3, 0, 0]),
    (TorusFunction.trig(0, [0.0], [1.0]), [0, -0.5j, 0]),
])
def test_szego_and_back(u, expected):
    h = szego_project(fourier_coeffs(u, 2))
    np.testing.assert_allclose(h.c, expected)
    g = reconstruct_real(h)
    x = grid_points(32)
    np.testing.assert_allclose(g(x), u(x), atol=1e-15)


def test_reconstruct_rejects_complex_mean():
    with pytest.raises(ValueError):
        reconstruct_real(HardyCoeffs([1 + 1e-6j, 0]))
    reconstruct_real(HardyCoeffs([1 + 1e-9j, 0]))


def test_inner_products():
    q = HardyCoeffs([0, 1, 0])
    one = HardyCoeffs([1, 0, 0])
    assert inner_product(q, q) == 1
    assert inner_product(q, one) == 0
    assert inner_product(szego_project(fourier_coeffs(TorusFunction.trig(0, [2.0]), 2)), one) == 0
    with pytest.raises(ValueError):
        inner_product(q, HardyCoeffs([1, 0]))


@given(trig_polys)
def test_round_trip(u):
    K = max(u.degree, 1)
    g = reconstruct_real(szego_project(fourier_coeffs(u, K)))
    x = grid_points(64)
    np.testing.assert_allclose(g(x), u(x), atol=1e-10)


@given(trig_polys)
def test_parseval(u):
    c = szego_project(fourier_coeffs(u, max(u.degree, 1))).c
    rhs = abs(c[0]) ** 2 + 2 * np.sum(np.abs(c[1:]) ** 2)
    assert abs(l2_norm_sq(u, 64) - rhs) <= 1e-10


@given(trig_polys)
def test_hermitian_symmetry(u):
    f = fourier_coeffs(u, 6)
    for k in range(7):
        assert f[-k] == np.conj(f[k])


@given(trig_polys, st.floats(-10, 10))
def test_shift_matches_translation(u, a):
    x = grid_points(16)
    np.testing.assert_allclose(u.shifted(a)(x), u(x - a), atol=1e-12)


def test_json_round_trip(tmp_path):
    for u in (TorusFunction.trig(0.5, [1.0, 0.25], [0.0, -1.0]),
              TorusFunction.grid(np.arange(8.0), "linear")):
        p = tmp_path / "u.json"
        p.write_text(json.dumps(u.to_dict()))
        assert TorusFunction.load(p) == u


def test_grid_validation():
    with pytest.raises(ValueError):
        TorusFunction.grid([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        TorusFunction.grid([1.0, 2.0])
    with pytest.raises(ValueError):
        TorusFunction.from_dict({"type": "spline"})


def test_grid_trig_interpolation_exact_for_band_limited():
    u = TorusFunction.sample(lambda x: np.cos(x) + 0.3 * np.sin(2 * x), 32)
    x = np.linspace(0, 7, 101)
    np.testing.assert_allclose(u(x), np.cos(x) + 0.3 * np.sin(2 * x), atol=1e-6)


def test_linear_grid_is_piecewise_linear():
    u = TorusFunction.grid([0.0, 1.0, 0.0, -1.0], "linear")
    assert u(np.pi / 4) == pytest.approx(0.5)
    assert u(2 * np.pi + np.pi / 2) == pytest.approx(1.0)
    assert u.extrema() == (-1.0, 1.0)


def test_periodicity_and_extrema(two_mode):
    x = np.linspace(0, 2 * np.pi, 17)
    np.testing.assert_allclose(two_mode(x), two_mode(x + 2 * np.pi), atol=1e-12)
    lo, hi = TorusFunction.trig(0, [1.0]).extrema()
    assert lo == pytest.approx(-1, abs=1e-12) and hi == pytest.approx(1, abs=1e-12)
