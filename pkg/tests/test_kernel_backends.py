"""Point-by-point parity between the compiled and pure-Python kernels."""

import math
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailbound._kernels import BACKEND, _pyfallback

native = pytest.importorskip(
    "tailbound._kernels._native",
    reason="compiled kernel extension not built")


@pytest.mark.skipif(bool(os.environ.get("TAILBOUND_PURE_PYTHON")),
                    reason="fallback forced by environment")
def test_backend_selection_reports_native():
    assert BACKEND == "native"


@pytest.mark.parametrize("p", [1, 2, 3, 5, 8])
def test_taylor_remainder_parity(p):
    for x in np.linspace(-40, 40, 81):
        a = native.taylor_remainder(p, float(x))
        b = _pyfallback.taylor_remainder(p, float(x))
        assert a == pytest.approx(b, rel=1e-14, abs=1e-300)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10),
       st.floats(min_value=-40, max_value=40))
def test_taylor_remainder_parity_property(p, x):
    assert native.taylor_remainder(p, x) == pytest.approx(
        _pyfallback.taylor_remainder(p, x), rel=1e-13, abs=1e-300)


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-0.35, max_value=1e6))
def test_lambert_parity_property(x):
    assert native.lambert_w0(x) == pytest.approx(
        _pyfallback.lambert_w0(x), rel=1e-13, abs=1e-15)


def test_lambert_exp_parity():
    for u in (-5.0, 0.0, 10.0, 600.0, 689.9, 691.0, 5000.0):
        assert native.lambert_w0_exp(u) == pytest.approx(
            _pyfallback.lambert_w0_exp(u), rel=1e-13)


def test_poly_exp_residual_parity(rng):
    for _ in range(100):
        q = int(rng.integers(0, 5))
        alpha = tuple(float(v) for v in rng.normal(0, 3, q + 1))
        for x in np.linspace(0.0, 20.0, 11):
            a = native.poly_exp_residual(alpha, float(x))
            b = _pyfallback.poly_exp_residual(alpha, float(x))
            assert a == pytest.approx(b, rel=1e-14, abs=1e-12)


def test_poly_exp_scan_parity(rng):
    for _ in range(50):
        q = int(rng.integers(0, 4))
        alpha = [float(rng.uniform(1.2, 30.0))]
        alpha += [float(v) for v in rng.normal(0.0, 2.0, q)]
        x_max = max(4.0 * math.log(alpha[0]), 50.0)
        a = native.poly_exp_scan(tuple(alpha), x_max, 1e-3 * x_max, 1e-12)
        b = _pyfallback.poly_exp_scan(tuple(alpha), x_max, 1e-3 * x_max, 1e-12)
        assert len(a) == len(b)
        for ra, rb in zip(a, b):
            assert ra == pytest.approx(rb, rel=1e-12)
