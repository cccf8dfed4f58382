import math

import numpy as np
import pytest
from scipy.integrate import quad

from wavebounds.quadrature import (
    QuadResult,
    _NODES,
    _WEIGHTS_G,
    _WEIGHTS_K,
    adaptive_quadrature,
    kronrod_panel,
)


def test_rule_constants():
    assert _WEIGHTS_K.sum() == pytest.approx(2.0, abs=1e-14)
    assert _WEIGHTS_G.sum() == pytest.approx(2.0, abs=1e-14)
    np.testing.assert_allclose(_NODES, -_NODES[::-1], atol=1e-16)
    np.testing.assert_allclose(_WEIGHTS_K, _WEIGHTS_K[::-1], atol=1e-16)


@pytest.mark.parametrize("degree", [4, 10, 18, 22])
def test_polynomial_exactness(degree):
    # The 15-point Kronrod rule is exact through degree 22.
    panel = kronrod_panel(lambda x: x**degree, 0.0, 1.0)
    assert panel.value.real == pytest.approx(1.0 / (degree + 1), rel=1e-13)


@pytest.mark.parametrize(
    "f,a,b",
    [
        (lambda x: np.exp(-(x**2)), 0.0, 5.0),
        (lambda x: np.sin(50.0 * x), 0.0, 2.0 * math.pi),
        (lambda x: 1.0 / (1.0 + x**2), -4.0, 9.0),
        (lambda x: np.sqrt(np.abs(x)) * np.cos(3.0 * x), 0.5, 7.0),
    ],
)
def test_matches_scipy_and_reports_honest_error(f, a, b):
    ours = adaptive_quadrature(f, a, b, rel_tol=1e-11, abs_tol=1e-13)
    ref, _ = quad(lambda x: float(f(np.array([x]))[0]), a, b, limit=400)
    assert abs(ours.value - ref) <= max(ours.abs_error, 1e-11 * abs(ref) + 1e-12)


def test_complex_integrand():
    result = adaptive_quadrature(lambda x: np.exp(1j * x), 0.0, math.pi)
    assert result.value == pytest.approx(2.0j, abs=1e-12)


def test_breakpoints_split_kinks():
    result = adaptive_quadrature(
        lambda x: np.abs(x - 0.5), 0.0, 1.0, breakpoints=[0.5], abs_tol=1e-14
    )
    assert result.value == pytest.approx(0.25, abs=1e-14)
    assert result.evaluations == 30  # two exact panels, no refinement needed


def test_budget_exhaustion_keeps_honest_error():
    # Highly oscillatory with a tiny budget: the reported error must cover the miss.
    f = lambda x: np.sin(400.0 * x)
    exact = (1.0 - math.cos(400.0 * 3.0)) / 400.0
    result = adaptive_quadrature(f, 0.0, 3.0, max_panels=8, abs_tol=1e-15, rel_tol=1e-15)
    assert abs(result.value - exact) <= result.abs_error


def test_refinement_is_monotone_in_tolerance():
    f = lambda x: np.exp(-x) * np.sin(7.0 * x) ** 2
    errors = [
        adaptive_quadrature(f, 0.0, 10.0, rel_tol=tol, abs_tol=1e-16).abs_error
        for tol in (1e-4, 1e-6, 1e-8, 1e-10)
    ]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_deterministic_repeat():
    f = lambda x: np.cos(13.0 * x) / (1.0 + x**2)
    r1 = adaptive_quadrature(f, 0.0, 20.0, rel_tol=1e-10)
    r2 = adaptive_quadrature(f, 0.0, 20.0, rel_tol=1e-10)
    assert r1 == r2


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        adaptive_quadrature(lambda x: x, 1.0, 1.0)


def test_quad_result_rejects_negative_error():
    with pytest.raises(ValueError):
        QuadResult(value=1.0, abs_error=-1e-3, evaluations=15)
