import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltachain.distributions import (
    Atom, QuadratureConfig, TestFunction, act, circle_integral, default_tolerance,
    product_with_continuous, rho_extrapolate,
)
from deltachain.errors import (DomainError, ExtrapolationError, NonFiniteSample, UndefinedProduct,
                               UnsupportedProduct)
from deltachain.kernels import DeltaKernelSpec, kernel_values


def test_circle_integral_examples():
    rho, t1 = 0.5, 0.9
    mass = circle_integral(lambda t: rho * kernel_values(0, rho, t - t1, proper=False).real)
    assert mass == pytest.approx(0.5, abs=1e-14)
    assert circle_integral(lambda t: np.cos(3 * t)) == pytest.approx(0, abs=1e-15)
    a = (1 + rho ** 2) / (2 * rho)
    assert circle_integral(lambda t: 1 / (a - np.cos(t))) == pytest.approx(8 * math.pi / 3, rel=1e-14)


def test_circle_integral_names_bad_node():
    with pytest.raises(NonFiniteSample, match="node 0"):
        with np.errstate(divide="ignore"):
            circle_integral(lambda t: 1 / (t + math.pi), node_count=16)


def test_rho_extrapolate_examples():
    assert rho_extrapolate([(0.9, 0.9), (0.99, 0.99), (0.999, 0.999)])[0] == pytest.approx(1, abs=1e-13)
    assert rho_extrapolate([(0.5, 3.0), (0.6, 3.0), (0.7, 3.0)]) == (3.0, 0.0)
    table = [(r, 2 - (1 - r) ** 2) for r in (0.5, 0.75, 0.875, 0.9375)]
    assert rho_extrapolate(table)[0] == pytest.approx(2, abs=1e-14)
    with pytest.raises(ExtrapolationError):
        rho_extrapolate([(0.5, 1), (0.6, 1)])
    with pytest.raises(ExtrapolationError):
        rho_extrapolate([(0.5, 1), (0.7, 1), (0.6, 1)])


def test_quadrature_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(node_count=24)
    with pytest.raises(DomainError):
        QuadratureConfig(rho_ladder=(0.5, 0.4, 0.9))
    with pytest.raises(DomainError):
        QuadratureConfig(rho_ladder=(0.5, 1.0))


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("DELTACHAIN_TOL", "1e-9")
    assert default_tolerance() == 1e-9
    assert QuadratureConfig().tolerance == 1e-9
    monkeypatch.setenv("DELTACHAIN_TOL", "abc")
    with pytest.raises(DomainError):
        default_tolerance()


@pytest.mark.parametrize("n, g, t1, want", [
    (0, TestFunction.cos(0), 0.3, 1.0),
    (0, TestFunction.cos(3), math.pi / 4, math.cos(3 * math.pi / 4)),
    (1, TestFunction.sin(2), 0.0, -2.0),
    (2, TestFunction.cos(1), 0.0, -1.0),
])
def test_act_examples(n, g, t1, want):
    r = act(DeltaKernelSpec(t1, n), g)
    assert r.converged
    assert r.value == pytest.approx(want, abs=1e-6)
    assert 0 <= r.error_estimate <= QuadratureConfig().tolerance
    assert [rho for rho, _ in r.extrapolation_table] == list(QuadratureConfig().rho_ladder)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.floats(-math.pi, math.pi),
       st.lists(st.floats(-1, 1), min_size=9, max_size=9),
       st.lists(st.floats(-1, 1), min_size=8, max_size=8))
def test_act_is_signed_derivative(n, t1, alphas, betas):
    g = TestFunction.from_coefficients(alphas[0], alphas[1:], betas)
    r = act(DeltaKernelSpec(t1, n), g)
    want = (-1) ** n * g.derivative(t1, n)
    scale = sum(abs(a) + abs(b) for a, b in zip(alphas[1:], betas)) * 8 ** n + abs(alphas[0])
    assert r.converged
    assert abs(r.value - want) <= 1e-6 * max(1.0, scale / 100)


def test_act_is_linear():
    t1 = 0.4
    f = TestFunction.from_coefficients(0.2, [1.0, 0.0, -0.5], [0.3, 0.7, 0.0])
    g = TestFunction.from_coefficients(-1.0, [0.0, 2.0], [1.5, -0.25])
    for n in (0, 1, 2):
        spec = DeltaKernelSpec(t1, n)
        lhs = act(spec, 2.0 * f + g * -3.0).value
        rhs = 2.0 * act(spec, f).value - 3.0 * act(spec, g).value
        assert lhs == pytest.approx(rhs, abs=1e-12 * (1 + abs(rhs)))
        assert act(spec, f, coeff=-2.5).value == pytest.approx(-2.5 * act(spec, f).value, rel=1e-14)


def test_act_reports_non_convergence_instead_of_guessing():
    g = TestFunction.from_coefficients(0.4, [1.0, 0.5, -0.3, 0.2], [0.3, -0.7, 0.25, 0.1])
    r = act(DeltaKernelSpec(0.0, 5), g)
    assert not r.converged
    tight = act(DeltaKernelSpec(0.0, 3), g, QuadratureConfig(tolerance=1e-14))
    assert not tight.converged and tight.error_estimate > 1e-14


def test_test_function_derivative_is_exact():
    g = TestFunction.from_coefficients(1.0, [0.0, 2.0], [3.0, 0.0])
    # g = 0.5 + 2 cos 2t + 3 sin t
    t = 0.7
    assert g(t) == pytest.approx(0.5 + 2 * math.cos(2 * t) + 3 * math.sin(t), rel=1e-15)
    assert g.derivative(t, 3) == pytest.approx(16 * math.sin(2 * t) - 3 * math.cos(t), rel=1e-14)
    rho = 0.6
    assert g.harmonic(rho, np.array([t]))[0] == pytest.approx(
        0.5 + 2 * rho ** 2 * math.cos(2 * t) + 3 * rho * math.sin(t), rel=1e-15)


def test_product_examples():
    assert product_with_continuous(TestFunction.cos(1), Atom(0.0)).coeff == 1.0
    assert product_with_continuous(TestFunction.sin(1), Atom(0.0)).coeff == 0.0
    with pytest.raises(UndefinedProduct):
        product_with_continuous(Atom(0.2), Atom(0.2))
    with pytest.raises(UndefinedProduct):
        product_with_continuous(Atom(math.pi), Atom(-math.pi))
    with pytest.raises(UnsupportedProduct):
        product_with_continuous(TestFunction.cos(1), Atom(0.0, order=1))
    with pytest.raises(UnsupportedProduct):
        product_with_continuous(Atom(0.1), Atom(0.2))


def test_product_inner_function_is_scaled_kernel():
    g = TestFunction.cos(2)
    atom = product_with_continuous(g, Atom(0.5, 0, 3.0))
    z = 0.4 * complex(math.cos(1.0), math.sin(1.0))
    w = complex(kernel_values(0, 0.4, 1.0 - 0.5, proper=False))
    assert atom.inner_function(z) == pytest.approx(3.0 * math.cos(1.0) * w, rel=1e-14)
