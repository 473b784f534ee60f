import cmath
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from deltachain.errors import DomainError, PoleError
from deltachain.exact import GaussianRational, Poly
from deltachain.kernels import (
    DeltaKernelSpec, RationalKernel, delta_boundary_parts, delta_derivative_kernel_eval,
    delta_kernel_eval, eulerian_numerator, kernel_values, log_primitive_eval, poisson_denominator,
)
from deltachain.series import PolarPoint, choose_truncation, delta_taylor_coefficients, evaluate_series

q = sp.symbols("q")


def polar(z: complex) -> PolarPoint:
    return PolarPoint(abs(z), cmath.phase(z))


def test_delta_kernel_examples():
    assert delta_kernel_eval(PolarPoint(0, 1.3), 0.0) == pytest.approx(1 / (2 * math.pi), abs=1e-16)
    w = delta_kernel_eval(PolarPoint(0.5, 0), 0.0)
    assert w.real == pytest.approx(3 / (2 * math.pi), rel=1e-15) and w.imag == 0
    oracle = evaluate_series(delta_taylor_coefficients(0.0, 0, 200), PolarPoint(0.5, 0))
    assert w == pytest.approx(oracle, rel=1e-15)
    assert delta_kernel_eval(PolarPoint(1, math.pi), 0.0).real == pytest.approx(0, abs=1e-16)
    with pytest.raises(PoleError):
        delta_kernel_eval(PolarPoint(1, 0.4), 0.4)


def test_boundary_parts_examples():
    u, v = delta_boundary_parts(0.9, 0.2, 0.2)
    assert u == pytest.approx(1 / (2 * math.pi) + 9 / math.pi, rel=1e-14) and v == 0
    u, _ = delta_boundary_parts(0.5, math.pi / 3, 0.0)
    assert u == pytest.approx(1 / (2 * math.pi), rel=1e-14)
    with pytest.raises(PoleError):
        delta_boundary_parts(1.0, 1.0, 1.0)


@given(st.floats(0, 0.999), st.floats(-math.pi, math.pi), st.floats(-3, 3))
def test_boundary_parts_match_kernel_and_poisson_form(rho, theta, t1):
    u, v = delta_boundary_parts(rho, theta, t1)
    w = delta_kernel_eval(PolarPoint(rho, theta), t1)
    scale = 1 + abs(w)
    assert abs(u - w.real) <= 1e-13 * scale and abs(v - w.imag) <= 1e-13 * scale
    d = float(poisson_denominator(rho, theta - t1))
    assert abs(2 * math.pi * d * u - (1 - rho * rho)) <= 1e-13


def test_eulerian_examples():
    assert eulerian_numerator(1) == Poly([1])
    assert eulerian_numerator(2) == Poly([1, 1])
    assert eulerian_numerator(3) == Poly([1, 4, 1])
    assert eulerian_numerator(4) == Poly([1, 11, 11, 1])
    with pytest.raises(DomainError):
        eulerian_numerator(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_eulerian_matches_symbolic_differentiation(n):
    expr = q / (1 - q) / sp.pi
    for _ in range(n):
        expr = sp.I * q * sp.diff(expr, q)
    numerator = sp.cancel(expr * (1 - q) ** (n + 1) * sp.pi / (sp.I ** n * q))
    assert sp.Poly(numerator, q).all_coeffs()[::-1] == list(eulerian_numerator(n).coeffs)


@pytest.mark.parametrize("n", range(1, 10))
def test_eulerian_numbers_explicit_formula(n):
    want = [sum((-1) ** j * math.comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))
            for k in range(n)]
    assert list(eulerian_numerator(n).coeffs) == want


def test_exact_angular_derivative_chain():
    k = RationalKernel.for_order(0)
    for n in range(1, 7):
        k = k.angular_derivative()
        assert k == RationalKernel.for_order(n)
        assert k.pole_order == n + 1
        assert k.prefactor == GaussianRational.i_power(n)


def test_rational_kernel_requires_exact_pole_order():
    with pytest.raises(DomainError):
        RationalKernel(Poly([1, -1]), 2, GaussianRational(1))


def test_derivative_kernel_examples():
    w1 = delta_derivative_kernel_eval(DeltaKernelSpec(0.0, 1), PolarPoint(0.5, 0))
    assert w1 == pytest.approx(2j / math.pi, rel=1e-15)
    w0 = delta_derivative_kernel_eval(DeltaKernelSpec(0.0, 0), PolarPoint(0.5, 0))
    assert w0 == pytest.approx(1 / math.pi, rel=1e-15)
    assert w0 == pytest.approx(delta_kernel_eval(PolarPoint(0.5, 0), 0.0) - 1 / (2 * math.pi))


@pytest.mark.parametrize("n, numerator", [(1, lambda z: z), (2, lambda z: z * (z + 1)),
                                          (3, lambda z: z * (z * z + 4 * z + 1))])
def test_published_rational_forms(n, numerator):
    # -1/(pi i^n) * z N(z, z1) z1 / (z - z1)^(n+1) with z1 = 1
    for z in (0.5j, 0.3 - 0.6j, -0.8, 0.95 * cmath.exp(0.2j)):
        direct = -1 / (math.pi * 1j ** n) * numerator(z) / (z - 1) ** (n + 1)
        got = delta_derivative_kernel_eval(DeltaKernelSpec(0.0, n), polar(z))
        assert got == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("n", range(0, 5))
def test_series_kernel_agreement(n):
    t1 = 0.8
    for rho in (0.1, 0.5, 0.75, 0.9):
        K = choose_truncation(rho, 1e-15, growth=n)
        s = delta_taylor_coefficients(t1, n, K)
        if n == 0:
            s = s.proper()
        k = np.arange(K + 1)
        scale = float(np.sum(np.abs(s.coefficients) * rho ** k))
        for theta in np.linspace(-math.pi, math.pi, 13):
            p = PolarPoint(rho, theta)
            got = delta_derivative_kernel_eval(DeltaKernelSpec(t1, n), p)
            assert abs(evaluate_series(s, p) - got) <= 1e-12 * scale


@given(st.floats(0, 0.99), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi),
       st.floats(-math.pi, math.pi), st.integers(0, 4))
def test_kernels_depend_only_on_q(rho, theta, t1, phi, n):
    a = delta_derivative_kernel_eval(DeltaKernelSpec(t1, n), PolarPoint(rho, theta))
    b = delta_derivative_kernel_eval(DeltaKernelSpec(t1 + phi, n), PolarPoint(rho, theta + phi))
    # rounding of theta + phi moves Delta theta by ~1e-15; w varies on the scale |1 - q|
    dist = abs(1 - rho * cmath.exp(1j * (theta - t1)))
    assert abs(a - b) <= 1e-14 * (n + 2) * abs(a) / dist


def test_log_primitive_examples():
    assert log_primitive_eval(PolarPoint(0, 0.7), 0.0) == 0
    assert log_primitive_eval(PolarPoint(0.5, 0), 0.0) == pytest.approx(1j / math.pi * math.log(0.5), rel=1e-15)
    assert log_primitive_eval(PolarPoint(0.5, math.pi), 0.0) == pytest.approx(1j / math.pi * math.log(1.5), rel=1e-15)
    with pytest.raises(PoleError):
        log_primitive_eval(PolarPoint(1, 2.0), 2.0)


def test_log_primitive_is_angular_primitive_of_proper_delta():
    rho, t1, h = 0.6, 0.3, 1e-5
    for theta in (-2.0, 0.1, 1.5):
        deriv = (log_primitive_eval(PolarPoint(rho, theta + h), t1)
                 - log_primitive_eval(PolarPoint(rho, theta - h), t1)) / (2 * h)
        want = delta_derivative_kernel_eval(DeltaKernelSpec(t1, 0), PolarPoint(rho, theta))
        assert deriv == pytest.approx(want, rel=1e-8)


def test_log_primitive_matches_series():
    # -(i/pi) sum q^k / k
    for z in (0.5, -0.5, 0.4 + 0.3j):
        series = -1j / math.pi * sum(z ** k / k for k in range(1, 200))
        assert log_primitive_eval(polar(z), 0.0) == pytest.approx(series, rel=1e-14)


@pytest.mark.parametrize("n", range(0, 4))
def test_real_part_vanishes_on_circle_away_from_pole(n):
    for dt in (0.3, math.pi / 2, math.pi):
        w = kernel_values(n, 1.0, dt, proper=n > 0)
        assert abs(w.real) < 1e-12 * (1 + abs(w))


def test_spec_validation():
    with pytest.raises(DomainError):
        DeltaKernelSpec(0.0, -1)
    with pytest.raises(TypeError):
        DeltaKernelSpec(0.0, 1.5)
    assert DeltaKernelSpec(-math.pi, 2).theta1 == math.pi
