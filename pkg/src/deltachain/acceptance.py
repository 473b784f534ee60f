"""Self-verification suite: twelve numerical and exact checks of the kernel
family, the rho -> 1- action, the piecewise chain and the classifier.

Each check returns a :class:`CriterionResult`; :func:`run_all` runs them in
order.  Used by ``deltachain verify`` and by the test suite.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .classify import hardness_probe
from .distributions import (Atom, QuadratureConfig, TestFunction, act, circle_integral,
                            product_with_continuous, rho_extrapolate)
from .errors import UndefinedProduct
from .exact import GaussianRational, PiNumber, Poly
from .kernels import (DeltaKernelSpec, RationalKernel, delta_derivative_kernel_eval,
                      kernel_values, log_primitive_eval, poisson_denominator)
from .piecewise import (DistributionalObject, PiecewisePolyCircle, delta_primitive,
                        distributional_derivative, fourier_coefficients, primitive_chain, superpose)
from .series import (angular_primitive_series, delta_taylor_coefficients, taylor_to_fourier)

RHO_GRID = (0.25, 0.5, 0.75, 0.9)
SIFT_THETAS = (0.0, math.pi / 4, -math.pi / 4, math.pi / 2, -math.pi / 2, 3 * math.pi / 4)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    budget: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" / {self.budget:g} s" if self.budget else ""
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.elapsed:.2f} s{budget})"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail, "elapsed": self.elapsed, "budget": self.budget}


def _sift_family() -> list[tuple[str, TestFunction]]:
    fam = [("cos0", TestFunction.cos(0))]
    for k in range(1, 9):
        fam += [(f"cos{k}", TestFunction.cos(k)), (f"sin{k}", TestFunction.sin(k))]
    return fam


# --- the checks; each returns (passed, detail) -------------------------------

def residue_identity():
    worst = 0.0
    for rho in RHO_GRID:
        a = (1 + rho * rho) / (2 * rho)
        got = circle_integral(lambda t: 1.0 / (a - np.cos(t)), node_count=256)
        want = 4 * math.pi * rho / (1 - rho * rho)
        worst = max(worst, abs(got - want) / want)
    return worst <= 1e-10, f"max rel err {worst:.2e} (tol 1e-10, 256 nodes)"


def mass_identity():
    worst = 0.0
    theta1 = 0.3
    for rho in RHO_GRID:
        got = circle_integral(
            lambda t: rho * kernel_values(0, rho, t - theta1, proper=False).real, node_count=256)
        worst = max(worst, abs(got - rho))
    return worst <= 1e-10, f"max abs err {worst:.2e} (tol 1e-10)"


def _action_sweep(orders, tol):
    worst, failed = 0.0, 0
    cfg = QuadratureConfig()
    for n in orders:
        for _, g in _sift_family():
            for t1 in SIFT_THETAS:
                r = act(DeltaKernelSpec(t1, n), g, cfg)
                err = abs(r.value - (-1) ** n * g.derivative(t1, n))
                worst = max(worst, err)
                failed += (err > tol) or not r.converged
    return failed == 0, worst, failed


def sifting():
    ok, worst, failed = _action_sweep([0], 1e-6)
    return ok, f"max |act - g(theta1)| {worst:.2e} over 102 cases, {failed} failures (tol 1e-6)"


def derivative_actions():
    ok, worst, failed = _action_sweep(range(1, 5), 1e-5)
    return ok, f"max |act - (-1)^n g^(n)| {worst:.2e} over 408 cases, {failed} failures (tol 1e-5)"


def closed_forms():
    # published shape: -1/(pi i^n) * z N(z, z1) z1 / (z - z1)^(n+1), rewritten in q = z/z1
    expected = {1: [1], 2: [1, 1], 3: [1, 4, 1]}
    k = RationalKernel.for_order(0)
    bad = []
    for n in (1, 2, 3):
        k = k.angular_derivative()
        want_num = Poly([GaussianRational(c) for c in expected[n]])
        # (z - z1)^(n+1) = (-1)^(n+1) z1^(n+1) (1 - q)^(n+1)
        want_pref = GaussianRational(-1) / GaussianRational.i_power(n) * (-1) ** (n + 1)
        if not (k.numerator == want_num and k.pole_order == n + 1
                and k.prefactor == want_pref and k.pi_power == -1
                and k == RationalKernel.for_order(n)):
            bad.append(n)
    return not bad, "numerators 1, 1+q, 1+4q+q^2 match exactly" if not bad else f"mismatch at n={bad}"


def coefficient_identities():
    K = 64
    k = np.arange(K + 1)
    worst = 0.0
    for t1 in SIFT_THETAS + (0.7, -2.9):
        spec = taylor_to_fourier(delta_taylor_coefficients(t1, 0, K))
        want_a = np.cos(k[1:] * t1) / math.pi
        want_b = np.sin(k[1:] * t1) / math.pi
        errs = [abs(spec.alpha0 - 1 / math.pi) * math.pi]
        errs += list(np.abs(np.asarray(spec.alphas) - want_a) / np.maximum(np.abs(want_a), 1e-300) * (want_a != 0))
        errs += list(np.abs(np.asarray(spec.betas) - want_b) / np.maximum(np.abs(want_b), 1e-300) * (want_b != 0))
        for n in range(1, 5):
            c = delta_taylor_coefficients(t1, n, K).coefficients
            want = (1j ** n) * k.astype(float) ** n * np.exp(-1j * k * t1) / math.pi
            want[0] = 0
            scale = np.where(np.abs(want) > 0, np.abs(want), 1.0)
            errs += list(np.abs(c - want) / scale)
        worst = max(worst, max(errs))
    return worst <= 1e-15, f"max rel err per term {worst:.2e} (tol 1e-15, K=64, n<=4)"


def piecewise_chain():
    pi = PiNumber.pi()
    half = Fraction(1, 2)
    want = {
        1: [half, -1 / (2 * pi)],
        2: [-pi / 6, half, -1 / (4 * pi)],
        3: [0, -pi / 6, Fraction(1, 4), -1 / (12 * pi)],
    }
    problems = []
    for s, coeffs in want.items():
        # the section (0, 2 pi) carries the Delta theta > 0 branch
        if delta_primitive(s) != PiecewisePolyCircle([0], [coeffs]):
            problems.append(f"primitive {s}")
    d = superpose([DistributionalObject.delta(0), DistributionalObject.delta(math.pi)], [1, -1])
    sq = primitive_chain(d, 1)
    if not (sq.smooth.polys == (Poly([half]), Poly([-half])) and not sq.atoms):
        problems.append("square wave")
    if distributional_derivative(sq.smooth, 1) != d:
        problems.append("square wave derivative")
    unit = DistributionalObject.delta(0)
    proper = unit - DistributionalObject((), PiecewisePolyCircle.constant(1 / (2 * pi)))
    for s in (1, 2, 3):
        if distributional_derivative(delta_primitive(s), 1) != (
                proper if s == 1 else DistributionalObject((), delta_primitive(s - 1))):
            problems.append(f"derivative of step {s}")
        if distributional_derivative(delta_primitive(s), s) != proper:
            problems.append(f"{s}-fold round trip")
    return not problems, "all exact equalities hold" if not problems else "failed: " + ", ".join(problems)


def series_cross_check():
    worst = 0.0
    for t1 in (0.0, 0.7, -2.0):
        series = delta_taylor_coefficients(t1, 0, 16)
        for s in (1, 2, 3):
            series = angular_primitive_series(series)
            exact = fourier_coefficients(delta_primitive(s, t1), 16)
            worst = max(worst, float(np.max(np.abs(series.coefficients - np.asarray(exact)))))
    return worst <= 1e-10, f"max harmonic mismatch {worst:.2e} (tol 1e-10, 16 harmonics, s<=3)"


def boundary_vanishing():
    ladder = QuadratureConfig().rho_ladder
    worst = 0.0
    for n in range(4):
        for dt in (math.pi / 8, math.pi / 2, math.pi):
            table = [(r, float(kernel_values(n, r, dt, proper=n > 0).real)) for r in ladder]
            limit, _ = rho_extrapolate(table)
            worst = max(worst, abs(limit))
    return worst <= 1e-8, f"max |Re w| at rho -> 1 {worst:.2e} (tol 1e-8, n<=3)"


def classification():
    verdicts = []
    for n in range(5):
        spec = DeltaKernelSpec(0.4, n)
        r = hardness_probe(lambda p, spec=spec: delta_derivative_kernel_eval(spec, p), 0.4)
        verdicts.append(r.verdict == f"hard({n + 1})")
    log = hardness_probe(lambda p: log_primitive_eval(p, 0.4), 0.4).verdict
    soft = hardness_probe(lambda p: p.z, 0.4).verdict
    ok = all(verdicts) and log == "borderline_hard" and soft == "soft"
    return ok, f"kernels n<=4 hard(n+1): {all(verdicts)}; log primitive {log}; w=z {soft}"


def poisson_identity():
    rho = np.linspace(0.0, 0.99, 100)[:, None]
    dt = np.linspace(-math.pi, math.pi, 100)[None, :]
    u = kernel_values(0, rho, dt, proper=False).real
    resid = 2 * math.pi * poisson_denominator(rho, dt) * u - (1 - rho * rho)
    worst = float(np.max(np.abs(resid)))
    return worst <= 1e-13, f"max |2 pi D u - (1 - rho^2)| {worst:.2e} on 100x100 grid (tol 1e-13)"


def undefined_product():
    problems = []
    try:
        product_with_continuous(Atom(0.3), Atom(0.3))
        problems.append("coincident atoms did not raise")
    except UndefinedProduct:
        pass
    g = TestFunction.from_coefficients(0.5, [1.0, -0.25], [0.75, 2.0])
    for t1, coeff in ((0.0, 1.0), (0.9, -2.5), (math.pi, 3.0)):
        got = product_with_continuous(g, Atom(t1, 0, coeff))
        if got.coeff != coeff * g(t1) or got.theta1 != Atom(t1).theta1 or got.order != 0:
            problems.append(f"scaling at theta1={t1}")
    if product_with_continuous(TestFunction.cos(1), Atom(0.0)).coeff != 1.0:
        problems.append("cos * delta(0)")
    if product_with_continuous(TestFunction.sin(1), Atom(0.0)).coeff != 0.0:
        problems.append("sin * delta(0)")
    return not problems, "raises on coincident atoms; scales by g(theta1) exactly" if not problems else ", ".join(problems)


CRITERIA: tuple[tuple[int, str, Callable[[], tuple[bool, str]], float | None], ...] = (
    (1, "residue identity", residue_identity, 1.0),
    (2, "mass identity", mass_identity, 1.0),
    (3, "sifting", sifting, 10.0),
    (4, "derivative actions", derivative_actions, 30.0),
    (5, "closed-form kernels", closed_forms, None),
    (6, "coefficient identities", coefficient_identities, None),
    (7, "piecewise chain", piecewise_chain, None),
    (8, "series/exact cross-check", series_cross_check, None),
    (9, "boundary vanishing", boundary_vanishing, None),
    (10, "classification", classification, 5.0),
    (11, "Poisson identity", poisson_identity, None),
    (12, "undefined product", undefined_product, None),
)


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn, budget in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # report, do not abort the suite
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - t0
            if budget is not None and elapsed > budget:
                ok, detail = False, detail + "; over time budget"
            return CriterionResult(num, name, bool(ok), detail, elapsed, budget)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(num) for num, *_ in CRITERIA]
