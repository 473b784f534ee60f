"""Action of the delta and its derivatives on test functions via rho -> 1-.

For a trigonometric-polynomial test function ``g`` with harmonic extension
``u_g`` the integral

    I(rho) = int_{-pi}^{pi} rho * u_g(rho, theta) * u_n(rho, theta - theta1) dtheta

is computed on a ladder of radii with the periodic trapezoid rule and then
extrapolated in ``1 - rho``.  Its limit is ``(-1)^n g^(n)(theta1)``.

Quadrature notes
----------------
The kernel ``u_n`` peaks like ``(1 - rho)^-(n+1)`` in a window of width
``1 - rho`` while ``I`` stays O(1), so a plain sum loses ``(1-rho)^-n`` to
cancellation.  The nodes are therefore centred on ``theta1``: ``u_n`` is even
(odd) in ``theta - theta1`` for even (odd) ``n``, only the matching half of
``u_g`` contributes, and that half is formed from ``sin(k x)`` or
``sin^2(k x / 2)`` which are small exactly where the kernel is large.  For
``n >= 1`` the constant part of ``u_g`` is dropped because the proper kernel
has zero mean.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ExtrapolationError, NonFiniteSample, UndefinedProduct, UnsupportedProduct
from .kernels import DeltaKernelSpec, kernel_values
from .series import FourierSpectrum, TaylorSeries, evaluate_series_grid, fourier_to_taylor, normalize_angle

TWO_PI = 2.0 * math.pi
TOLERANCE_ENV = "DELTACHAIN_TOL"
_DEFAULT_TOL = 1e-6
_MAX_NODES = 1 << 22


def default_tolerance() -> float:
    """Tolerance from ``$DELTACHAIN_TOL`` or 1e-6."""
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return _DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise DomainError(f"{TOLERANCE_ENV}={raw!r} is not a number") from exc
    if not tol > 0:
        raise DomainError(f"{TOLERANCE_ENV} must be positive")
    return tol


def default_ladder() -> tuple[float, ...]:
    return tuple(1.0 - 2.0 ** -j for j in range(2, 13))


@dataclass(frozen=True)
class QuadratureConfig:
    """Trapezoid node count, radial ladder and target tolerance.

    ``node_count`` is the fixed count used by :func:`circle_integral` and the
    minimum count for :func:`act`, which refines adaptively up to
    ``max_nodes``.
    """

    node_count: int = 256
    rho_ladder: tuple[float, ...] = field(default_factory=default_ladder)
    tolerance: float = field(default_factory=default_tolerance)
    max_nodes: int = _MAX_NODES

    def __post_init__(self):
        n = self.node_count
        if n < 16 or n & (n - 1):
            raise DomainError(f"node_count must be a power of two >= 16, got {n}")
        ladder = tuple(float(r) for r in self.rho_ladder)
        if any(not (0.0 < r < 1.0) for r in ladder):
            raise DomainError("ladder radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise DomainError("ladder radii must be strictly increasing")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        object.__setattr__(self, "rho_ladder", ladder)


@dataclass(frozen=True)
class TestFunction:
    """Trigonometric polynomial ``g`` given by its Fourier spectrum."""

    __test__ = False  # not a pytest class

    spectrum: FourierSpectrum

    @classmethod
    def from_coefficients(cls, alpha0=0.0, alphas=(), betas=()) -> TestFunction:
        return cls(FourierSpectrum(alpha0, tuple(alphas), tuple(betas)))

    @classmethod
    def cos(cls, k: int, amplitude: float = 1.0) -> TestFunction:
        if k == 0:
            return cls(FourierSpectrum(2.0 * amplitude))
        alphas = [0.0] * k
        alphas[-1] = amplitude
        return cls(FourierSpectrum(0.0, tuple(alphas), (0.0,) * k))

    @classmethod
    def sin(cls, k: int, amplitude: float = 1.0) -> TestFunction:
        if k < 1:
            raise DomainError("sin(k theta) needs k >= 1")
        betas = [0.0] * k
        betas[-1] = amplitude
        return cls(FourierSpectrum(0.0, (0.0,) * k, tuple(betas)))

    @property
    def series(self) -> TaylorSeries:
        return fourier_to_taylor(self.spectrum)

    def derivative(self, theta: float, n: int = 0) -> float:
        """Exact ``g^(n)(theta)`` from the spectrum."""
        s = self.spectrum
        total = s.alpha0 / 2 if n == 0 else 0.0
        for k, (a, b) in enumerate(zip(s.alphas, s.betas), start=1):
            # d^n/dt^n exp(i k t) = (i k)^n exp(i k t);  g_k = Re((a - i b) e^{ikt})
            c = complex(a, -b) * (1j * k) ** n
            total += (c * complex(math.cos(k * theta), math.sin(k * theta))).real
        return total

    def __call__(self, theta: float) -> float:
        return self.derivative(theta, 0)

    def harmonic(self, rho: float, theta) -> np.ndarray:
        """Harmonic extension ``u_g(rho, theta)`` (exact for a finite spectrum)."""
        return evaluate_series_grid(self.series, rho, theta).real

    def __add__(self, other: TestFunction) -> TestFunction:
        a, b = self.spectrum, other.spectrum
        n = max(a.order, b.order)
        pad = lambda t: tuple(t) + (0.0,) * (n - len(t))
        return TestFunction(FourierSpectrum(
            a.alpha0 + b.alpha0,
            tuple(x + y for x, y in zip(pad(a.alphas), pad(b.alphas))),
            tuple(x + y for x, y in zip(pad(a.betas), pad(b.betas))),
        ))

    def __mul__(self, scalar: float) -> TestFunction:
        s = self.spectrum
        return TestFunction(FourierSpectrum(
            scalar * s.alpha0, tuple(scalar * a for a in s.alphas),
            tuple(scalar * b for b in s.betas)))

    __rmul__ = __mul__


@dataclass(frozen=True)
class ActionResult:
    """Extrapolated value of a distribution applied to a test function."""

    value: float
    extrapolation_table: tuple[tuple[float, float], ...]
    error_estimate: float
    converged: bool
    node_counts: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
            "extrapolation_table": [
                {"rho": r, "integral": v, "nodes": n}
                for (r, v), n in zip(self.extrapolation_table, self.node_counts)
            ],
        }


# --- quadrature and extrapolation -----------------------------------------

def circle_integral(integrand: Callable[[np.ndarray], np.ndarray],
                    cfg: QuadratureConfig | None = None,
                    node_count: int | None = None) -> float:
    """Periodic trapezoid rule for ``int_{-pi}^{pi} integrand(theta) dtheta``.

    ``integrand`` receives the whole node array and must return an array of
    the same shape.  Samples are summed with ``math.fsum``.
    """
    n = node_count or (cfg or QuadratureConfig()).node_count
    theta = -math.pi + TWO_PI * np.arange(n) / n
    values = np.asarray(integrand(theta), dtype=float)
    if values.shape != theta.shape:
        raise DomainError(f"integrand returned shape {values.shape}, expected {theta.shape}")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        j = int(bad[0])
        raise NonFiniteSample(
            f"integrand is {values[j]} at node {j} (theta = {theta[j]!r})"
        )
    return math.fsum(values) * (TWO_PI / n)


def _neville_diagonal(h: Sequence[float], v: Sequence[float]) -> list[float]:
    """Values at 0 of the interpolants through the last 1, 2, ... points."""
    m = len(h)
    p = list(v)
    diag = [p[-1]]
    for level in range(1, m):
        # difference form: a constant table stays exactly constant
        p = [
            p[i + 1] + (p[i + 1] - p[i]) * h[i + level] / (h[i] - h[i + level])
            for i in range(m - level)
        ]
        diag.append(p[-1])
    return diag


def rho_extrapolate(table: Sequence[tuple[float, float]]) -> tuple[float, float]:
    """Polynomial extrapolation of ``value(rho)`` to ``rho = 1``.

    The interpolating polynomial in ``h = 1 - rho`` through all table points
    is evaluated at ``h = 0``.  The error estimate is the change between the
    extrapolants through the last ``m`` and ``m - 1`` points.
    """
    if len(table) < 3:
        raise ExtrapolationError(f"need at least 3 ladder points, got {len(table)}")
    rhos = [float(r) for r, _ in table]
    if any(b <= a for a, b in zip(rhos, rhos[1:])):
        raise ExtrapolationError("ladder radii must be strictly increasing")
    if any(r >= 1.0 for r in rhos):
        raise ExtrapolationError("ladder radii must be below 1")
    h = [1.0 - r for r in rhos]
    diag = _neville_diagonal(h, [float(v) for _, v in table])
    return diag[-1], abs(diag[-1] - diag[-2])


# --- the action ------------------------------------------------------------

@functools.lru_cache(maxsize=8)
def _half_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    # x_j = 2 pi j / n for j = 0..n/2 and trapezoid weights of an even function
    x = TWO_PI * np.arange(n // 2 + 1) / n
    w = np.full(x.shape, 2.0)
    w[0] = w[-1] = 1.0
    w *= TWO_PI / n
    x.flags.writeable = w.flags.writeable = False
    return x, w


@functools.lru_cache(maxsize=96)
def _weighted_kernel(n_order: int, rho: float, n: int) -> np.ndarray:
    x, w = _half_nodes(n)
    k = kernel_values(n_order, rho, x, proper=n_order > 0).real * w
    k.flags.writeable = False
    return k


@functools.lru_cache(maxsize=64)
def _harmonic_column(n: int, k: int, odd: bool) -> np.ndarray:
    x, _ = _half_nodes(n)
    col = np.sin(k * x) if odd else np.sin(0.5 * k * x) ** 2
    col.flags.writeable = False
    return col


def _rung_integral(order: int, rho: float, n: int, d: np.ndarray) -> tuple[float, float]:
    """Trapezoid value of ``int rho u_g u_n`` with ``n`` nodes, plus a
    roundoff scale.

    ``d[k] = c_k rho^k exp(i k theta1)`` are the Taylor coefficients of
    ``u_g`` re-centred on ``theta1``.
    """
    kw = _weighted_kernel(order, rho, n)
    odd = order % 2 == 1
    if order == 0:
        x, _ = _half_nodes(n)
        part = np.full(x.shape, d[0].real)
        for k in np.flatnonzero(d[1:].real) + 1:
            part = part + d[k].real * np.cos(k * x)
    else:
        part = np.zeros(kw.shape)
        coeffs = -d.imag if odd else -2.0 * d.real
        for k in np.flatnonzero(coeffs[1:]) + 1:
            part = part + coeffs[k] * _harmonic_column(n, int(k), odd)
    terms = kw * part
    if not np.all(np.isfinite(terms)):
        j = int(np.flatnonzero(~np.isfinite(terms))[0])
        raise NonFiniteSample(f"non-finite integrand at rho={rho}, node {j}")
    value = rho * float(np.sum(terms))
    noise = rho * float(np.sqrt(np.sum(terms * terms))) * np.finfo(float).eps
    return value, noise


def _pow2_at_least(x: float) -> int:
    return 1 << max(4, math.ceil(math.log2(max(x, 16.0))))


def _initial_nodes(order: int, rho: float, kmax: int, floor: int, tol: float) -> int:
    # aliasing of the trapezoid rule decays like rho^(N - kmax) * N^order
    h = 1.0 - rho
    n = max(floor, 16)
    target = math.log(1e-3 * tol)
    while n < _MAX_NODES:
        if (n - kmax) * math.log(rho) + order * math.log(n) < target:
            break
        n *= 2
    return _pow2_at_least(max(n, 4.0 / h))


def act(spec: DeltaKernelSpec, g: TestFunction, cfg: QuadratureConfig | None = None,
        coeff: float = 1.0) -> ActionResult:
    """Apply ``coeff * delta^(n)(theta - theta1)`` to ``g`` through rho -> 1-.

    The node count at the largest radius is doubled until two successive
    values agree to ``0.1 * tolerance`` (or to the roundoff scale of the sum,
    whichever is larger); smaller radii use proportionally fewer nodes.
    """
    cfg = cfg or QuadratureConfig()
    if len(cfg.rho_ladder) < 3:
        raise ExtrapolationError("need at least 3 ladder points")
    order = spec.order_n
    c = g.series.coefficients
    kmax = len(c) - 1
    k = np.arange(len(c))
    phase = np.exp(1j * k * spec.theta1)

    def centred(rho):
        return c * rho ** k * phase

    rho_top = cfg.rho_ladder[-1]
    d_top = centred(rho_top)
    n_top = min(_initial_nodes(order, rho_top, kmax, cfg.node_count, cfg.tolerance),
                cfg.max_nodes // 2)
    prev, _ = _rung_integral(order, rho_top, n_top, d_top)
    quad_ok = False
    quad_err = math.inf
    while 2 * n_top <= cfg.max_nodes:
        n_top *= 2
        cur, noise = _rung_integral(order, rho_top, n_top, d_top)
        quad_err = abs(cur - prev)
        prev = cur
        if quad_err <= max(0.1 * cfg.tolerance, 8.0 * noise):
            quad_ok = True
            break
    h_top = 1.0 - rho_top

    table = []
    counts = []
    for rho in cfg.rho_ladder[:-1]:
        n = min(_pow2_at_least(n_top * (1.0 - rho) / h_top), n_top)
        n = max(n, cfg.node_count)
        value, _ = _rung_integral(order, rho, n, centred(rho))
        table.append((rho, coeff * value))
        counts.append(n)
    table.append((rho_top, coeff * prev))
    counts.append(n_top)

    limit, extrap_err = rho_extrapolate(table)
    err = extrap_err + abs(coeff) * quad_err
    converged = quad_ok and math.isfinite(err) and err <= cfg.tolerance
    return ActionResult(float(limit), tuple(table), float(err), bool(converged), tuple(counts))


# --- products ---------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """``coeff * delta^(order)(theta - theta1)``."""

    theta1: float
    order: int = 0
    coeff: float = 1.0

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("atom order must be >= 0")
        object.__setattr__(self, "theta1", normalize_angle(self.theta1))

    def kernel_spec(self) -> DeltaKernelSpec:
        return DeltaKernelSpec(self.theta1, self.order)

    def inner_function(self, z: complex) -> complex:
        """``coeff * w`` where ``w`` is the kernel representing this atom
        (``w_delta`` itself for order 0, the proper n-th derivative kernel
        otherwise)."""
        rho, t = abs(z), math.atan2(z.imag, z.real)
        w = complex(kernel_values(self.order, rho, t - self.theta1, proper=self.order > 0))
        return self.coeff * w


def product_with_continuous(g: TestFunction | Atom, atom: Atom) -> Atom:
    """``g(theta) delta(theta - theta1) = g(theta1) delta(theta - theta1)``.

    Raises
    ------
    UndefinedProduct
        If ``g`` is itself a singular atom at the same point.
    UnsupportedProduct
        If either factor is a derivative of the delta (``order >= 1``) or
        ``g`` is a singular atom elsewhere.
    """
    if isinstance(g, Atom):
        if normalize_angle(g.theta1 - atom.theta1) == 0.0:
            raise UndefinedProduct(
                f"product of two singular atoms at theta = {atom.theta1!r} is not defined"
            )
        raise UnsupportedProduct("products of atoms at distinct points are not implemented")
    if atom.order != 0:
        raise UnsupportedProduct(
            "products with derivatives of the delta need Leibniz terms; only order 0 is supported"
        )
    return Atom(atom.theta1, 0, atom.coeff * g(atom.theta1))
