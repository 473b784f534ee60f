"""Taylor/Fourier coefficient machinery for inner analytic functions.

An inner analytic function ``w(z) = sum_k c_k z^k`` is stored by its
(truncated) Taylor coefficients.  On a circle of radius ``rho`` the real part
is the Fourier series with ``c_0 = alpha_0 / 2`` and ``c_k = alpha_k - i beta_k``.
The angular derivative ``i z dw/dz`` multiplies ``c_k`` by ``i k``; the
angular primitive divides by it.  Both discard ``c_0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryError, DomainError

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map ``theta`` into ``(-pi, pi]``."""
    t = math.remainder(float(theta), TWO_PI)
    return math.pi if t == -math.pi else t


@dataclass(frozen=True)
class PolarPoint:
    """Point ``z = rho * exp(i theta)`` of the closed unit disk."""

    rho: float
    theta: float

    def __post_init__(self):
        rho = float(self.rho)
        if not (0.0 <= rho <= 1.0):
            raise DomainError(f"rho must lie in [0, 1], got {rho}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def z(self) -> complex:
        return self.rho * complex(math.cos(self.theta), math.sin(self.theta))


def _frozen(arr) -> np.ndarray:
    a = np.array(arr, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Truncated power series ``c_0 + c_1 z + ... + c_K z^K``."""

    coefficients: np.ndarray = field()

    def __post_init__(self):
        c = _frozen(self.coefficients)
        if c.ndim != 1 or c.size == 0:
            raise DomainError("a TaylorSeries needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("Taylor coefficients must be finite")
        object.__setattr__(self, "coefficients", c)

    @property
    def truncation_order(self) -> int:
        return self.coefficients.size - 1

    @property
    def is_proper(self) -> bool:
        return self.coefficients[0] == 0

    def __len__(self) -> int:
        return self.coefficients.size

    def __getitem__(self, k):
        return self.coefficients[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return np.array_equal(self.coefficients, other.coefficients)

    def __add__(self, other: TaylorSeries) -> TaylorSeries:
        n = max(len(self), len(other))
        a = np.zeros(n, complex)
        a[: len(self)] += self.coefficients
        a[: len(other)] += other.coefficients
        return TaylorSeries(a)

    def __mul__(self, scalar) -> TaylorSeries:
        return TaylorSeries(self.coefficients * scalar)

    __rmul__ = __mul__

    def proper(self) -> TaylorSeries:
        """Same series with ``c_0`` set to zero."""
        c = self.coefficients.copy()
        c[0] = 0
        return TaylorSeries(c)


@dataclass(frozen=True)
class FourierSpectrum:
    """Real Fourier series ``alpha0/2 + sum_k (alpha_k cos k t + beta_k sin k t)``."""

    alpha0: float
    alphas: tuple[float, ...] = ()
    betas: tuple[float, ...] = ()

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        betas = tuple(float(b) for b in self.betas)
        if len(alphas) != len(betas):
            raise DomainError(
                f"alphas and betas differ in length ({len(alphas)} vs {len(betas)})"
            )
        object.__setattr__(self, "alpha0", float(self.alpha0))
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    @property
    def order(self) -> int:
        return len(self.alphas)


def evaluate_series(s: TaylorSeries, p: PolarPoint) -> complex:
    """Partial sum ``sum_k c_k rho^k exp(i k theta)`` strictly inside the disk."""
    if p.rho >= 1.0:
        raise BoundaryError(
            "series evaluation needs rho < 1; use rho_extrapolate for boundary values"
        )
    z = p.z
    acc = 0j
    for c in s.coefficients[::-1]:
        acc = acc * z + c
    return complex(acc)


def evaluate_series_grid(s: TaylorSeries, rho: float, theta: np.ndarray) -> np.ndarray:
    """Vectorised :func:`evaluate_series` on a circle of radius ``rho < 1``."""
    if rho >= 1.0:
        raise BoundaryError("series evaluation needs rho < 1")
    z = rho * np.exp(1j * np.asarray(theta, dtype=float))
    return np.polyval(s.coefficients[::-1], z)


def _ik(n: int) -> np.ndarray:
    return 1j * np.arange(n, dtype=float)


def angular_derivative_series(s: TaylorSeries) -> TaylorSeries:
    """``c_k -> i k c_k``; the result is proper."""
    out = s.coefficients * _ik(len(s))
    out[0] = 0
    return TaylorSeries(out)


def angular_primitive_series(s: TaylorSeries) -> TaylorSeries:
    """``c_k -> c_k / (i k)`` for ``k >= 1``; ``c_0`` is dropped."""
    out = np.zeros(len(s), complex)
    k = np.arange(1, len(s), dtype=float)
    c = s.coefficients[1:]
    # (x + iy)/(ik) = y/k - i x/k, one rounding per component
    out.real[1:] = c.imag / k
    out.imag[1:] = -c.real / k
    return TaylorSeries(out)


def fourier_to_taylor(f: FourierSpectrum) -> TaylorSeries:
    c = np.empty(f.order + 1, complex)
    c[0] = f.alpha0 / 2
    c[1:] = np.asarray(f.alphas) - 1j * np.asarray(f.betas)
    return TaylorSeries(c)


def taylor_to_fourier(s: TaylorSeries) -> FourierSpectrum:
    """Inverse of :func:`fourier_to_taylor`.

    Raises
    ------
    DomainError
        If ``c_0`` has a non-zero imaginary part.  Such a series is not the
        extension of a real function under the ``Re w`` convention, and the
        imaginary constant would otherwise be silently lost.
    """
    c0 = s.coefficients[0]
    if c0.imag != 0:
        raise DomainError(f"c_0 = {c0} is not real; no real Fourier spectrum")
    rest = s.coefficients[1:]
    return FourierSpectrum(2 * c0.real, tuple(rest.real), tuple(-rest.imag))


def delta_taylor_coefficients(theta1: float, n: int, K: int) -> TaylorSeries:
    """Taylor coefficients of the delta kernel (``n = 0``) or of its n-th
    angular derivative.

    ``n = 0`` gives ``c_0 = 1/(2 pi)``, ``c_k = exp(-i k theta1)/pi``; for
    ``n >= 1`` ``c_0 = 0`` and ``c_k = (i k)^n exp(-i k theta1)/pi``.  The
    factor ``(i k)^n`` is applied one ``i k`` at a time, the same arithmetic
    as :func:`angular_derivative_series`, so the two routes agree bitwise.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError("n must be an integer")
    if n < 0:
        raise DomainError(
            "n must be >= 0; integrate with angular_primitive_series instead"
        )
    if K < 1:
        raise DomainError("K must be >= 1")
    theta1 = normalize_angle(theta1)
    k = np.arange(K + 1, dtype=float)
    c = (np.cos(k * theta1) - 1j * np.sin(k * theta1)) / math.pi
    c[0] = 1.0 / TWO_PI
    ik = _ik(K + 1)
    for _ in range(n):
        c = c * ik
        c[0] = 0
    return TaylorSeries(c)


def tail_bound(K: int, rho: float, growth: int = 0, scale: float = 1.0 / math.pi) -> float:
    """Geometric upper bound on ``sum_{k>K} scale * k^growth * rho^k``.

    Returns ``inf`` when the term ratio past ``K`` is not yet below one.
    """
    if not (0.0 <= rho < 1.0):
        raise DomainError("tail bound needs 0 <= rho < 1")
    if rho == 0.0:
        return 0.0
    first = scale * (K + 1) ** growth * rho ** (K + 1)
    ratio = ((K + 2) / (K + 1)) ** growth * rho
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


def choose_truncation(rho: float, eps: float, growth: int = 0,
                      scale: float = 1.0 / math.pi, k_max: int = 1_000_000) -> int:
    """Smallest ``K`` whose geometric tail bound is at most ``eps``.

    ``growth`` and ``scale`` describe the coefficient envelope
    ``|c_k| <= scale * k**growth``; the defaults fit the delta kernel, and
    ``growth = n`` fits its n-th angular derivative.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    lo, hi = 1, 1
    while tail_bound(hi, rho, growth, scale) > eps:
        hi *= 2
        if hi > k_max:
            raise DomainError(f"no truncation below {k_max} meets eps={eps}")
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_bound(mid, rho, growth, scale) <= eps:
            hi = mid
        else:
            lo = mid + 1
    return lo
