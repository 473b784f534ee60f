"""Closed-form delta kernels on the unit disk.

The delta kernel is the rational function

    w_delta(z, z1) = 1/(2 pi) - (1/pi) z / (z - z1),      z1 = exp(i theta1),

and its n-th angular derivative (the kernel of the n-th derivative of the
delta) is

    (i^n / pi) * q * A_n(q) / (1 - q)^(n + 1),             q = z / z1,

with A_n the Eulerian polynomial.  Every kernel depends on ``z`` only through
``q``, i.e. only on ``rho`` and ``theta - theta1``.

Numerical evaluation forms ``1 - q`` as ``(1 - rho) + 2 rho sin^2(dt/2) -
i rho sin(dt)`` so that it keeps full relative accuracy next to the pole.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .exact import GaussianRational, Poly
from .series import PolarPoint, normalize_angle

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DeltaKernelSpec:
    """Kernel of the ``order_n``-th derivative of the delta at ``theta1``."""

    theta1: float
    order_n: int = 0

    def __post_init__(self):
        if isinstance(self.order_n, bool) or not isinstance(self.order_n, (int, np.integer)):
            raise TypeError("order_n must be an integer")
        if self.order_n < 0:
            raise DomainError("order_n must be >= 0")
        object.__setattr__(self, "theta1", normalize_angle(self.theta1))
        object.__setattr__(self, "order_n", int(self.order_n))


def _check_pole(rho, dtheta):
    if rho == 1.0 and normalize_angle(dtheta) == 0.0:
        raise PoleError("the kernel has its pole at z = z1")


def one_minus_q(rho, dtheta):
    """``1 - rho exp(i dtheta)`` with relative accuracy near ``q = 1``."""
    rho = np.asarray(rho, dtype=float)
    dtheta = np.asarray(dtheta, dtype=float)
    s = np.sin(0.5 * dtheta)
    return (1.0 - rho) + 2.0 * rho * s * s - 1j * rho * np.sin(dtheta)


def poisson_denominator(rho, dtheta):
    """``D = rho^2 + 1 - 2 rho cos(dtheta)``, written as ``|1 - q|^2``."""
    rho = np.asarray(rho, dtype=float)
    s = np.sin(0.5 * np.asarray(dtheta, dtype=float))
    return (1.0 - rho) ** 2 + 4.0 * rho * s * s


# --- exact rational kernels ----------------------------------------------

def _eulerian(n: int) -> Poly:
    # A_0 = 1;  A_{n+1}(q) = (1 + n q) A_n(q) + q (1 - q) A_n'(q)
    a = Poly([1])
    for m in range(n):
        a = a * Poly([1, m]) + Poly([0, 1, -1]) * a.derivative()
    return a


def eulerian_numerator(n: int) -> Poly:
    """Integer polynomial ``A_n`` with

        (i q d/dq)^n  (1/pi) sum_{k>=1} q^k  =  (i^n / pi) q A_n(q) / (1 - q)^(n+1).

    >>> eulerian_numerator(3).coeffs
    (1, 4, 1)
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("n must be an integer")
    if n < 1:
        raise DomainError("eulerian_numerator needs n >= 1")
    return _eulerian(n)


@dataclass(frozen=True)
class RationalKernel:
    """Exact ``prefactor * pi^pi_power * q * numerator(q) / (1 - q)^pole_order``.

    ``numerator`` has Gaussian-rational coefficients and ``prefactor`` is a
    Gaussian rational; the power of pi is kept symbolic.
    """

    numerator: Poly
    pole_order: int
    prefactor: GaussianRational
    pi_power: int = -1

    def __post_init__(self):
        num = self.numerator.map(GaussianRational.coerce)
        if num.is_zero():
            raise DomainError("numerator must be non-zero")
        if self.pole_order < 1:
            raise DomainError("pole_order must be >= 1")
        if num(GaussianRational(1)) == 0:
            raise DomainError("numerator vanishes at q = 1; pole order is not exact")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "prefactor", GaussianRational.coerce(self.prefactor))

    @classmethod
    def for_order(cls, n: int) -> RationalKernel:
        """Proper kernel of the n-th derivative of the delta (``n >= 0``)."""
        if n < 0:
            raise DomainError("for_order needs n >= 0")
        return cls(_eulerian(n), n + 1, GaussianRational.i_power(n), -1)

    def angular_derivative(self) -> RationalKernel:
        """Exact ``i q d/dq`` of the kernel.

        With ``F = q N / (1-q)^m``:
        ``q dF/dq = q [N (1 + (m-1) q) + q (1-q) N'] / (1-q)^(m+1)``.
        """
        m = self.pole_order
        num = self.numerator
        new = num * Poly([1, m - 1]) + Poly([0, 1, -1]) * num.derivative()
        return RationalKernel(new, m + 1, self.prefactor * GaussianRational(0, 1), self.pi_power)

    @property
    def prefactor_complex(self) -> complex:
        return complex(self.prefactor) * math.pi ** self.pi_power

    def evaluate(self, rho, dtheta):
        """Vectorised value at ``q = rho exp(i dtheta)``; no pole check."""
        rho = np.asarray(rho, dtype=float)
        dtheta = np.asarray(dtheta, dtype=float)
        q = rho * np.exp(1j * dtheta)
        coeffs = [complex(c) for c in self.numerator.coeffs]
        num = np.polyval(coeffs[::-1], q)
        return self.prefactor_complex * q * num / one_minus_q(rho, dtheta) ** self.pole_order

    def __call__(self, z: complex, theta1: float) -> complex:
        rho = abs(z)
        dtheta = cmath.phase(z) - theta1
        _check_pole(rho, dtheta)
        return complex(self.evaluate(rho, dtheta))


# --- numerical evaluation --------------------------------------------------

def kernel_values(n: int, rho, dtheta, proper: bool = True):
    """Vectorised kernel of order ``n`` as a function of ``(rho, dtheta)``.

    ``n = -1`` is the logarithmic angular primitive; ``n = 0`` is the proper
    delta kernel unless ``proper=False``, in which case the constant
    ``1/(2 pi)`` is included.
    """
    if n == -1:
        return _log_primitive(rho, dtheta)
    if n < -1:
        raise DomainError("closed forms exist only for n >= -1")
    w = RationalKernel.for_order(n).evaluate(rho, dtheta)
    if n == 0 and not proper:
        w = w + 1.0 / TWO_PI
    return w


def _log_primitive(rho, dtheta):
    omq = one_minus_q(rho, dtheta)
    return (1j / math.pi) * (np.log(np.abs(omq)) + 1j * np.angle(omq))


def delta_kernel_eval(p: PolarPoint, theta1: float) -> complex:
    """``w_delta(z, z1) = 1/(2 pi) - (1/pi) z/(z - z1)``."""
    dtheta = p.theta - theta1
    _check_pole(p.rho, dtheta)
    return complex(kernel_values(0, p.rho, dtheta, proper=False))


def delta_boundary_parts(rho: float, theta: float, theta1: float) -> tuple[float, float]:
    """Real and imaginary parts ``(u, v)`` of the delta kernel.

    ``u = 1/(2 pi) - rho (rho - cos dt) / (pi D)`` and
    ``v = rho sin dt / (pi D)`` with ``D = rho^2 + 1 - 2 rho cos dt``.
    """
    dtheta = theta - theta1
    _check_pole(rho, dtheta)
    d = poisson_denominator(rho, dtheta)
    # rho - cos(dt) = (rho - 1) + 2 sin^2(dt/2)
    s = math.sin(0.5 * dtheta)
    u = 1.0 / TWO_PI - rho * ((rho - 1.0) + 2.0 * s * s) / (math.pi * d)
    v = rho * math.sin(dtheta) / (math.pi * d)
    return float(u), float(v)


def delta_derivative_kernel_eval(spec: DeltaKernelSpec, p: PolarPoint) -> complex:
    """Proper kernel ``w_delta^{n.}(z, z1)`` of the ``spec.order_n``-th derivative.

    For ``n = 0`` this is ``w_delta - 1/(2 pi) = -(1/pi) z/(z - z1)``.
    """
    dtheta = p.theta - spec.theta1
    _check_pole(p.rho, dtheta)
    return complex(kernel_values(spec.order_n, p.rho, dtheta))


def log_primitive_eval(p: PolarPoint, theta1: float) -> complex:
    """First angular primitive ``(i/pi) Log((z1 - z)/z1)`` of the proper delta kernel.

    Principal branch; ``Re((z1 - z)/z1) = 1 - rho cos(dt) > 0`` inside the
    disk, so the cut is never crossed there.
    """
    dtheta = p.theta - theta1
    _check_pole(p.rho, dtheta)
    if p.rho == 0.0:
        return 0j
    return complex(_log_primitive(p.rho, dtheta))

