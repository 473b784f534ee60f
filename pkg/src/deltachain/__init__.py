"""Dirac delta derivatives on the unit circle as rational functions on the disk.

Kernels, their Taylor/Fourier coefficients, the rho -> 1- action on test
functions, exact piecewise polynomial primitives and a singularity probe.
"""

__version__ = "0.1.0"

from .classify import SingularityReport, hardness_probe
from .distributions import (ActionResult, Atom, QuadratureConfig, TestFunction, act,
                            circle_integral, product_with_continuous, rho_extrapolate)
from .errors import (BoundaryError, DomainError, ExtrapolationError, NonFiniteSample, PoleError,
                     SingularPointError, UndefinedProduct, UnsupportedProduct)
from .exact import GaussianRational, PiNumber, Poly, exact_angle
from .kernels import (DeltaKernelSpec, RationalKernel, delta_boundary_parts,
                      delta_derivative_kernel_eval, delta_kernel_eval, eulerian_numerator,
                      kernel_values, log_primitive_eval)
from .piecewise import (DistributionalObject, ExactAtom, PiecewisePolyCircle, delta_primitive,
                        distributional_derivative, eval_pp, fourier_coefficients, primitive_chain,
                        superpose)
from .series import (FourierSpectrum, PolarPoint, TaylorSeries, angular_derivative_series,
                     angular_primitive_series, choose_truncation, delta_taylor_coefficients,
                     evaluate_series, fourier_to_taylor, taylor_to_fourier)
