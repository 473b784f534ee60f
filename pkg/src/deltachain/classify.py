"""Soft / borderline-hard / hard classification of a boundary point from the
radial growth of ``|w(rho e^{i theta1})|`` as ``rho -> 1-``.

Two growth models are fitted over the last half of the radial ladder, in the
variable ``L = -ln(1 - rho)``:

* power law, ``ln|w| = p L + c``: a pole of order ``m`` gives ``p -> m``;
* logarithm, ``|w| = b L + a``: the borderline-hard case.

A pure logarithm has an apparent power-law exponent of ``1/L`` (about 0.13
on the default ladder), so the two models are told apart by which one fits
better rather than by the size of ``p`` alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NonFiniteSample
from .series import PolarPoint, normalize_angle

SNAP = 0.1
MIN_LOG_GROWTH = 0.05


def default_probe_ladder() -> tuple[float, ...]:
    return tuple(1.0 - 2.0 ** -j for j in range(4, 15))


@dataclass(frozen=True)
class SingularityReport:
    theta1: float
    kind: str  # "soft", "borderline_hard" or "hard"
    degree: int | None
    fitted_exponent: float
    log_flag: bool
    samples: tuple[tuple[float, float], ...]
    power_residual: float = 0.0
    log_residual: float = 0.0

    @property
    def verdict(self) -> str:
        if self.kind != "hard":
            return self.kind
        return f"hard({self.degree})" if self.degree is not None else "hard(noninteger)"

    def to_dict(self) -> dict:
        return {
            "theta1": self.theta1,
            "verdict": self.verdict,
            "degree": self.degree,
            "fitted_exponent": self.fitted_exponent,
            "log_flag": self.log_flag,
            "power_residual": self.power_residual,
            "log_residual": self.log_residual,
            "samples": [{"rho": r, "abs_w": a} for r, a in self.samples],
        }


def _linear_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, np.ndarray]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept), y - (slope * x + intercept)


def hardness_probe(evaluator: Callable[[PolarPoint], complex], theta1: float,
                   ladder: Sequence[float] | None = None) -> SingularityReport:
    """Probe ``evaluator`` along the radius through ``e^{i theta1}``.

    Verdicts, in the order they are tried:

    1. ``hard(m)`` if the power-law exponent is within 0.1 of an integer ``m >= 1``;
    2. ``borderline_hard`` if ``|w|`` grows and fits ``a + b L`` better than
       any power law;
    3. ``soft`` if the exponent is at most 0.1;
    4. ``hard(noninteger)`` otherwise.
    """
    ladder = tuple(float(r) for r in (ladder or default_probe_ladder()))
    if len(ladder) < 4:
        raise DomainError("the probe needs at least 4 radii")
    if any(not 0.0 < r < 1.0 for r in ladder) or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("probe radii must be increasing and inside (0, 1)")
    theta1 = normalize_angle(theta1)
    mags = []
    for r in ladder:
        w = complex(evaluator(PolarPoint(r, theta1)))
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise NonFiniteSample(f"evaluator returned {w} at rho = {r}")
        mags.append(abs(w))
    samples = tuple(zip(ladder, mags))

    tail = slice(len(ladder) // 2, None)
    L = -np.log1p(-np.asarray(ladder))[tail]
    a = np.asarray(mags)[tail]
    if np.all(a == 0.0):
        return SingularityReport(theta1, "soft", None, 0.0, False, samples)
    if np.any(a == 0.0):
        raise DomainError("evaluator vanishes on part of the ladder; no growth exponent")

    p, _, res_pow = _linear_fit(L, np.log(a))
    b, _, res_log = _linear_fit(L, a)
    scale = float(np.mean(a))
    power_residual = float(np.sqrt(np.mean(res_pow ** 2)))
    log_residual = float(np.sqrt(np.mean(res_log ** 2))) / scale
    growth = b * float(L[-1] - L[0]) / scale
    is_log = growth > MIN_LOG_GROWTH and log_residual < power_residual and p < 0.5

    m = round(p)
    exponent = max(p, 0.0)
    common = dict(power_residual=power_residual, log_residual=log_residual)
    if m >= 1 and abs(p - m) <= SNAP:
        return SingularityReport(theta1, "hard", int(m), exponent, False, samples, **common)
    if is_log:
        return SingularityReport(theta1, "borderline_hard", 0, exponent, True, samples, **common)
    if p <= SNAP:
        return SingularityReport(theta1, "soft", None, exponent, False, samples, **common)
    return SingularityReport(theta1, "hard", None, exponent, False, samples, **common)
