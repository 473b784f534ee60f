"""Exact piecewise polynomial functions on the circle and finite superpositions
of delta atoms.

Angles and coefficients are :class:`~deltachain.exact.PiNumber` values, so
every chain operation here is exact.  A function with singular points
``t_0 < t_1 < ... < t_{N-1}`` in ``(-pi, pi]`` has ``N`` sections; section
``i`` is ``(t_i, t_{i+1})`` and the last one wraps round to ``t_0 + 2 pi``.
Each section's polynomial is written in the global angle, so on the wrapped
part of the last section it is evaluated at ``theta + 2 pi``.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, SingularPointError
from .exact import PiNumber, Poly, exact_angle

PI = PiNumber.pi()
TWO_PI = PiNumber.pi(1, 2)
_ZERO = PiNumber()


def _poly(coeffs) -> Poly:
    if isinstance(coeffs, Poly):
        coeffs = coeffs.coeffs
    return Poly(PiNumber.coerce(c) for c in coeffs)


def _integral(p: Poly, a: PiNumber, b: PiNumber) -> PiNumber:
    prim = p.antiderivative()
    return PiNumber.coerce(prim(b)) - prim(a)


class PiecewisePolyCircle:
    """Piecewise polynomial real function on the unit circle.

    Parameters
    ----------
    singular_points
        Section boundaries; any real or exact angles, normalised into
        ``(-pi, pi]`` and sorted.  May be empty, in which case the function is
        a single constant.
    polys
        One polynomial per section, in the same order as the sorted points.
        Coefficients (lowest degree first) may be ints, Fractions or
        PiNumbers.
    """

    __slots__ = ("points", "polys")

    def __init__(self, singular_points: Iterable = (), polys: Iterable = ()):
        pts = [exact_angle(t) for t in singular_points]
        polys = [_poly(p) for p in polys]
        if len(set(pts)) != len(pts):
            raise DomainError("singular points must be distinct modulo 2 pi")
        if pts:
            if len(polys) != len(pts):
                raise DomainError(f"{len(pts)} singular points need {len(pts)} sections, got {len(polys)}")
            order = sorted(range(len(pts)), key=lambda i: float(pts[i]))
            pts = [pts[i] for i in order]
            polys = [polys[i] for i in order]
        else:
            if len(polys) > 1:
                raise DomainError("without singular points there is a single section")
            polys = polys or [Poly()]
            if polys[0].degree > 0:
                raise DomainError("a function with no singular points must be constant")
        self.points: tuple[PiNumber, ...] = tuple(pts)
        self.polys: tuple[Poly, ...] = tuple(polys)

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, value=0) -> PiecewisePolyCircle:
        return cls((), [[value]])

    # -- structure -----------------------------------------------------------
    @property
    def order(self) -> int:
        """Largest section degree (0 for the zero function)."""
        return max(0, max(p.degree for p in self.polys))

    def sections(self) -> list[tuple[PiNumber, PiNumber, Poly]]:
        """``(start, end, poly)`` per section with ``end`` possibly past pi."""
        if not self.points:
            return [(-PI, PI, self.polys[0])]
        ends = list(self.points[1:]) + [self.points[0] + TWO_PI]
        return list(zip(self.points, ends, self.polys))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.polys)

    def _locate(self, theta: PiNumber) -> tuple[int, PiNumber] | None:
        """Section index and the coordinate to evaluate it at; None on a point."""
        if not self.points:
            return 0, theta
        if theta in self.points:
            return None
        i = bisect.bisect_left([float(p) for p in self.points], float(theta))
        # guard the float bisection with exact comparisons
        while i > 0 and self.points[i - 1] > theta:
            i -= 1
        while i < len(self.points) and self.points[i] < theta:
            i += 1
        if i == 0:
            return len(self.points) - 1, theta + TWO_PI
        return i - 1, theta

    def limit(self, index: int, side: str) -> PiNumber:
        """One-sided value at singular point ``index`` (``'+'`` right, ``'-'`` left)."""
        t = self.points[index]
        if side == "+":
            return PiNumber.coerce(self.polys[index](t))
        if side == "-":
            if index == 0:
                return PiNumber.coerce(self.polys[-1](t + TWO_PI))
            return PiNumber.coerce(self.polys[index - 1](t))
        raise DomainError(f"side must be '+' or '-', got {side!r}")

    def jump(self, index: int) -> PiNumber:
        """Right limit minus left limit at singular point ``index``."""
        return self.limit(index, "+") - self.limit(index, "-")

    def refine(self, points: Iterable) -> PiecewisePolyCircle:
        """Same function with extra section boundaries added."""
        new = set(self.points) | {exact_angle(t) for t in points}
        if not new:
            return self
        new = sorted(new, key=float)
        if not self.points:
            return PiecewisePolyCircle(new, [self.polys[0]] * len(new))
        polys = []
        for t in new:
            if t in self.points:
                polys.append(self.polys[self.points.index(t)])
            elif t < self.points[0]:
                # wrapped part of the old last section
                polys.append(self.polys[-1].shift(TWO_PI))
            else:
                polys.append(self.polys[self._locate(t)[0]])
        return PiecewisePolyCircle(new, polys)

    def integral(self) -> PiNumber:
        """Exact integral over one period."""
        return sum((_integral(p, a, b) for a, b, p in self.sections()), _ZERO)

    def average(self) -> PiNumber:
        return self.integral() / TWO_PI

    def derivative(self) -> PiecewisePolyCircle:
        """Section-wise derivative (jumps are ignored)."""
        return PiecewisePolyCircle(self.points, [p.derivative() for p in self.polys])

    # -- arithmetic ------------------------------------------------------------
    def _aligned(self, other: PiecewisePolyCircle):
        pts = set(self.points) | set(other.points)
        return self.refine(pts), other.refine(pts)

    def __add__(self, other: PiecewisePolyCircle) -> PiecewisePolyCircle:
        a, b = self._aligned(other)
        return PiecewisePolyCircle(a.points, [p + q for p, q in zip(a.polys, b.polys)])

    def __mul__(self, scalar) -> PiecewisePolyCircle:
        s = PiNumber.coerce(scalar)
        return PiecewisePolyCircle(self.points, [p * s for p in self.polys])

    __rmul__ = __mul__

    def __neg__(self) -> PiecewisePolyCircle:
        return self * -1

    def __sub__(self, other: PiecewisePolyCircle) -> PiecewisePolyCircle:
        return self + (-other)

    def __eq__(self, other) -> bool:
        """Equal as functions; section boundaries do not have to match."""
        if not isinstance(other, PiecewisePolyCircle):
            return NotImplemented
        a, b = self._aligned(other)
        return a.polys == b.polys

    __hash__ = None

    def __repr__(self) -> str:
        return f"PiecewisePolyCircle({list(self.points)!r}, {list(self.polys)!r})"

    def to_json(self) -> dict:
        return {
            "singular_points": [t.to_json() for t in self.points],
            "sections": [
                {"start": a.to_json(), "end": b.to_json(),
                 "coefficients": [PiNumber.coerce(c).to_json() for c in p.coeffs]}
                for a, b, p in self.sections()
            ],
        }


def eval_pp(f: PiecewisePolyCircle, theta, side: str | None = None) -> PiNumber:
    """Exact value of ``f`` at ``theta``.

    ``theta`` may be a float (snapped to a rational multiple of pi when it is
    one to 1e-13) or a PiNumber.  At a singular point ``side='+'`` or
    ``side='-'`` selects the right or left limit; without it the call fails.
    """
    t = exact_angle(theta)
    loc = f._locate(t)
    if loc is None:
        if side is None:
            raise SingularPointError(f"theta = {t!r} is a singular point; pass side='+' or '-'")
        return f.limit(f.points.index(t), side)
    idx, coord = loc
    return PiNumber.coerce(f.polys[idx](coord))


# --- distributional objects -------------------------------------------------

@dataclass(frozen=True, order=False)
class ExactAtom:
    """``coeff * delta^(order)(theta - point)`` with exact point and coefficient."""

    point: PiNumber
    order: int = 0
    coeff: PiNumber = PiNumber.rational(1)

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("atom order must be >= 0")
        object.__setattr__(self, "point", exact_angle(self.point))
        object.__setattr__(self, "coeff", PiNumber.coerce(self.coeff))

    def key(self):
        return (float(self.point), self.order)

    def to_json(self) -> dict:
        return {"theta": self.point.to_json(), "order": self.order, "coeff": self.coeff.to_json()}


def _merge_atoms(atoms: Iterable[ExactAtom]) -> tuple[ExactAtom, ...]:
    acc: dict[tuple[PiNumber, int], PiNumber] = {}
    for a in atoms:
        k = (a.point, a.order)
        acc[k] = acc.get(k, _ZERO) + a.coeff
    out = [ExactAtom(p, m, c) for (p, m), c in acc.items() if not c.is_zero()]
    return tuple(sorted(out, key=ExactAtom.key))


class DistributionalObject:
    """Finite sum of delta atoms plus a piecewise polynomial part."""

    __slots__ = ("atoms", "smooth")

    def __init__(self, atoms: Iterable[ExactAtom] = (), smooth: PiecewisePolyCircle | None = None):
        self.atoms = _merge_atoms(atoms)
        self.smooth = smooth if smooth is not None else PiecewisePolyCircle.constant(0)

    @classmethod
    def delta(cls, theta=0, order: int = 0, coeff=1) -> DistributionalObject:
        return cls([ExactAtom(exact_angle(theta), order, PiNumber.coerce(coeff))])

    @property
    def max_order(self) -> int:
        """Largest atom order, -1 without atoms."""
        return max((a.order for a in self.atoms), default=-1)

    def mean(self) -> PiNumber:
        """Circle average: order-0 atoms contribute their mass."""
        mass = sum((a.coeff for a in self.atoms if a.order == 0), _ZERO)
        return (self.smooth.integral() + mass) / TWO_PI

    def is_zero(self) -> bool:
        return not self.atoms and self.smooth.is_zero()

    def __add__(self, other: DistributionalObject) -> DistributionalObject:
        return DistributionalObject(self.atoms + other.atoms, self.smooth + other.smooth)

    def __mul__(self, scalar) -> DistributionalObject:
        s = PiNumber.coerce(scalar)
        return DistributionalObject(
            [ExactAtom(a.point, a.order, a.coeff * s) for a in self.atoms], self.smooth * s)

    __rmul__ = __mul__

    def __neg__(self) -> DistributionalObject:
        return self * -1

    def __sub__(self, other: DistributionalObject) -> DistributionalObject:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistributionalObject):
            return NotImplemented
        return self.atoms == other.atoms and self.smooth == other.smooth

    __hash__ = None

    def __repr__(self) -> str:
        return f"DistributionalObject({list(self.atoms)!r}, {self.smooth!r})"

    def to_json(self) -> dict:
        return {"atoms": [a.to_json() for a in self.atoms], "smooth": self.smooth.to_json()}


def superpose(objects: Sequence[DistributionalObject], weights: Sequence) -> DistributionalObject:
    """Linear combination; coincident atoms (same point and order) are merged."""
    if len(objects) != len(weights):
        raise DomainError(f"{len(objects)} objects but {len(weights)} weights")
    out = DistributionalObject()
    for obj, w in zip(objects, weights):
        out = out + obj * w
    return out


def _primitive_step(d: DistributionalObject) -> DistributionalObject:
    jumps = {a.point: a.coeff for a in d.atoms if a.order == 0}
    f = d.smooth.refine(jumps) - PiecewisePolyCircle.constant(d.mean())
    sections = f.sections()
    prims = []
    value = _ZERO  # running value of the primitive at the current section start
    for (a, b, p) in sections:
        value = value + jumps.get(a, _ZERO)
        q = p.antiderivative()
        q = q + Poly([value - q(a)])
        prims.append(q)
        value = PiNumber.coerce(q(b))
    if f.points:
        # zero total mass means the primitive closes up after one turn
        first = sections[0][0]
        assert value + jumps.get(first, _ZERO) == prims[0](first), "primitive does not close"
    g = PiecewisePolyCircle(f.points, prims)
    g = g - PiecewisePolyCircle.constant(g.average())
    atoms = [ExactAtom(a.point, a.order - 1, a.coeff) for a in d.atoms if a.order > 0]
    return DistributionalObject(atoms, g)


def primitive_chain(d: DistributionalObject, steps: int) -> DistributionalObject:
    """``steps``-fold zero-average angular primitive of ``d``.

    Each step removes the circle average of the current object, integrates
    every section, turns each order-0 atom into a jump of the same height and
    lowers the order of the remaining atoms by one.  The additive constant is
    fixed so that the result again has zero average.
    """
    if steps < 1:
        raise DomainError("steps must be >= 1")
    for _ in range(steps):
        d = _primitive_step(d)
    return d


def distributional_derivative(f, times: int = 1) -> DistributionalObject:
    """``times``-fold derivative in the sense of distributions.

    ``f`` is a :class:`PiecewisePolyCircle` or a :class:`DistributionalObject`.
    Every step differentiates the sections, raises the order of existing atoms
    by one and adds an order-0 atom carrying each non-zero jump.
    """
    if times < 1:
        raise DomainError("times must be >= 1")
    d = f if isinstance(f, DistributionalObject) else DistributionalObject((), f)
    for _ in range(times):
        s = d.smooth
        atoms = [ExactAtom(a.point, a.order + 1, a.coeff) for a in d.atoms]
        atoms += [ExactAtom(t, 0, s.jump(i)) for i, t in enumerate(s.points)]
        d = DistributionalObject(atoms, s.derivative())
    return d


def delta_primitive(steps: int, theta1=0) -> PiecewisePolyCircle:
    """Exact ``steps``-th zero-average primitive of a unit delta at ``theta1``."""
    return primitive_chain(DistributionalObject.delta(theta1), steps).smooth


def fourier_coefficients(f: PiecewisePolyCircle, K: int) -> list[complex]:
    """``[c_0, ..., c_K]`` with ``c_0`` the average and ``c_k = (1/pi) int f e^{-ik t} dt``.

    This is the Taylor convention of :func:`~deltachain.series.fourier_to_taylor`
    (``c_k = alpha_k - i beta_k``).  Section integrals use the closed form
    ``int p e^{s t} = e^{s t} sum_j (-1)^j p^(j) / s^(j+1)``.
    """
    out = [complex(float(f.average()))]
    secs = [(float(a), float(b), [float(c) for c in p.coeffs]) for a, b, p in f.sections()]
    for k in range(1, K + 1):
        s = -1j * k
        total = 0j
        for a, b, cs in secs:
            derivs = []
            p = Poly(cs)
            while not p.is_zero():
                derivs.append(p)
                p = p.derivative()

            def anti(t):
                return cmath.exp(s * t) * sum((-1) ** j * q(t) / s ** (j + 1)
                                              for j, q in enumerate(derivs))
            total += anti(b) - anti(a)
        out.append(total / math.pi)
    return out


__all__ = [
    "PiecewisePolyCircle", "ExactAtom", "DistributionalObject", "eval_pp",
    "superpose", "primitive_chain", "distributional_derivative", "delta_primitive",
    "fourier_coefficients",
]
