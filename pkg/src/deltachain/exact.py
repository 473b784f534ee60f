"""Exact scalars and polynomials used by the closed-form side of the package.

Two scalar types live here:

* :class:`PiNumber` -- a real number of the form ``sum_p r_p * pi**p`` with
  rational ``r_p`` and integer ``p``.  Every coefficient that appears in the
  piecewise polynomial primitives of the delta (``1/2``, ``-pi/6``,
  ``1/(12 pi)``, ...) is of this form, and the set is closed under the ring
  operations plus division by rationals and by powers of pi.
* :class:`GaussianRational` -- ``a + b i`` with rational ``a`` and ``b``.

:class:`Poly` is a small dense polynomial over either of them (or over plain
ints and Fractions, which both types absorb).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

_SNAP_DENOMINATOR = 100_000
_SNAP_TOLERANCE = 1e-13


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot represent {x!r} exactly")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


class PiNumber:
    """Exact element of Q[pi, 1/pi].

    >>> half = PiNumber.rational(1, 2)
    >>> float(half - PiNumber.pi() / 6)
    -0.02359877559829882
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean = {}
        for power, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[int(power)] = coeff
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, num, den=1) -> PiNumber:
        return cls({0: Fraction(num) / Fraction(den)})

    @classmethod
    def pi(cls, power: int = 1, coeff=1) -> PiNumber:
        return cls({power: _as_fraction(coeff)})

    @classmethod
    def coerce(cls, x) -> PiNumber:
        if isinstance(x, PiNumber):
            return x
        return cls({0: _as_fraction(x)})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def pi_multiple(self) -> Fraction | None:
        """Return ``r`` if this number equals ``r * pi`` (or 0), else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {1}:
            return self._terms[1]
        return None

    def __float__(self) -> float:
        return math.fsum(float(c) * math.pi ** p for p, c in self._terms.items())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        try:
            other = PiNumber.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return PiNumber(out)

    __radd__ = __add__

    def __neg__(self) -> PiNumber:
        return PiNumber({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        return self + (-PiNumber.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        try:
            other = PiNumber.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                out[p1 + p2] = out.get(p1 + p2, 0) + c1 * c2
        return PiNumber(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        other = PiNumber.coerce(other)
        if not other.is_monomial():
            raise ZeroDivisionError(
                "PiNumber division is only exact by a single term r*pi**p"
            )
        (p, c), = other._terms.items()
        return PiNumber({q - p: d / c for q, d in self._terms.items()})

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        return PiNumber.coerce(other) / self

    def __pow__(self, k: int) -> PiNumber:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = PiNumber.rational(1)
        for _ in range(k):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, PiNumber):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == PiNumber.coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def sign(self) -> int:
        # pi is transcendental, so a non-empty term set is never exactly zero.
        if not self._terms:
            return 0
        value = float(self)
        if value != 0.0:
            return 1 if value > 0 else -1
        raise ArithmeticError(f"sign of {self!r} is below float resolution")

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, c in self._terms.items():
            if p == 0:
                parts.append(str(c))
            elif p == 1:
                parts.append(f"{c}*pi")
            else:
                parts.append(f"{c}*pi^{p}")
        return " + ".join(parts)

    def to_json(self) -> list[dict[str, int]]:
        return [
            {"num": c.numerator, "den": c.denominator, "pi_power": p}
            for p, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data) -> PiNumber:
        if isinstance(data, dict):
            data = [data]
        if isinstance(data, list):
            out = PiNumber()
            for term in data:
                out = out + cls.pi(int(term["pi_power"]),
                                   Fraction(int(term["num"]), int(term["den"])))
            return out
        return cls.coerce(data)


def exact_angle(theta) -> PiNumber:
    """Turn an angle into an exact :class:`PiNumber` in ``(-pi, pi]``.

    Floats within 1e-13 of a rational multiple of pi with denominator at most
    1e5 are snapped to that multiple (``0.7853981633974483`` becomes
    ``pi/4``); any other float is taken at its exact binary value.
    """
    if isinstance(theta, PiNumber):
        value = theta
    elif isinstance(theta, float):
        ratio = Fraction(theta / math.pi).limit_denominator(_SNAP_DENOMINATOR)
        if abs(float(ratio) * math.pi - theta) <= _SNAP_TOLERANCE * max(1.0, abs(theta)):
            value = PiNumber.pi(1, ratio)
        else:
            value = PiNumber.coerce(theta)
    else:
        value = PiNumber.coerce(theta)
    return normalize_exact_angle(value)


def normalize_exact_angle(theta: PiNumber) -> PiNumber:
    """Shift ``theta`` by a multiple of 2 pi into ``(-pi, pi]``."""
    r = theta.pi_multiple()
    if r is not None:
        # theta = r*pi; want r in (-1, 1]
        turns = math.ceil((r - 1) / 2)
        return PiNumber.pi(1, r - 2 * turns)
    turns = math.ceil((float(theta) - math.pi) / (2 * math.pi))
    out = theta - PiNumber.pi(1, 2 * turns)
    # float rounding can leave us one period off right at the boundary
    while out <= -PiNumber.pi():
        out = out + PiNumber.pi(1, 2)
    while out > PiNumber.pi():
        out = out - PiNumber.pi(1, 2)
    return out


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        return cls(x, 0)

    @classmethod
    def i_power(cls, n: int) -> GaussianRational:
        return [cls(1, 0), cls(0, 1), cls(-1, 0), cls(0, -1)][n % 4]

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        den = other.re ** 2 + other.im ** 2
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * other.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, (GaussianRational, int, Fraction, complex)):
            other = GaussianRational.coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"({self.re} + {self.im}i)"

    def to_json(self) -> dict:
        return {
            "re": {"num": self.re.numerator, "den": self.re.denominator, "pi_power": 0},
            "im": {"num": self.im.numerator, "den": self.im.denominator, "pi_power": 0},
        }


class Poly:
    """Dense polynomial with exact coefficients, lowest degree first.

    Coefficient arithmetic is delegated to the coefficient objects, so the
    same class serves ``PiNumber`` (piecewise primitives) and
    ``GaussianRational`` (kernel numerators).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map(self, fn) -> Poly:
        return Poly(fn(c) for c in self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other) -> Poly:
        return Poly(other * c for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[k] == other[k] for k in range(n))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def derivative(self) -> Poly:
        return Poly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def antiderivative(self) -> Poly:
        """Primitive vanishing at 0."""
        return Poly([0] + [c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, a) -> Poly:
        """Return the polynomial ``x -> self(x + a)`` (Taylor shift)."""
        out = Poly()
        # Horner in polynomial arithmetic: p(x + a)
        base = Poly([a, 1])
        for c in reversed(self.coeffs):
            out = out * base + Poly([c])
        return out

    def reflect(self) -> Poly:
        """Return ``x -> self(-x)``."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"
