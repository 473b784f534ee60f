import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from deltachain.exact import GaussianRational, PiNumber, Poly, exact_angle, normalize_exact_angle

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
pinumbers = st.dictionaries(st.integers(-2, 2), fractions, max_size=3).map(PiNumber)


def to_sympy(x: PiNumber):
    return sum((sp.Rational(c.numerator, c.denominator) * sp.pi ** p for p, c in x.terms.items()),
               sp.Integer(0))


@given(pinumbers, pinumbers, pinumbers)
def test_pinumber_ring_matches_sympy(a, b, c):
    got = (a + b) * c - a * b
    want = sp.expand((to_sympy(a) + to_sympy(b)) * to_sympy(c) - to_sympy(a) * to_sympy(b))
    assert sp.simplify(to_sympy(got) - want) == 0


@given(pinumbers)
def test_pinumber_json_round_trip(a):
    assert PiNumber.from_json(a.to_json()) == a


def test_pinumber_float_and_division():
    x = PiNumber.rational(1, 2) - PiNumber.pi() / 6
    assert float(x) == pytest.approx(0.5 - math.pi / 6, rel=1e-15)
    assert (x * PiNumber.pi(2)) / PiNumber.pi(2) == x
    assert 1 / PiNumber.pi() == PiNumber.pi(-1)
    with pytest.raises(ZeroDivisionError):
        x / (PiNumber.pi() + 1)


def test_pinumber_ordering_and_zero():
    assert PiNumber.pi() > 3
    assert PiNumber.pi(-1) < Fraction(1, 3)
    assert PiNumber() == 0 and PiNumber().is_zero()
    assert PiNumber.pi() - PiNumber.pi() == 0


def test_exact_angle_snaps_rational_multiples_of_pi():
    assert exact_angle(math.pi / 4) == PiNumber.pi(1, Fraction(1, 4))
    assert exact_angle(math.pi) == PiNumber.pi()
    assert exact_angle(-math.pi) == PiNumber.pi()
    assert exact_angle(3 * math.pi) == PiNumber.pi()
    assert exact_angle(0.3) == PiNumber.coerce(Fraction(0.3))


def test_normalize_exact_angle_general_element():
    t = PiNumber.rational(7)  # 7 rad = 7 - 2 pi after one turn
    assert normalize_exact_angle(t) == t - PiNumber.pi(1, 2)
    assert normalize_exact_angle(PiNumber.pi(1, Fraction(-5, 3))) == PiNumber.pi(1, Fraction(1, 3))


def test_gaussian_rational_arithmetic():
    i = GaussianRational(0, 1)
    assert [GaussianRational.i_power(n) for n in range(5)] == [1, i, -1, -i, 1]
    a, b = GaussianRational(Fraction(1, 2), 3), GaussianRational(-2, Fraction(1, 7))
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert (a / b) * b == a
    assert a.conjugate() == GaussianRational(Fraction(1, 2), -3)


def test_poly_calculus_against_sympy():
    x = sp.symbols("x")
    p = Poly([Fraction(1, 3), -2, 0, Fraction(5, 4)])
    sym = sum(sp.Rational(c.numerator, c.denominator) * x ** k
              for k, c in enumerate(map(Fraction, p.coeffs)))
    as_sym = lambda q: sp.expand(sum(sp.Rational(Fraction(c).numerator, Fraction(c).denominator) * x ** k
                                     for k, c in enumerate(q.coeffs)))
    assert as_sym(p.derivative()) == sp.expand(sp.diff(sym, x))
    assert as_sym(p.antiderivative()) == sp.expand(sp.integrate(sym, (x, 0, x)))
    assert as_sym(p.shift(3)) == sp.expand(sym.subs(x, x + 3))
    assert as_sym(p.reflect()) == sp.expand(sym.subs(x, -x))
    assert p.antiderivative().derivative() == p


def test_poly_over_pinumber():
    p = Poly([PiNumber.pi(), PiNumber.rational(1, 2)])
    assert p(PiNumber.pi()) == PiNumber.pi() * Fraction(3, 2)
    assert p.shift(PiNumber.pi(1, 2)) == Poly([PiNumber.pi(1, 2), PiNumber.rational(1, 2)])
