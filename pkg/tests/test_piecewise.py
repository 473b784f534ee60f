import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltachain.errors import SingularPointError
from deltachain.exact import PiNumber, Poly
from deltachain.piecewise import (
    DistributionalObject, ExactAtom, PiecewisePolyCircle, delta_primitive, distributional_derivative,
    eval_pp, fourier_coefficients, primitive_chain, superpose,
)
from deltachain.series import angular_primitive_series, delta_taylor_coefficients

PI = PiNumber.pi()
HALF = Fraction(1, 2)


def branches(s):
    """The published primitives as (positive, negative) polynomials in Delta theta."""
    return {
        1: ([HALF, -1 / (2 * PI)], [-HALF, -1 / (2 * PI)]),
        2: ([-PI / 6, HALF, -1 / (4 * PI)], [-PI / 6, -HALF, -1 / (4 * PI)]),
        3: ([0, -PI / 6, Fraction(1, 4), -1 / (12 * PI)], [0, -PI / 6, -Fraction(1, 4), -1 / (12 * PI)]),
    }[s]


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("t1", [0.0, math.pi / 3, -3 * math.pi / 4, math.pi])
def test_primitives_match_published_branches(s, t1):
    f = delta_primitive(s, t1)
    pos, neg = (Poly(map(PiNumber.coerce, b)) for b in branches(s))
    for frac in (Fraction(1, 7), Fraction(1, 2), Fraction(9, 10)):
        dt = PI * frac
        theta1 = f.points[0]
        assert eval_pp(f, theta1 + dt) == pos(dt)
        assert eval_pp(f, theta1 - dt) == neg(-dt)


def test_eval_pp_examples():
    assert eval_pp(delta_primitive(1), math.pi / 2) == Fraction(1, 4)
    assert eval_pp(delta_primitive(2), 0.0, side="+") == -PI / 6
    assert eval_pp(delta_primitive(3), math.pi) == 0
    with pytest.raises(SingularPointError):
        eval_pp(delta_primitive(1), 0.0)
    assert eval_pp(delta_primitive(1), 0.0, side="-") == -HALF


def test_chain_examples():
    d = DistributionalObject([ExactAtom(0)], PiecewisePolyCircle.constant(-1 / (2 * PI)))
    assert primitive_chain(d, 1).smooth == PiecewisePolyCircle([0], [branches(1)[0]])
    assert primitive_chain(d, 3).smooth == PiecewisePolyCircle([0], [branches(3)[0]])
    square = primitive_chain(superpose([DistributionalObject.delta(0), DistributionalObject.delta(math.pi)],
                                       [1, -1]), 1)
    assert square.smooth.polys == (Poly([HALF]), Poly([-HALF]))
    assert not square.atoms


def test_derivative_examples():
    got = distributional_derivative(delta_primitive(1), 1)
    assert got == DistributionalObject([ExactAtom(0)], PiecewisePolyCircle.constant(-1 / (2 * PI)))
    square = PiecewisePolyCircle([0, PI], [[HALF], [-HALF]])
    got = distributional_derivative(square, 1)
    assert got.atoms == (ExactAtom(0, 0, 1), ExactAtom(PI, 0, -1))
    assert got.smooth.is_zero()
    assert distributional_derivative(PiecewisePolyCircle.constant(0), 1).is_zero()


def test_superpose_examples():
    a = DistributionalObject.delta(0.5, 1, 2)
    assert superpose([a], [1]) == a
    assert superpose([a, a], [1, -1]).is_zero()
    two = superpose([DistributionalObject.delta(0), DistributionalObject.delta(math.pi)], [1, -1])
    assert two.atoms == (ExactAtom(0, 0, 1), ExactAtom(PI, 0, -1))


atoms = st.lists(
    st.builds(ExactAtom,
              st.integers(-5, 6).map(lambda k: PiNumber.pi(1, Fraction(k, 6))),
              st.integers(0, 2),
              st.integers(-3, 3).filter(bool).map(PiNumber.coerce)),
    min_size=1, max_size=4)


def proper(d: DistributionalObject) -> DistributionalObject:
    return d - DistributionalObject((), PiecewisePolyCircle.constant(d.mean()))


@settings(max_examples=40, deadline=None)
@given(atoms, st.integers(1, 4))
def test_chain_round_trip_and_zero_average(atom_list, s):
    d = DistributionalObject(atom_list)
    up = primitive_chain(d, s)
    assert up.smooth.average() == 0
    assert distributional_derivative(up, s) == proper(d)


def test_round_trip_is_identity_for_zero_mean():
    d = superpose([DistributionalObject.delta(0), DistributionalObject.delta(math.pi / 2)], [3, -3])
    for s in (1, 2, 3):
        assert distributional_derivative(primitive_chain(d, s), s) == d


@pytest.mark.parametrize("s", range(2, 7))
def test_smoothness_gain(s):
    f = delta_primitive(s, 0.0)
    g = f
    for j in range(s - 1):  # values and the first s-2 derivatives agree across the point
        assert g.jump(0) == 0, (s, j)
        g = g.derivative()
    assert g.jump(0) != 0


@pytest.mark.parametrize("s", range(1, 7))
def test_parity(s):
    # the single section is (0, 2 pi); f(dt) on (0, pi) against f(-dt) from the wrapped part
    p = delta_primitive(s).polys[0]
    two_pi = PiNumber.pi(1, 2)
    reflected = p.shift(two_pi).reflect()  # dt -> p(2 pi - dt) = value at -dt
    sign = 1 if s % 2 == 0 else -1
    assert p == reflected * sign


@pytest.mark.parametrize("t1", [0.0, 0.7, -2.0])
def test_fourier_coefficients_match_primitive_series(t1):
    series = delta_taylor_coefficients(t1, 0, 16)
    for s in (1, 2, 3):
        series = angular_primitive_series(series)
        exact = fourier_coefficients(delta_primitive(s, t1), 16)
        np.testing.assert_allclose(series.coefficients, exact, atol=1e-10)


def test_refine_preserves_function():
    f = delta_primitive(2, 1.0)
    g = f.refine([0.0, -2.5, math.pi])
    assert len(g.points) == 4 and g == f
    for t in (-3.0, -1.0, 0.5, 2.0, 3.1):
        assert eval_pp(g, t) == eval_pp(f, t)
