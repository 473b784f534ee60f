import math

import pytest

from deltachain.classify import hardness_probe
from deltachain.errors import DomainError
from deltachain.kernels import (DeltaKernelSpec, RationalKernel, delta_derivative_kernel_eval,
                                delta_kernel_eval, log_primitive_eval)


def kernel(n, t1):
    spec = DeltaKernelSpec(t1, n)
    return lambda p: delta_derivative_kernel_eval(spec, p)


def test_examples():
    assert hardness_probe(lambda p: delta_kernel_eval(p, 0.0), 0.0).verdict == "hard(1)"
    r = hardness_probe(lambda p: log_primitive_eval(p, 0.0), 0.0)
    assert r.verdict == "borderline_hard" and r.log_flag
    assert hardness_probe(lambda p: p.z, 1.0).verdict == "soft"


@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("t1", [0.0, 1.2, -math.pi / 2])
def test_kernel_degrees(n, t1):
    r = hardness_probe(kernel(n, t1), t1)
    assert r.verdict == f"hard({n + 1})"
    assert r.degree == n + 1 and r.fitted_exponent >= 0
    assert len(r.samples) == 11


@pytest.mark.parametrize("c", [1e-8, -3.0, 2j, 1e6])
def test_scale_invariance(c):
    for ev in (kernel(2, 0.3), lambda p: log_primitive_eval(p, 0.3), lambda p: p.z):
        assert hardness_probe(lambda p: c * ev(p), 0.3).verdict == hardness_probe(ev, 0.3).verdict


def test_exact_chain_step_shifts_degree():
    k = RationalKernel.for_order(1)
    for m in range(2, 6):
        k = k.angular_derivative()
        r = hardness_probe(lambda p, k=k: k(p.z, 0.0), 0.0)
        assert r.verdict == f"hard({m + 1})"


def test_noninteger_and_soft_cases():
    assert hardness_probe(lambda p: (1 - p.z) ** -0.5, 0.0).verdict == "hard(noninteger)"
    assert hardness_probe(lambda p: (1 - p.z) * log_primitive_eval(p, 0.0), 0.0).verdict == "soft"
    assert hardness_probe(lambda p: 0j, 0.0).verdict == "soft"


def test_ladder_validation():
    with pytest.raises(DomainError):
        hardness_probe(lambda p: p.z, 0.0, ladder=[0.5, 0.9, 0.8, 0.95])
    with pytest.raises(DomainError):
        hardness_probe(lambda p: p.z, 0.0, ladder=[0.5, 0.9])
