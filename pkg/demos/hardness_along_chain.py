"""Probe how fast each kernel blows up as z approaches the boundary point z1.

Going up the derivative chain raises the pole order by one each time; going
down through the logarithmic primitive leaves a singularity that grows but is
not a pole.
"""

import math

from deltachain import (DeltaKernelSpec, delta_derivative_kernel_eval, hardness_probe,
                        log_primitive_eval)

theta1 = -math.pi / 3

print(f"{'kernel':<18}{'verdict':<18}{'exponent':>9}{'log flag':>10}")
r = hardness_probe(lambda p: log_primitive_eval(p, theta1), theta1)
print(f"{'log primitive':<18}{r.verdict:<18}{r.fitted_exponent:>9.3f}{str(r.log_flag):>10}")
for n in range(5):
    spec = DeltaKernelSpec(theta1, n)
    r = hardness_probe(lambda p: delta_derivative_kernel_eval(spec, p), theta1)
    print(f"{'delta^(%d)' % n:<18}{r.verdict:<18}{r.fitted_exponent:>9.3f}{str(r.log_flag):>10}")

# the samples are |w| along the radius into z1
print()
print("last samples for delta^(2):")
r = hardness_probe(lambda p: delta_derivative_kernel_eval(DeltaKernelSpec(theta1, 2), p), theta1)
for rho, mag in r.samples[-4:]:
    print(f"  1-rho={1 - rho:.2e}  |w|={mag:.4e}  |w|(1-rho)^3={mag * (1 - rho) ** 3:.6f}")
