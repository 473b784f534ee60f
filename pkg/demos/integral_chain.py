"""Exact primitives of the delta on the circle.

Each step of the chain integrates, removes the mean, and keeps everything in
Q[pi, 1/pi], so the printed polynomials are exact.  The script then checks the
Fourier coefficients of a primitive against the closed form, builds a square
wave from two opposite deltas, and differentiates back down the chain.
"""

import math

from deltachain import (DistributionalObject, delta_primitive,
                        distributional_derivative, eval_pp, fourier_coefficients, primitive_chain,
                        superpose)

for m in range(1, 5):
    f = delta_primitive(m)
    (_, _, poly), = f.sections()
    print(f"primitive {m}: {poly}")
    print(f"    value just right of 0: {eval_pp(f, 0, side='+')}, average {f.average()}")

# the m-th primitive has c_k = 1/(pi (ik)^m) for k != 0
print()
f = delta_primitive(2)
coeffs = fourier_coefficients(f, 4)
for k, c in enumerate(coeffs[1:], start=1):
    want = 1 / (math.pi * (1j * k) ** 2)
    print(f"  k={k} Re c_k={c.real:+.15f} |Im c_k|={abs(c.imag):.1e}  closed form {want.real:+.15f}")

# delta at 0 minus delta at pi integrates to a square wave of height 1/2
print()
pair = superpose([DistributionalObject.delta(0), DistributionalObject.delta(math.pi)], [1, -1])
square = primitive_chain(pair, 1)
print("square wave:", square.smooth)
for t in (-2.0, -0.5, 0.5, 2.0):
    print(f"  f({t:+.1f}) = {float(eval_pp(square.smooth, t)):+.3f}")
triangle = primitive_chain(pair, 2)
print("its primitive:", triangle.smooth)

print()
back = distributional_derivative(triangle, 2)
print("differentiating twice recovers the pair:", back == pair)
print("  atoms:", [(float(a.point), a.order, float(a.coeff)) for a in back.atoms])

# from the second primitive on, the one-sided limits at the delta agree
ramp = delta_primitive(3, theta1=math.pi / 2)
d1 = ramp.derivative()
print("third primitive about pi/2 is continuous with a continuous derivative:",
      eval_pp(ramp, math.pi / 2, side='-') == eval_pp(ramp, math.pi / 2, side='+')
      and eval_pp(d1, math.pi / 2, side='-') == eval_pp(d1, math.pi / 2, side='+'))
