"""A tour of the delta kernel and its angular derivatives.

Prints the mass of the kernel on shrinking circles, the sifting action on a
few trigonometric test functions, and the signed derivative actions up to
order four.
"""

from deltachain import DeltaKernelSpec, TestFunction, act, circle_integral, kernel_values

theta1 = 0.9

print("mass of rho * Re w on the circle |z| = rho equals rho")
# near the boundary the kernel peaks like 1/(1-rho), so the node count has to follow
for rho in (0.5, 0.9, 0.99, 0.999):
    nodes = 256 if rho < 0.9 else 2 ** 16
    mass = circle_integral(lambda t: rho * kernel_values(0, rho, t - theta1, proper=False).real,
                           node_count=nodes)
    print(f"  rho={rho:<6} nodes={nodes:<6} mass={mass:.15f}")

print()
print(f"sifting at theta1={theta1}: <delta, g> against g(theta1)")
for name, g in [("1", TestFunction.cos(0)), ("cos 3t", TestFunction.cos(3)), ("sin 2t", TestFunction.sin(2))]:
    r = act(DeltaKernelSpec(theta1, 0), g)
    print(f"  g={name:<7} act={r.value:+.12f} exact={g(theta1):+.12f} err_est={r.error_estimate:.1e}")

# <delta^(n), g> = (-1)^n g^(n)(theta1)
print()
g = TestFunction.from_coefficients(0.4, [1.0, 0.5, -0.3], [0.3, -0.7, 0.25])
print("derivative actions on a mixed trigonometric polynomial")
for n in range(5):
    r = act(DeltaKernelSpec(theta1, n), g)
    want = (-1) ** n * g.derivative(theta1, n)
    print(f"  n={n} act={r.value:+.10f} want={want:+.10f} "
          f"converged={r.converged} nodes={max(r.node_counts)}")

print()
print("last rows of the extrapolation table for n=2")
r = act(DeltaKernelSpec(theta1, 2), g)
for rho, value in r.extrapolation_table[-4:]:
    print(f"  rho={rho:.6f} value={value:+.12f}")
print(f"  limit {r.value:+.12f}, target {g.derivative(theta1, 2):+.12f}, gap {abs(r.value - g.derivative(theta1, 2)):.1e}")
