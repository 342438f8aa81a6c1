"""Young integration of a matrix path against a vector path.

The left-point sums are exact for step paths, and the p-variation of the
integral is controlled by zeta(1/p + 1/q) * bar V_q(w) * V_p(z) whenever
1/p + 1/q > 1.
"""
import numpy as np

from sweeping import MatrixPath, SampledPath, young_integral, young_loeve_check, zeta_constant

print("zeta(1/p + 1/q) for the Young regime:")
for p, q in ((1.0, 1.0), (1.0, 2.0), (1.8, 1.1), (1.5, 1.2)):
    print(f"  p={p}, q={q}: zeta({1/p + 1/q:.4f}) = {zeta_constant(p, q):.9f}")

rng = np.random.default_rng(7)
n = 40
times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.02, 0.05, n - 1))])
z = SampledPath(times, np.cumsum(rng.normal(0, 0.2, (n, 2)), axis=0))
w = MatrixPath(times, rng.normal(0, 1, (n, 2, 2)))

integral = young_integral(w, z)
print("integral value at the horizon:", integral.values[-1])

lhs, bound = young_loeve_check(w, z, 1.8, 1.1)
print(f"V_p of the integral = {lhs:.4f}")
print(f"bound  c_pq * bar V_q(w) * V_p(z) = {bound.c_pq:.4f} * {bound.vq_w:.4f} * {bound.vp_z:.4f} = {bound.bound:.4f}")
print("within bound:", lhs <= bound.bound)

# the 1-d telescoping identity: sum z dz = (z_T^2 - z_0^2 - sum dz^2) / 2
z1 = SampledPath(times, np.cumsum(rng.normal(0, 0.3, n)))
w1 = MatrixPath(times, z1.values.reshape(-1, 1, 1))
got = young_integral(w1, z1).values[-1, 0]
dz = np.diff(z1.values[:, 0])
want = 0.5 * (z1.values[-1, 0] ** 2 - z1.values[0, 0] ** 2 - np.sum(dz**2))
print(f"telescoping identity: {got:.10f} == {want:.10f}")
