"""p-variation of step paths, computed exactly.

v_p over an interval is the supremum over all subdivisions of the sum of
p-th powers of increments; for a step path it is attained on grid points
and the O(n^2) dynamic program below is exact.
"""
import itertools

import numpy as np

from sweeping import SampledPath, interpolation_bound, oscillation, p_variation

path = SampledPath(np.arange(4.0), [0.0, 2.0, 1.0, 3.0])
print("path values:", path.values.ravel())

for p in (1.0, 1.5, 2.0, 3.0):
    res = p_variation(path, p)
    print(f"p={p}: v_p={res.value:.6f}  V_p={res.norm:.6f}  bar V_p={res.bar_norm:.6f}")

# cross-check p=2 against explicit enumeration of all subdivisions
vals = path.values[:, 0]
best = 0.0
for k in range(0, 3):
    for combo in itertools.combinations((1, 2), k):
        idx = [0, *combo, 3]
        best = max(best, sum(abs(vals[j] - vals[i]) ** 2 for i, j in zip(idx, idx[1:])))
print("enumeration oracle for p=2:", best)

# oscillation and the variation-order interpolation estimate
rng = np.random.default_rng(1)
walk = SampledPath(np.linspace(0, 1, 200), np.cumsum(rng.normal(0, 0.1, 200)))
print("oscillation:", oscillation(walk))
for eps in (0.25, 0.5, 1.0):
    lhs, rhs = interpolation_bound(walk, 1.5, eps)
    print(f"V_{1.5 + eps:.2f} = {lhs:.4f} <= Osc^(1-p/(p+eps)) V_p^(p/(p+eps)) = {rhs:.4f}")

# sub-interval queries insert the endpoints with their cadlag values
sub = p_variation(walk, 2.0, (0.25, 0.75))
print(f"v_2 over [0.25, 0.75] = {sub.value:.4f}")
