"""
Moments, quantiles and random draws
===================================

Closed-form moments against simulation, and a look at the tail.
"""

import numpy as np

from ctpareto import CtpDistribution, mean, raw_moment, variance
from ctpareto.moments import MomentDoesNotExist, mgf_partial

dist = CtpDistribution.from_values(x0=1.0, alpha=3.5, delta1=0.4, delta2=1.1)
print(dist)

draws = dist.sample(10**6, seed=2024)
se = np.sqrt(variance(dist) / draws.size)
print(f"mean: closed form {mean(dist):.5f}, simulated {draws.mean():.5f} (se {se:.5f})")
print(f"E[X^3] = {raw_moment(dist, 3):.4f}")

# Order 4 needs alpha > 4.
try:
    raw_moment(dist, 4)
except MomentDoesNotExist as exc:
    print("k=4:", exc)

# Only partial sums of the generating series are meaningful.
print("MGF partial sum, t=0.1, K=3:", mgf_partial(dist, 0.1, 3))

# Quantiles come from inverting the cubic; deep tail values go through
# the survival side to keep relative accuracy.
for p in (0.5, 0.99, 1 - 1e-12):
    print(f"q({p}) = {dist.quantile(p):.6g}")
print("x with survival 1e-30:", dist.inverse_survival(1e-30))

# Hazard decays like alpha / x far out.
for x in (1.0, 10.0, 1e4):
    print(f"hazard({x:g}) * x / alpha = {dist.hazard(x) * x / dist.alpha:.6f}")
