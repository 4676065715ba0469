"""
A fitted model that is not a distribution
=========================================

Maximising the G likelihood over its original box without the sign
condition gives a better likelihood, but the fitted "cdf" dips below zero.
"""

import numpy as np
from scipy.optimize import brentq

from ctpareto import FitConfig, fit, load_wheaton

res = fit("g", load_wheaton(), FitConfig(require_valid=False))
print(f"-logL={res.negloglik:.3f} alpha={res.alpha_hat:.4f} params={tuple(res.params_hat)}")
print("valid:", res.valid)

dist = res.distribution()
print(dist.validity)

x = np.linspace(0.1, 0.6, 2001)[1:]
for name in ("cdf", "pdf"):
    f = getattr(dist, name)
    y = f(x)
    flips = np.flatnonzero(np.signbit(y[:-1]) != np.signbit(y[1:]))
    roots = [brentq(f, x[i], x[i + 1]) for i in flips]
    print(f"{name} negative between", ", ".join(f"{r:.5f}" for r in roots))

# Sampling refuses, since the quantile function is undefined.
try:
    dist.sample(5, seed=0)
except ValueError as exc:
    print("sample:", exc)
