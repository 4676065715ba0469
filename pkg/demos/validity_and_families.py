"""
Which coefficient pairs give a distribution
===========================================

Every named family is a straight-line map into the (d1, d2) plane.  A pair
is usable only if the quadratic r(t) stays nonnegative on [0, 1].
"""

import numpy as np

from ctpareto import get_family, region_sample, to_delta, validity_check

# The certificate carries the minimum of r and where it is attained.
for pair in [(1.0, 0.0), (4.0, -6.0), (0.0, -1.0)]:
    print(pair, validity_check(pair))

# The original G box contains pairs that fail the check...
pts = region_sample("g", 20000, seed=0)
bad = np.array([not validity_check(to_delta("g", p)).is_valid for p in pts])
print(f"G region: {bad.mean():.1%} of sampled points are not distributions")
print("worst corner:", validity_check(to_delta("g", (0.0, -1.0))))

# ...while every point of the enlarged regions passes.
for fam in ("mg", "ma", "mr18a", "mr18b", "mr19"):
    pts = region_sample(fam, 20000, seed=1)
    ok = all(validity_check(to_delta(fam, p)).is_valid for p in pts)
    print(f"{get_family(fam).label:<10} all valid: {ok}")

# MG, MR18a and MR18b are three coordinate systems for one triangle.
for fam in ("mg", "mr18a", "mr18b"):
    vertices = get_family(fam).region.vertices()
    corners = sorted(tuple((np.round(to_delta(fam, v).as_tuple(), 12) + 0.0).tolist()) for v in vertices)
    print(fam, corners)
