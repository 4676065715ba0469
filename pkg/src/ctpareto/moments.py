"""Closed-form raw moments and truncated MGF / characteristic-function series."""

from __future__ import annotations

import math

from .core import CtpDistribution

__all__ = ["MomentDoesNotExist", "raw_moment", "mean", "variance", "mgf_partial", "cf_partial"]


class MomentDoesNotExist(ValueError):
    pass


def raw_moment(dist: CtpDistribution, k: int) -> float:
    """``E[X**k]``, finite only for ``alpha > k``.

    alpha * x0**k * (-d1 k^2 + (5 d1 + 2 d2) k alpha - 6 alpha^2)
    / ((k - alpha)(k - 2 alpha)(k - 3 alpha))
    """
    if int(k) != k or k < 1:
        raise ValueError(f"moment order must be a positive integer, got {k}")
    a = dist.alpha
    if not a > k:
        raise MomentDoesNotExist(f"moment of order {k} does not exist for alpha = {a}")
    d1, d2 = dist.delta.delta1, dist.delta.delta2
    num = -d1 * k * k + (5.0 * d1 + 2.0 * d2) * k * a - 6.0 * a * a
    den = (k - a) * (k - 2.0 * a) * (k - 3.0 * a)
    return a * dist.x0**k * num / den


def mean(dist: CtpDistribution) -> float:
    return raw_moment(dist, 1)


def variance(dist: CtpDistribution) -> float:
    m1 = raw_moment(dist, 1)
    return raw_moment(dist, 2) - m1 * m1


def _series(dist: CtpDistribution, z, K: int):
    if K < 0:
        raise ValueError("K must be >= 0")
    if not K < dist.alpha:
        raise MomentDoesNotExist(
            f"series truncated at K = {K} needs moments up to order {K}, which requires alpha > {K}"
        )
    total = 1.0 + 0j
    for k in range(1, K + 1):
        total += z**k / math.factorial(k) * raw_moment(dist, k)
    return total


def mgf_partial(dist: CtpDistribution, t: float, K: int) -> float:
    """Partial sum ``sum_{k<=K} t^k E[X^k] / k!``; the truncation error is not bounded."""
    return _series(dist, float(t), K).real


def cf_partial(dist: CtpDistribution, t: float, K: int) -> complex:
    """Partial sum of the characteristic-function series, ``(i t)^k`` in place of ``t^k``."""
    return complex(_series(dist, 1j * float(t), K))
