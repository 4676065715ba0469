"""Cubic-transmuted Pareto distributions in unified delta coordinates.

A cubic transmutation of a baseline cdf ``G`` is ``F = R(G)`` where

    R(t) = d1*t + d2*t**2 + d3*t**3,    d3 = 1 - d1 - d2,

is a cdf on ``[0, 1]`` with density ``r(t) = d1 + 2*d2*t + 3*d3*t**2``.
Everything here is expressed through ``u = (x0/x)**alpha`` (baseline
survival) and ``t = 1 - u`` (baseline cdf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EPS_VALIDITY",
    "EPS_ROOT",
    "DeltaCoefficients",
    "ParetoBase",
    "ValidityCertificate",
    "InvalidDistributionError",
    "CtpDistribution",
    "mixing_pdf",
    "mixing_cdf",
    "validity_check",
    "min_mixing_pdf",
]

EPS_VALIDITY = 1e-12
EPS_ROOT = 1e-12

_MAX_SOLVER_ITER = 400


@dataclass(frozen=True)
class DeltaCoefficients:
    """The pair ``(delta1, delta2)``; ``delta3`` is always derived."""

    delta1: float
    delta2: float

    def __post_init__(self):
        d1, d2 = float(self.delta1), float(self.delta2)
        if not (math.isfinite(d1) and math.isfinite(d2)):
            raise ValueError(f"delta coefficients must be finite, got ({d1}, {d2})")
        object.__setattr__(self, "delta1", d1)
        object.__setattr__(self, "delta2", d2)

    @property
    def delta3(self) -> float:
        return 1.0 - self.delta1 - self.delta2

    def as_tuple(self) -> tuple[float, float]:
        return (self.delta1, self.delta2)

    def survival_coefficients(self) -> tuple[float, float, float]:
        """Coefficients ``(a, b, c)`` of ``S = a*u + b*u**2 + c*u**3``."""
        d1, d2 = self.delta1, self.delta2
        return (3.0 - 2.0 * d1 - d2, 3.0 * d1 + 2.0 * d2 - 3.0, self.delta3)


@dataclass(frozen=True)
class ParetoBase:
    x0: float
    alpha: float

    def __post_init__(self):
        x0, alpha = float(self.x0), float(self.alpha)
        if not (math.isfinite(x0) and x0 > 0):
            raise ValueError(f"x0 must be finite and > 0, got {x0}")
        if not (math.isfinite(alpha) and alpha > 0):
            raise ValueError(f"alpha must be finite and > 0, got {alpha}")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class ValidityCertificate:
    """Infimum of the mixing density over ``[0, 1]`` and where it is attained."""

    min_value: float
    argmin_t: float
    is_valid: bool


class InvalidDistributionError(ValueError):
    def __init__(self, certificate: ValidityCertificate, message: str | None = None):
        self.certificate = certificate
        if message is None:
            message = (
                f"mixing density is negative: min r(t) = {certificate.min_value:.6g} "
                f"at t = {certificate.argmin_t:.6g}"
            )
        super().__init__(message)


def _as_delta(delta) -> DeltaCoefficients:
    if isinstance(delta, DeltaCoefficients):
        return delta
    d1, d2 = delta
    return DeltaCoefficients(d1, d2)


def mixing_pdf(delta, t):
    """Evaluate ``r(t) = d1 + 2*d2*t + 3*d3*t**2`` for ``t`` in ``[0, 1]``.

    No sign requirement is imposed on the result.
    """
    delta = _as_delta(delta)
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0.0) | (t_arr > 1.0)) or np.any(np.isnan(t_arr)):
        raise ValueError("t must lie in [0, 1]")
    out = delta.delta1 + t_arr * (2.0 * delta.delta2 + 3.0 * delta.delta3 * t_arr)
    return float(out) if out.ndim == 0 else out


def mixing_cdf(delta, t):
    """Evaluate ``R(t) = d1*t + d2*t**2 + d3*t**3``."""
    delta = _as_delta(delta)
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0.0) | (t_arr > 1.0)) or np.any(np.isnan(t_arr)):
        raise ValueError("t must lie in [0, 1]")
    out = t_arr * (delta.delta1 + t_arr * (delta.delta2 + delta.delta3 * t_arr))
    return float(out) if out.ndim == 0 else out


def validity_check(delta, eps: float = EPS_VALIDITY) -> ValidityCertificate:
    """Exact minimum of the quadratic mixing density on ``[0, 1]``.

    If ``d3 > 0`` and the vertex ``-d2 / (3*d3)`` lies in ``[0, 1]`` the
    minimum is at the vertex, otherwise at an endpoint (``d3 <= 0`` is
    linear or concave).
    """
    delta = _as_delta(delta)
    value, where = min_mixing_pdf(delta.delta1, delta.delta2)
    return ValidityCertificate(value, where, value >= -eps)


def min_mixing_pdf(d1: float, d2: float) -> tuple[float, float]:
    """``(min, argmin)`` of the mixing density on ``[0, 1]`` for raw floats."""
    d3 = 1.0 - d1 - d2
    if d3 > 0.0:
        vertex = -d2 / (3.0 * d3)
        if 0.0 <= vertex <= 1.0:
            return d1 - d2 * d2 / (3.0 * d3), vertex
    r1 = 3.0 - 2.0 * d1 - d2
    if d1 <= r1:
        return d1, 0.0
    return r1, 1.0


def _invert_increasing_cubic(c1, c2, c3, y):
    """Solve ``v*(c1 + v*(c2 + c3*v)) = y`` for ``v`` in ``[0, 1]``.

    The cubic must be nondecreasing on ``[0, 1]`` with value 0 at 0 and 1
    at 1. Newton steps are kept inside a shrinking bisection bracket, so
    the iteration cannot escape even where the derivative vanishes.
    """
    y = np.asarray(y, dtype=float)
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    v = np.clip(y, 0.0, 1.0)
    done = y <= 0.0
    v[done] = 0.0
    for _ in range(_MAX_SOLVER_ITER):
        active = ~done
        if not active.any():
            break
        va = v[active]
        g = va * (c1 + va * (c2 + c3 * va)) - y[active]
        dg = c1 + va * (2.0 * c2 + 3.0 * c3 * va)

        below = g < 0.0
        lo_a = np.where(below, va, lo[active])
        hi_a = np.where(below, hi[active], va)

        with np.errstate(divide="ignore", invalid="ignore"):
            newton = va - g / dg
        ok = (dg > 0.0) & (newton > lo_a) & (newton < hi_a)
        nxt = np.where(ok, newton, 0.5 * (lo_a + hi_a))

        width = hi_a - lo_a
        step = np.abs(nxt - va)
        tol = 4.0 * np.finfo(float).eps * np.abs(nxt) + 1e-300
        finished = (g == 0.0) | (step <= tol) | (width <= tol)
        nxt = np.where(g == 0.0, va, nxt)

        v[active] = nxt
        lo[active] = lo_a
        hi[active] = hi_a
        idx = np.flatnonzero(active)
        done[idx[finished]] = True
    if not done.all():
        raise RuntimeError("cubic inversion did not converge")
    return v


@dataclass(frozen=True)
class CtpDistribution:
    """Cubic-transmuted Pareto distribution.

    The default constructor refuses coefficient pairs whose mixing density
    dips below ``-EPS_VALIDITY``; :meth:`unchecked` skips that gate and is
    meant only for inspecting invalid fits.

    Examples
    --------
    >>> d = CtpDistribution.from_values(x0=1.0, alpha=1.0, delta1=0.0, delta2=0.0)
    >>> d.cdf(2.0)
    0.125
    """

    base: ParetoBase
    delta: DeltaCoefficients
    checked: bool = True
    validity: ValidityCertificate = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", _as_delta(self.delta))
        cert = validity_check(self.delta)
        object.__setattr__(self, "validity", cert)
        if self.checked and not cert.is_valid:
            raise InvalidDistributionError(cert)

    @classmethod
    def from_values(cls, x0, alpha, delta1, delta2):
        return cls(ParetoBase(x0, alpha), DeltaCoefficients(delta1, delta2))

    @classmethod
    def unchecked(cls, base: ParetoBase, delta) -> CtpDistribution:
        return cls(base, _as_delta(delta), checked=False)

    @property
    def x0(self) -> float:
        return self.base.x0

    @property
    def alpha(self) -> float:
        return self.base.alpha

    @property
    def is_valid(self) -> bool:
        return self.validity.is_valid

    def _baseline(self, x):
        """Return ``(x, above, u, t)`` with ``u`` clamped to ``[0, 1]``."""
        x = np.asarray(x, dtype=float)
        above = x >= self.x0
        with np.errstate(divide="ignore", invalid="ignore"):
            log_ratio = np.where(above, math.log(self.x0) - np.log(np.where(above, x, 1.0)), 0.0)
        log_ratio = np.minimum(log_ratio, 0.0)
        z = self.alpha * log_ratio
        u = np.exp(z)
        t = -np.expm1(z)
        return x, above, u, t

    @staticmethod
    def _out(arr):
        return float(arr) if np.ndim(arr) == 0 else arr

    def _require_valid(self):
        if not self.validity.is_valid:
            raise InvalidDistributionError(self.validity)

    def _lower_upper(self, u, t):
        """``(R(t), S(u))`` each taken from whichever side keeps it monotone in floating point.

        A cubic evaluated close to 1 wobbles by an ulp; ``1 - small`` does not.
        """
        d = self.delta
        a, b, c = d.survival_coefficients()
        r_t = t * (d.delta1 + t * (d.delta2 + d.delta3 * t))
        s_u = u * (a + u * (b + c * u))
        near_top = u <= 0.5
        return np.where(near_top, 1.0 - s_u, r_t), np.where(near_top, s_u, 1.0 - r_t)

    def cdf(self, x):
        x, above, u, t = self._baseline(x)
        val, _ = self._lower_upper(u, t)
        if self.checked:
            val = np.clip(val, 0.0, 1.0)
        return self._out(np.where(above, val, 0.0))

    def survival(self, x):
        x, above, u, t = self._baseline(x)
        _, val = self._lower_upper(u, t)
        if self.checked:
            val = np.clip(val, 0.0, 1.0)
        return self._out(np.where(above, val, 1.0))

    def pdf(self, x):
        x, above, u, t = self._baseline(x)
        d = self.delta
        r = d.delta1 + t * (2.0 * d.delta2 + 3.0 * d.delta3 * t)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.where(above, self.alpha / np.where(above, x, 1.0) * u * r, 0.0)
        return self._out(val)

    def logpdf(self, x):
        x, above, u, t = self._baseline(x)
        d = self.delta
        r = d.delta1 + t * (2.0 * d.delta2 + 3.0 * d.delta3 * t)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs = np.where(above, x, 1.0)
            log_u = self.alpha * np.minimum(math.log(self.x0) - np.log(xs), 0.0)
            val = math.log(self.alpha) - np.log(xs) + log_u + np.log(np.where(r > 0, r, np.nan))
            val = np.where(r > 0, val, -np.inf)
        return self._out(np.where(above, val, -np.inf))

    def hazard(self, x):
        """``pdf / survival``, evaluated in the cancelled form ``(alpha/x) r(t) / (a + b u + c u^2)``."""
        x, above, u, t = self._baseline(x)
        if np.any(above & (u == 0.0)):
            raise ValueError("survival underflows to 0; hazard is not computable here")
        d = self.delta
        a, b, c = d.survival_coefficients()
        r = d.delta1 + t * (2.0 * d.delta2 + 3.0 * d.delta3 * t)
        den = a + u * (b + c * u)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.where(above, self.alpha / np.where(above, x, 1.0) * r / den, 0.0)
        return self._out(val)

    def quantile(self, p):
        """Inverse cdf for ``p`` in ``[0, 1)``.

        The mixing cdf is inverted in ``t`` for ``p <= 1/2`` and the
        survival cubic in ``u`` above that, so both tails keep full
        relative precision.
        """
        self._require_valid()
        p = np.asarray(p, dtype=float)
        if np.any(~((p >= 0.0) & (p < 1.0))):
            raise ValueError("p must lie in [0, 1)")
        flat = np.atleast_1d(p).ravel()
        out = np.empty_like(flat)
        lower = flat <= 0.5
        d = self.delta
        if lower.any():
            t = _invert_increasing_cubic(d.delta1, d.delta2, d.delta3, flat[lower])
            out[lower] = self.x0 * np.exp(-np.log1p(-t) / self.alpha)
        if (~lower).any():
            a, b, c = d.survival_coefficients()
            u = _invert_increasing_cubic(a, b, c, 1.0 - flat[~lower])
            out[~lower] = self.x0 * np.exp(-np.log(u) / self.alpha)
        return self._out(out.reshape(p.shape))

    def inverse_survival(self, q):
        """Inverse of :meth:`survival` for ``q`` in ``(0, 1]``."""
        self._require_valid()
        q = np.asarray(q, dtype=float)
        if np.any(~((q > 0.0) & (q <= 1.0))):
            raise ValueError("q must lie in (0, 1]")
        flat = np.atleast_1d(q).ravel()
        out = np.empty_like(flat)
        upper = flat <= 0.5
        d = self.delta
        if upper.any():
            a, b, c = d.survival_coefficients()
            u = _invert_increasing_cubic(a, b, c, flat[upper])
            out[upper] = self.x0 * np.exp(-np.log(u) / self.alpha)
        if (~upper).any():
            t = _invert_increasing_cubic(d.delta1, d.delta2, d.delta3, 1.0 - flat[~upper])
            out[~upper] = self.x0 * np.exp(-np.log1p(-t) / self.alpha)
        return self._out(out.reshape(q.shape))

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        """Draw ``n`` values by inverse transform of seeded uniforms."""
        self._require_valid()
        if n < 0:
            raise ValueError("n must be >= 0")
        rng = np.random.default_rng(seed)
        if n == 0:
            return np.empty(0)
        return np.atleast_1d(self.quantile(rng.random(n)))
