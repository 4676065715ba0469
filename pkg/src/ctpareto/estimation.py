"""Constrained maximum-likelihood fitting, information criteria and ranking."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import EPS_VALIDITY, DeltaCoefficients, min_mixing_pdf, validity_check
from .families import FamilyId, FamilyParams, FamilySpec, get_family, to_delta

__all__ = [
    "Sample",
    "FitConfig",
    "FitResult",
    "FitFailure",
    "log_likelihood",
    "pareto_alpha_closed_form",
    "criteria",
    "fit",
    "fit_many",
    "rank_models",
    "rank_groups",
    "CRITERIA",
]

log = logging.getLogger(__name__)

CRITERIA = ("negloglik", "aic", "aicc", "bic")
TIE_TOL = 1e-6
_SCREEN_FATOL = 1e-5
_SCREEN_XATOL = 1e-4
_N_POLISH = 5


class Sample:
    """Positive observations with the scale estimate ``x0_hat = min(values)``."""

    def __init__(self, values):
        values = np.asarray(values, dtype=float).ravel()
        if values.size < 2:
            raise ValueError("a sample needs at least 2 observations")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValueError("sample values must be finite and > 0")
        self.values = values
        self.n = values.size
        self.x0_hat = float(values.min())
        # log(x0/x_i) <= 0, shared by every likelihood evaluation
        self.log_ratio = np.log(self.x0_hat) - np.log(values)
        self.sum_log_x = float(np.log(values).sum())

    def __repr__(self):
        return f"Sample(n={self.n}, x0_hat={self.x0_hat})"


@dataclass
class FitConfig:
    n_starts: int = 200
    max_iterations: int = 2000
    tol_objective: float = 1e-10
    tol_params: float = 1e-9
    seed: int = 42
    penalty_scale: float = 1e8
    # False reproduces fits that ignore the mixing-density sign condition
    require_valid: bool = True

    def __post_init__(self):
        for name in ("n_starts", "max_iterations", "tol_objective", "tol_params", "penalty_scale"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class FitResult:
    family: FamilyId
    alpha_hat: float
    params_hat: FamilyParams
    x0_hat: float
    loglik: float
    p: int
    n: int
    aic: float
    aicc: float
    bic: float
    converged: bool
    n_starts_used: int
    boundary_active: bool
    delta: DeltaCoefficients = field(repr=False)
    valid: bool = True

    @property
    def negloglik(self) -> float:
        return -self.loglik

    @property
    def label(self) -> str:
        return get_family(self.family).label

    def criterion(self, name: str) -> float:
        if name not in CRITERIA:
            raise ValueError(f"unknown criterion {name!r}")
        return getattr(self, name)

    def distribution(self):
        from .core import CtpDistribution, ParetoBase

        base = ParetoBase(self.x0_hat, self.alpha_hat)
        if self.valid:
            return CtpDistribution(base, self.delta)
        return CtpDistribution.unchecked(base, self.delta)


@dataclass
class FitFailure:
    family: FamilyId
    message: str


def _as_sample(sample) -> Sample:
    return sample if isinstance(sample, Sample) else Sample(sample)


def _delta_loglik(alpha: float, d1: float, d2: float, sample: Sample) -> float:
    # log f = log(alpha) - log(x) + alpha*log(x0/x) + log(bracket(u))
    z = alpha * sample.log_ratio
    u = np.exp(z)
    bracket = (3.0 - 2.0 * d1 - d2) + u * ((6.0 * d1 + 4.0 * d2 - 6.0) + (3.0 - 3.0 * d1 - 3.0 * d2) * u)
    if np.any(bracket <= 0.0):
        return -math.inf
    return float(
        sample.n * math.log(alpha) - sample.sum_log_x + z.sum() + np.log(bracket).sum()
    )


def log_likelihood(family, alpha: float, params, sample, check_validity: bool = True) -> float:
    """Log-likelihood with ``x0`` fixed at the sample minimum.

    Returns ``-inf`` when some density term is non-positive, and also when
    ``check_validity`` is set and the coefficients fail the validity check.
    Region membership of ``params`` is not checked here.
    """
    sample = _as_sample(sample)
    if not alpha > 0:
        return -math.inf
    delta = to_delta(family, params)
    if check_validity and not validity_check(delta).is_valid:
        return -math.inf
    return _delta_loglik(float(alpha), delta.delta1, delta.delta2, sample)


def pareto_alpha_closed_form(sample) -> float:
    """Pareto shape MLE ``n / sum(log(x_i / x0_hat))``."""
    sample = _as_sample(sample)
    s = -float(sample.log_ratio.sum())
    if s <= 0.0:
        raise ValueError("all observations equal the sample minimum; alpha is not identifiable")
    return sample.n / s


def criteria(loglik: float, p: int, n: int) -> tuple[float, float, float]:
    """Return ``(AIC, AICc, BIC)``."""
    if n <= p + 1:
        raise ValueError(f"AICc needs n > p + 1 (n={n}, p={p})")
    aic = -2.0 * loglik + 2.0 * p
    aicc = aic + 2.0 * p * (p + 1) / (n - p - 1)
    bic = -2.0 * loglik + p * math.log(n)
    return aic, aicc, bic


def _make_result(spec, alpha, theta, sample, converged, n_starts_used, valid=True) -> FitResult:
    delta = DeltaCoefficients(*spec.delta_map(theta))
    ll = _delta_loglik(alpha, delta.delta1, delta.delta2, sample)
    p = spec.n_free
    aic, aicc, bic = criteria(ll, p, sample.n)
    active = spec.region.active(theta) if spec.region is not None else False
    return FitResult(
        family=spec.id,
        alpha_hat=float(alpha),
        params_hat=FamilyParams(tuple(theta)),
        x0_hat=sample.x0_hat,
        loglik=ll,
        p=p,
        n=sample.n,
        aic=aic,
        aicc=aicc,
        bic=bic,
        converged=converged,
        n_starts_used=n_starts_used,
        boundary_active=active,
        delta=delta,
        valid=valid,
    )


class _Objective:
    """Penalized negative log-likelihood over ``z = (log alpha, theta)``.

    Coordinates are projected onto the region before evaluation and the
    squared projection distance is charged at ``penalty_scale``, so the
    minimizer can sit exactly on a face. Invalid coefficients and
    non-positive densities return a large finite barrier.
    """

    def __init__(self, spec: FamilySpec, sample: Sample, config: FitConfig):
        self.spec = spec
        self.sample = sample
        self.config = config
        self.barrier = config.penalty_scale

    def split(self, z):
        alpha = math.exp(min(z[0], 700.0))
        theta = self.spec.region.project(z[1:])
        return alpha, theta

    def __call__(self, z) -> float:
        alpha, theta = self.split(z)
        dist2 = float(np.sum((np.asarray(z[1:]) - theta) ** 2))
        penalty = self.config.penalty_scale * dist2
        d1, d2 = self.spec.delta_map(theta)
        if self.config.require_valid:
            rmin, _ = min_mixing_pdf(d1, d2)
            if rmin < -EPS_VALIDITY:
                return self.barrier * (1.0 - rmin) + penalty
        ll = _delta_loglik(alpha, d1, d2, self.sample)
        if not math.isfinite(ll):
            return self.barrier * 2.0 + penalty
        return -ll + penalty


def _starts(spec: FamilySpec, sample: Sample, config: FitConfig, objective: _Objective) -> np.ndarray:
    alpha0 = pareto_alpha_closed_form(sample)
    rng = np.random.default_rng(config.seed)
    starts = [np.r_[math.log(alpha0), spec.identity]]
    need = config.n_starts - 1
    attempts = 0
    while need > 0 and attempts < 50:
        attempts += 1
        thetas = spec.region.sample(max(need, 8), rng)
        log_alphas = math.log(alpha0) + rng.uniform(-1.5, 1.5, size=len(thetas))
        for la, th in zip(log_alphas, thetas):
            z = np.r_[la, th]
            if objective(z) < objective.barrier:
                starts.append(z)
                need -= 1
                if need == 0:
                    break
    return np.array(starts)


def _simplex(spec: FamilySpec, z0: np.ndarray) -> np.ndarray:
    steps = np.r_[0.25, 0.1 * (spec.region.upper - spec.region.lower)]
    simplex = [z0]
    for i, s in enumerate(steps):
        z = z0.copy()
        z[i] += s
        simplex.append(z)
    return np.array(simplex)


def _nelder_mead(objective, z0, spec, config, fatol=None, xatol=None):
    return minimize(
        objective,
        z0,
        method="Nelder-Mead",
        options={
            "maxiter": config.max_iterations,
            "xatol": config.tol_params if xatol is None else xatol,
            "fatol": config.tol_objective if fatol is None else fatol,
            "initial_simplex": _simplex(spec, z0),
            "adaptive": len(z0) > 2,
        },
    )


def fit(family, sample, config: FitConfig | None = None) -> FitResult:
    """Multi-start constrained maximum-likelihood fit of one family.

    The scale is fixed at the sample minimum. Starts are the Pareto
    closed-form shape at the family's identity point plus seeded draws from
    the region. Every start runs a loose penalized Nelder-Mead search; the
    best few terminal points are then restarted at the configured
    tolerances and the best polished point wins. The returned point always
    lies in the region and, unless ``config.require_valid`` is False, has a
    nonnegative mixing density.

    Examples
    --------
    >>> from ctpareto.datasets import load_wheaton
    >>> res = fit("pareto", load_wheaton())
    >>> round(res.alpha_hat, 3), round(-res.loglik, 3)
    (0.244, 303.064)
    """
    spec = get_family(family)
    sample = _as_sample(sample)
    config = config or FitConfig()

    if spec.region is None:
        alpha = pareto_alpha_closed_form(sample)
        return _make_result(spec, alpha, np.empty(0), sample, True, 1)

    objective = _Objective(spec, sample, config)
    starts = _starts(spec, sample, config, objective)

    # screening pass at loose tolerance; only the best few are polished
    screened = []
    for i, z0 in enumerate(starts):
        start_val = objective(z0)
        res = _nelder_mead(objective, z0, spec, config, fatol=_SCREEN_FATOL, xatol=_SCREEN_XATOL)
        z, val = (res.x, res.fun) if res.fun <= start_val else (z0, start_val)
        screened.append((val, i, z))
    screened.sort(key=lambda item: (item[0], item[1]))

    best_val, best_z, best_ok = math.inf, None, False
    for val, _, z in screened[:_N_POLISH]:
        ok = False
        for _ in range(2):
            res = _nelder_mead(objective, z, spec, config)
            ok = bool(res.success)
            if res.fun > val:
                break
            improved = val - res.fun
            z, val = res.x, res.fun
            if improved <= config.tol_objective:
                break
        # strict improvement only: ties keep the earlier candidate
        if val < best_val:
            best_val, best_z, best_ok = val, z, ok
    if best_z is None:
        best_val, _, best_z = screened[0]

    alpha, theta = objective.split(best_z)
    valid = validity_check(spec.delta_map(theta)).is_valid
    if config.require_valid and not valid:
        raise RuntimeError(f"{spec.label}: optimizer returned an invalid distribution")
    converged = best_ok
    result = _make_result(spec, alpha, theta, sample, converged, len(starts), valid)
    if not spec.region.contains(result.params_hat.as_array()):
        raise RuntimeError(f"{spec.label}: optimizer left the parameter region")
    log.debug("%s: -loglik=%.6f alpha=%.6f theta=%s", spec.label, -result.loglik, alpha, theta)
    return result


def fit_many(families: Iterable, sample, config: FitConfig | None = None) -> list[FitResult | FitFailure]:
    """Fit each family in order; a failing family yields a :class:`FitFailure`."""
    sample = _as_sample(sample)
    out = []
    for fam in families:
        spec = get_family(fam)
        try:
            out.append(fit(spec, sample, config))
        except (ValueError, RuntimeError) as exc:
            log.warning("fit of %s failed: %s", spec.label, exc)
            out.append(FitFailure(spec.id, str(exc)))
    return out


def rank_models(fits: Sequence, criterion: str = "negloglik") -> list[tuple[int, FitResult]]:
    """Sort ascending by ``criterion``; values within 1e-6 of a group's first member share its rank.

    :class:`FitFailure` entries are skipped.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")
    ok = [f for f in fits if isinstance(f, FitResult)]
    ordered = sorted(ok, key=lambda f: f.criterion(criterion))
    ranked = []
    head_value, head_rank = None, 0
    for pos, f in enumerate(ordered, start=1):
        v = f.criterion(criterion)
        if head_value is None or v - head_value > TIE_TOL:
            head_value, head_rank = v, pos
        ranked.append((head_rank, f))
    return ranked


def rank_groups(
    groups: Mapping[str, Sequence[float]],
    families: Iterable,
    config: FitConfig | None = None,
    criterion: str = "negloglik",
) -> dict[str, dict[FamilyId, int]]:
    """Fit every family on every group and rank them within each group."""
    families = [get_family(f).id for f in families]
    table = {}
    for name, values in groups.items():
        fits = fit_many(families, values, config)
        table[name] = {f.family: r for r, f in rank_models(fits, criterion)}
    return table
