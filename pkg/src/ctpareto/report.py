"""JSON fit reports and ranked criterion tables."""

from __future__ import annotations

import dataclasses
import datetime as _dt
import json
from dataclasses import dataclass, field

from .estimation import CRITERIA, FitConfig, FitFailure, FitResult, rank_models
from .families import get_family

__all__ = ["FitReport", "build_report", "format_table"]


def _fit_entry(f) -> dict:
    spec = get_family(f.family)
    if isinstance(f, FitFailure):
        return {"family": spec.id.value, "label": spec.label, "failed": True, "message": f.message}
    return {
        "family": spec.id.value,
        "label": spec.label,
        "failed": False,
        "x0_hat": f.x0_hat,
        "alpha_hat": f.alpha_hat,
        "params_hat": dict(zip(spec.param_names, f.params_hat.values)),
        "delta": [f.delta.delta1, f.delta.delta2],
        "loglik": f.loglik,
        "p": f.p,
        "aic": f.aic,
        "aicc": f.aicc,
        "bic": f.bic,
        "converged": f.converged,
        "boundary_active": f.boundary_active,
        "valid": f.valid,
        "n_starts_used": f.n_starts_used,
        "display": {
            "negloglik": f"{-f.loglik:.3f}",
            "aic": f"{f.aic:.3f}",
            "aicc": f"{f.aicc:.3f}",
            "bic": f"{f.bic:.3f}",
            "alpha_hat": f"{f.alpha_hat:.3f}",
        },
    }


@dataclass
class FitReport:
    """Plain-data report; ``from_dict(to_dict())`` reproduces the report."""

    dataset: dict
    fits: list[dict]
    rankings: dict[str, list[dict]]
    config: dict
    version: str
    timestamp: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> FitReport:
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> FitReport:
        return cls.from_dict(json.loads(text))

    @property
    def all_converged(self) -> bool:
        return all(not f["failed"] and f["converged"] for f in self.fits)


def build_report(dataset_name, sample, summary, fits, config: FitConfig, timestamp=True) -> FitReport:
    from . import __version__

    rankings = {
        crit: [
            {"rank": r, "family": f.family.value, "value": f.criterion(crit)}
            for r, f in rank_models(fits, crit)
        ]
        for crit in CRITERIA
    }
    ts = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return FitReport(
        dataset={
            "name": dataset_name,
            "n": sample.n,
            "x0_hat": sample.x0_hat,
            "summary": dict(summary._asdict()),
        },
        fits=[_fit_entry(f) for f in fits],
        rankings=rankings,
        config=dataclasses.asdict(config),
        version=__version__,
        timestamp=ts,
    )


def format_table(report: FitReport) -> str:
    """Four-criterion table with ranks in parentheses, in ``-logL`` order."""
    ranks = {
        crit: {row["family"]: row["rank"] for row in report.rankings[crit]} for crit in CRITERIA
    }
    order = [row["family"] for row in report.rankings["negloglik"]]
    by_family = {f["family"]: f for f in report.fits}
    lines = [f"{'Distribution':<14}{'-logL':>16}{'AIC':>16}{'AICC':>16}{'BIC':>16}"]
    for fam in order:
        f = by_family[fam]
        cells = [f"{f['display'][c]}({ranks[c][fam]})" for c in CRITERIA]
        lines.append(f"{f['label']:<14}" + "".join(f"{c:>16}" for c in cells))
    for f in report.fits:
        if f["failed"]:
            lines.append(f"{f['label']:<14}  FAILED: {f['message']}")
    return "\n".join(lines)
