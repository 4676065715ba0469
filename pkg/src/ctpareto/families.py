"""Named cubic-transmutation parameterizations and their feasible regions.

Each family is an affine map from its own coordinates (``lambda``,
``(lambda1, lambda2)`` or ``(lambda, eta)``) into delta space, restricted
to a closed polytope ``{theta : A @ theta >= b}``.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .core import DeltaCoefficients

__all__ = [
    "FamilyId",
    "FamilyParams",
    "ParamRegion",
    "FamilySpec",
    "FAMILIES",
    "ORIGINAL_SET",
    "MODIFIED_SET",
    "get_family",
    "to_delta",
    "from_delta",
    "region_contains",
    "region_sample",
]

REGION_TOL = 1e-12
_CURVE_TOL = 1e-12


class FamilyId(str, enum.Enum):
    G = "g"
    MG = "mg"
    A = "a"
    MA = "ma"
    R18A = "r18a"
    MR18A = "mr18a"
    R18B = "r18b"
    MR18B = "mr18b"
    R19 = "r19"
    MR19 = "mr19"
    R23 = "r23"
    TP = "tp"
    PARETO = "pareto"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FamilyParams:
    """Family coordinates. ``unique`` is False when the inverse map had to
    pick one representative out of several (R23 at ``lambda == 0``)."""

    values: tuple[float, ...]
    unique: bool = True

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


class ParamRegion:
    """Closed polytope ``A @ theta >= b`` with an explicit bounding box."""

    def __init__(self, A, b, lower, upper):
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.b = np.asarray(b, dtype=float)
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self._row_norms = (self.A**2).sum(axis=1)
        self._vertices = None
        if not len(self.vertices()):
            raise ValueError("empty parameter region")

    @classmethod
    def from_bounds(cls, bounds, sum_bounds=None):
        """Box ``bounds`` per coordinate, optionally intersected with ``lo <= sum(theta) <= hi``."""
        dim = len(bounds)
        rows, rhs = [], []
        for i, (lo, hi) in enumerate(bounds):
            e = np.zeros(dim)
            e[i] = 1.0
            rows += [e, -e]
            rhs += [lo, -hi]
        if sum_bounds is not None:
            lo, hi = sum_bounds
            rows += [np.ones(dim), -np.ones(dim)]
            rhs += [lo, -hi]
        lower = [lo for lo, _ in bounds]
        upper = [hi for _, hi in bounds]
        return cls(np.array(rows), np.array(rhs), lower, upper)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def slack(self, theta) -> np.ndarray:
        return self.A @ np.asarray(theta, dtype=float) - self.b

    def contains(self, theta, tol: float = REGION_TOL) -> bool:
        return bool(np.all(self.slack(theta) >= -tol))

    def active(self, theta, tol: float = 1e-6) -> bool:
        """True if any inequality is tight within ``tol``."""
        return bool(np.any(np.abs(self.slack(theta)) <= tol))

    def vertices(self) -> np.ndarray:
        if self._vertices is None:
            pts = []
            for rows in itertools.combinations(range(len(self.b)), self.dim):
                M = self.A[list(rows)]
                if abs(np.linalg.det(M)) < 1e-14:
                    continue
                v = np.linalg.solve(M, self.b[list(rows)])
                if self.contains(v, 1e-9):
                    pts.append(v)
            self._vertices = np.unique(np.round(np.array(pts), 12), axis=0) if pts else np.empty((0, self.dim))
        return self._vertices

    def project(self, theta) -> np.ndarray:
        """Euclidean projection onto the region (exact for dimension <= 2)."""
        theta = np.asarray(theta, dtype=float)
        s = self.A @ theta - self.b
        if s.min() >= 0.0:
            return theta.copy()
        # feet of perpendiculars on every supporting hyperplane, plus vertices
        feet = theta - (s / self._row_norms)[:, None] * self.A
        cand = np.vstack([feet, self._vertices])
        ok = np.all(cand @ self.A.T - self.b >= -1e-12, axis=1)
        cand = cand[ok]
        best = cand[np.argmin(((cand - theta) ** 2).sum(axis=1))]
        # snap onto the box so downstream membership checks pass exactly
        return np.clip(best, self.lower, self.upper)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        out = np.empty((0, self.dim))
        while len(out) < n:
            batch = rng.uniform(self.lower, self.upper, size=(max(2 * (n - len(out)), 16), self.dim))
            keep = np.all(batch @ self.A.T - self.b >= 0.0, axis=1)
            out = np.vstack([out, batch[keep]])
        return out[:n]


@dataclass(frozen=True)
class FamilySpec:
    id: FamilyId
    label: str
    param_names: tuple[str, ...]
    region: ParamRegion | None
    identity: tuple[float, ...]
    delta_map: Callable[[np.ndarray], tuple[float, float]]
    inverse_map: Callable[[DeltaCoefficients], FamilyParams | None]
    modified: bool = False

    @property
    def dim(self) -> int:
        return len(self.param_names)

    @property
    def n_free(self) -> int:
        """Free parameters counted by the information criteria (alpha + coordinates)."""
        return 1 + self.dim


def _close(a, b):
    return abs(a - b) <= _CURVE_TOL * max(1.0, abs(a), abs(b))


def _inv_g(d):
    return FamilyParams((d.delta1, d.delta1 + d.delta2))


def _inv_r18a(d):
    return FamilyParams((d.delta1 - 1.0, d.delta1 + d.delta2 - 1.0))


def _inv_r18b(d):
    return FamilyParams((d.delta1 - 1.0 - d.delta3, d.delta3))


def _inv_r23(d):
    lam = 2.0 * d.delta1 + d.delta2 - 2.0
    prod = d.delta1 + d.delta2 - 1.0
    if abs(lam) <= _CURVE_TOL:
        if abs(prod) <= _CURVE_TOL:
            return FamilyParams((0.0, 0.0), unique=False)
        return None
    return FamilyParams((lam, prod / lam))


def _inv_a(d):
    lam = d.delta1 - 1.0
    return FamilyParams((lam,)) if _close(d.delta2, -2.0 * lam) else None


def _inv_r19(d):
    lam = 1.0 - d.delta1
    return FamilyParams((lam,)) if _close(d.delta2, 3.0 * lam) else None


def _inv_tp(d):
    lam = d.delta1 - 1.0
    return FamilyParams((lam,)) if _close(d.delta2, -lam) else None


def _inv_pareto(d):
    return FamilyParams(()) if _close(d.delta1, 1.0) and _close(d.delta2, 0.0) else None


def _g(th):
    return th[0], th[1] - th[0]


def _a(th):
    return 1.0 + th[0], -2.0 * th[0]


def _r18a(th):
    return 1.0 + th[0], th[1] - th[0]


def _r18b(th):
    return 1.0 + th[0] + th[1], -th[0] - 2.0 * th[1]


def _r19(th):
    return 1.0 - th[0], 3.0 * th[0]


def _r23(th):
    lam, eta = th
    return 1.0 + lam - lam * eta, 2.0 * lam * eta - lam


def _tp(th):
    return 1.0 + th[0], -th[0]


def _pareto(th):
    return 1.0, 0.0


_L12 = ("lambda1", "lambda2")
_L = ("lambda",)
_R = ParamRegion.from_bounds

FAMILIES: dict[FamilyId, FamilySpec] = {
    s.id: s
    for s in [
        FamilySpec(FamilyId.G, "CTP_G", _L12, _R([(0, 1), (-1, 1)]), (1.0, 1.0), _g, _inv_g),
        FamilySpec(FamilyId.MG, "CTP_MG", _L12, _R([(0, 3), (0, 3)], (0, 3)), (1.0, 1.0), _g, _inv_g, True),
        FamilySpec(FamilyId.A, "CTP_A", _L, _R([(-1, 1)]), (0.0,), _a, _inv_a),
        FamilySpec(FamilyId.MA, "CTP_MA", _L, _R([(-1, 3)]), (0.0,), _a, _inv_a, True),
        FamilySpec(FamilyId.R18A, "CTP_R18a", _L12, _R([(-1, 1), (-1, 1)], (-2, 1)), (0.0, 0.0), _r18a, _inv_r18a),
        FamilySpec(FamilyId.MR18A, "CTP_MR18a", _L12, _R([(-1, 2), (-1, 2)], (-2, 1)), (0.0, 0.0), _r18a, _inv_r18a, True),
        FamilySpec(FamilyId.R18B, "CTP_R18b", _L12, _R([(-1, 1), (0, 1)]), (0.0, 0.0), _r18b, _inv_r18b),
        FamilySpec(FamilyId.MR18B, "CTP_MR18b", _L12, _R([(-2, 1), (-2, 1)], (-1, 2)), (0.0, 0.0), _r18b, _inv_r18b, True),
        FamilySpec(FamilyId.R19, "CTP_R19", _L, _R([(-1, 1)]), (0.0,), _r19, _inv_r19),
        FamilySpec(FamilyId.MR19, "CTP_MR19", _L, _R([(-2, 1)]), (0.0,), _r19, _inv_r19, True),
        FamilySpec(FamilyId.R23, "CTP_R23", ("lambda", "eta"), _R([(-1, 1), (0, 2)]), (0.0, 1.0), _r23, _inv_r23),
        FamilySpec(FamilyId.TP, "TP", _L, _R([(-1, 1)]), (0.0,), _tp, _inv_tp),
        FamilySpec(FamilyId.PARETO, "Pareto", (), None, (), _pareto, _inv_pareto),
    ]
}

ORIGINAL_SET = (
    FamilyId.G, FamilyId.A, FamilyId.R18A, FamilyId.R18B,
    FamilyId.R19, FamilyId.R23, FamilyId.TP, FamilyId.PARETO,
)
MODIFIED_SET = (
    FamilyId.MG, FamilyId.MA, FamilyId.MR18A, FamilyId.MR18B,
    FamilyId.MR19, FamilyId.R23, FamilyId.TP, FamilyId.PARETO,
)


def get_family(family) -> FamilySpec:
    if isinstance(family, FamilySpec):
        return family
    try:
        return FAMILIES[FamilyId(str(family).lower())]
    except ValueError:
        raise ValueError(
            f"unknown family {family!r}; expected one of {', '.join(f.value for f in FamilyId)}"
        ) from None


def _coords(spec: FamilySpec, params) -> np.ndarray:
    if isinstance(params, (int, float, np.floating)):
        params = (params,)
    theta = np.asarray(tuple(params) if params is not None else (), dtype=float).ravel()
    if theta.size != spec.dim:
        raise ValueError(f"{spec.label} takes {spec.dim} parameter(s), got {theta.size}")
    return theta


def to_delta(family, params) -> DeltaCoefficients:
    spec = get_family(family)
    theta = _coords(spec, params)
    return DeltaCoefficients(*spec.delta_map(theta))


def from_delta(family, delta) -> FamilyParams | None:
    """Family coordinates of ``delta``, or None when it is off the family's image."""
    spec = get_family(family)
    if not isinstance(delta, DeltaCoefficients):
        delta = DeltaCoefficients(*delta)
    return spec.inverse_map(delta)


def region_contains(family, params, tol: float = REGION_TOL) -> bool:
    spec = get_family(family)
    theta = _coords(spec, params)
    if spec.region is None:
        return True
    return spec.region.contains(theta, tol)


def region_sample(family, n: int, seed: int | None = None) -> np.ndarray:
    """``n`` points drawn uniformly from the family region, shape ``(n, dim)``."""
    spec = get_family(family)
    if n < 0:
        raise ValueError("n must be >= 0")
    if spec.region is None:
        return np.empty((n, 0))
    return spec.region.sample(n, np.random.default_rng(seed))
