"""Cubic-transmuted Pareto distributions: evaluation, moments, sampling and
constrained maximum-likelihood comparison of the named parameterizations."""

from .core import (
    CtpDistribution,
    DeltaCoefficients,
    InvalidDistributionError,
    ParetoBase,
    ValidityCertificate,
    mixing_cdf,
    mixing_pdf,
    validity_check,
)
from .datasets import DatasetSource, describe, load_wheaton
from .estimation import (
    FitConfig,
    FitFailure,
    FitResult,
    Sample,
    criteria,
    fit,
    fit_many,
    log_likelihood,
    pareto_alpha_closed_form,
    rank_groups,
    rank_models,
)
from .families import (
    FAMILIES,
    MODIFIED_SET,
    ORIGINAL_SET,
    FamilyId,
    FamilyParams,
    from_delta,
    get_family,
    region_contains,
    region_sample,
    to_delta,
)
from .moments import MomentDoesNotExist, cf_partial, mean, mgf_partial, raw_moment, variance

__version__ = "0.1.0"
