"""Field realizations on regular grids."""

from nodal_nesting.sampler.grid import (
    GridSpec,
    GridTooCoarse,
    IncompatiblePeriodicity,
    SamplerError,
    auto_spacing,
    check_grid,
    common_auto_spacing,
    max_spacing,
)
from nodal_nesting.sampler.dump import read_field, write_field
from nodal_nesting.sampler.synthesis import FieldSample, sample_field, superpose
from nodal_nesting.sampler.validation import (
    CovarianceLagCheck,
    CovarianceReport,
    default_lags,
    validate_covariance,
)

__all__ = [
    "CovarianceLagCheck",
    "CovarianceReport",
    "FieldSample",
    "GridSpec",
    "GridTooCoarse",
    "IncompatiblePeriodicity",
    "SamplerError",
    "auto_spacing",
    "check_grid",
    "common_auto_spacing",
    "default_lags",
    "max_spacing",
    "read_field",
    "sample_field",
    "superpose",
    "validate_covariance",
    "write_field",
]
