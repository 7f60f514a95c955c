"""Liouville/Moebius neighboring-value statistics: sieve, storage, correlation
sums, chi-square independence tests, h-sweep regressions, and Euler-product
baselines."""

from ._core import (
    CHI_SQUARE_REJECT_95,
    SQRT_DECADE_RATE,
    SQUARE_FREE_DENSITY,
    ChiSquareResult,
    ConditionalExpectations,
    ContingencyTable,
    CorrelationRecord,
    EulerProductValue,
    FactorSignTable,
    Mode,
    NValues,
    SweepSummary,
    chi_square,
    conditional_expectations,
    conditional_identity_residual,
    conditional_squarefree_density,
    contingency,
    contingency_series,
    correlation,
    correlation_series,
    decade_decay_ratios,
    empirical_pair_density,
    euler_product_A,
    factor_oracle,
    file_size_for,
    load_file,
    mode_from_string,
    residue_class_count,
    save_file,
    sieve_range,
    summarize,
    summatory,
    summatory_series,
    sweep,
)
from ._core import __version__

__all__ = [
    "CHI_SQUARE_REJECT_95",
    "SQRT_DECADE_RATE",
    "SQUARE_FREE_DENSITY",
    "ChiSquareResult",
    "ConditionalExpectations",
    "ContingencyTable",
    "CorrelationRecord",
    "EulerProductValue",
    "FactorSignTable",
    "Mode",
    "NValues",
    "SweepSummary",
    "__version__",
    "chi_square",
    "conditional_expectations",
    "conditional_identity_residual",
    "conditional_squarefree_density",
    "contingency",
    "contingency_series",
    "correlation",
    "correlation_series",
    "decade_decay_ratios",
    "empirical_pair_density",
    "euler_product_A",
    "factor_oracle",
    "file_size_for",
    "load_file",
    "mode_from_string",
    "residue_class_count",
    "save_file",
    "sieve_range",
    "summarize",
    "summatory",
    "summatory_series",
    "sweep",
]
