"""mirrordde: a mirrored-time delay model of journal influence.

The package models the influence p(t) of a journal through the delay
relation p'(t) = a p(-t) + b p(t), provides closed-form solutions with an
independent Runge-Kutta oracle, recovers coefficients from sampled series
by least squares, and ranks journals from scientometric feature tables by
recursive l1-guided elimination.
"""

from .core import (
    ControlConfig,
    DdeParams,
    EtaArticleBased,
    EtaTimeExponential,
    FeatureMatrix,
    InfluenceSeries,
    ModeCoefficients,
    RankingEntry,
    RankingResult,
    Regime,
    RegimeTag,
    ThetaConstant,
    ThetaExponential,
    ThetaLinear,
    validate_series,
)
from .errors import (
    AsymmetricGrid,
    ConvergenceFailure,
    DegenerateSystem,
    DimensionMismatch,
    MirrorDdeError,
    NegativeInfluenceWarning,
    NonFiniteState,
    NonFiniteValue,
    NonPositiveR,
    NonUniformGrid,
    OutOfRange,
    ResonantForcing,
    SingularSystem,
    TooShort,
    UnknownResponseFeature,
    WrongRegime,
    ZeroCoefficient,
    ZeroVarianceColumn,
)
from .fitting import FitReport, fit_ab, fit_modes, fit_pipeline, modes_to_AB
from .numerics import (
    DenseMatrix,
    FdMode,
    finite_diff,
    lasso_fit,
    rk4_integrate,
    solve_2x2,
    svd_values,
)
from .ranking import EliminationTrace, TraceStep, rank_journals, standardize
from .solver import (
    GrowthKind,
    OscillatoryValue,
    SolutionSample,
    base_solution,
    classify,
    control_solution,
    degenerate_solution,
    eta_article,
    initial_conditions_to_modes,
    linear_growth_solution,
    nonsymmetric_solution,
    oracle_solution,
    oscillatory_solution,
)

__version__ = "1.0.0"

__all__ = [
    "AsymmetricGrid",
    "ControlConfig",
    "ConvergenceFailure",
    "DdeParams",
    "DegenerateSystem",
    "DenseMatrix",
    "DimensionMismatch",
    "EliminationTrace",
    "EtaArticleBased",
    "EtaTimeExponential",
    "FdMode",
    "FeatureMatrix",
    "FitReport",
    "GrowthKind",
    "InfluenceSeries",
    "MirrorDdeError",
    "ModeCoefficients",
    "NegativeInfluenceWarning",
    "NonFiniteState",
    "NonFiniteValue",
    "NonPositiveR",
    "NonUniformGrid",
    "OscillatoryValue",
    "OutOfRange",
    "RankingEntry",
    "RankingResult",
    "Regime",
    "RegimeTag",
    "ResonantForcing",
    "SingularSystem",
    "SolutionSample",
    "ThetaConstant",
    "ThetaExponential",
    "ThetaLinear",
    "TooShort",
    "TraceStep",
    "UnknownResponseFeature",
    "WrongRegime",
    "ZeroCoefficient",
    "ZeroVarianceColumn",
    "base_solution",
    "classify",
    "control_solution",
    "degenerate_solution",
    "eta_article",
    "finite_diff",
    "fit_ab",
    "fit_modes",
    "fit_pipeline",
    "initial_conditions_to_modes",
    "lasso_fit",
    "linear_growth_solution",
    "modes_to_AB",
    "nonsymmetric_solution",
    "oracle_solution",
    "oscillatory_solution",
    "rank_journals",
    "rk4_integrate",
    "solve_2x2",
    "standardize",
    "svd_values",
    "validate_series",
    "__version__",
]
