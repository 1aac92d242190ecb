"""Variation-independent parameterizations of binary-outcome effect measures.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._vipar import (
    Bracket,
    BracketSignError,
    DgpConfig,
    EffectVector,
    FitConfig,
    FitResult,
    GopRegressionModel,
    L0Distribution,
    ProbTable,
    RiskPair,
    RootResult,
    RrOpFitResult,
    RrOpRegressionModel,
    SimRow,
    SolverConfig,
    SolverError,
    SweepReport,
    TargetPair,
    check_rr_sr_feasible,
    effects_at,
    fit_gop,
    fit_rr_op,
    forward_gop,
    forward_rr_op,
    gop_bracket,
    gop_residual,
    inverse_gop,
    inverse_gop_traced,
    inverse_rr_op,
    inverse_rr_op_traced,
    neg_log_lik,
    predict,
    rbc_region,
    rbc_risk,
    simulate_dataset,
    sweep_gop_independence,
    sweep_rr_sr,
    targets_at,
)

__all__ = [
    "Bracket",
    "BracketSignError",
    "DgpConfig",
    "EffectVector",
    "FitConfig",
    "FitResult",
    "GopRegressionModel",
    "L0Distribution",
    "ProbTable",
    "RiskPair",
    "RootResult",
    "RrOpFitResult",
    "RrOpRegressionModel",
    "SimRow",
    "SolverConfig",
    "SolverError",
    "SweepReport",
    "TargetPair",
    "check_rr_sr_feasible",
    "effects_at",
    "fit_gop",
    "fit_rr_op",
    "forward_gop",
    "forward_rr_op",
    "gop_bracket",
    "gop_residual",
    "inverse_gop",
    "inverse_gop_traced",
    "inverse_rr_op",
    "inverse_rr_op_traced",
    "neg_log_lik",
    "predict",
    "rbc_region",
    "rbc_risk",
    "simulate_dataset",
    "sweep_gop_independence",
    "sweep_rr_sr",
    "targets_at",
]

__version__ = "0.1.0"
