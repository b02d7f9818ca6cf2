"""Universality checks for finite sets of qudit gates."""

from ._core import (
    Backend,
    CheckReport,
    ClosureResult,
    ClosureStatus,
    CommutantResult,
    CommutantStatus,
    DeltaResult,
    Diagnostics,
    GateSet,
    NecessaryCondition,
    NumericsError,
    SizeCapError,
    ValidationError,
    Verdict,
    builtin,
    close_group,
    commutant_basis_dense,
    commutant_dim_dense,
    commutant_dim_matrixfree,
    delta,
    gate_set,
    gram_rank,
    group_commutant_dim,
    group_delta_exact,
    haar_commutant_dim,
    haar_moment_operator,
    mixed_lift,
    moment_operator,
    necessary_condition,
    normalized,
    parse_gate_set,
    partial_transpose,
    run_check,
    su2_decompose,
    su3_reference,
    target_dimension,
    word_moment,
)

__all__ = [
    "Backend",
    "CheckReport",
    "ClosureResult",
    "ClosureStatus",
    "CommutantResult",
    "CommutantStatus",
    "DeltaResult",
    "Diagnostics",
    "GateSet",
    "NecessaryCondition",
    "NumericsError",
    "SizeCapError",
    "ValidationError",
    "Verdict",
    "builtin",
    "close_group",
    "commutant_basis_dense",
    "commutant_dim_dense",
    "commutant_dim_matrixfree",
    "delta",
    "gate_set",
    "gram_rank",
    "group_commutant_dim",
    "group_delta_exact",
    "haar_commutant_dim",
    "haar_moment_operator",
    "mixed_lift",
    "moment_operator",
    "necessary_condition",
    "normalized",
    "parse_gate_set",
    "partial_transpose",
    "run_check",
    "su2_decompose",
    "su3_reference",
    "target_dimension",
    "word_moment",
]

__version__ = "0.1.0"
