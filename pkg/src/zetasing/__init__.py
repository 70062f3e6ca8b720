"""Singularity structure of zeta functions for self-adjoint extensions of
Laplace-type operators on conic manifolds, computed from boundary data."""

from ._kernel import BACKEND
from .analyzer import (
    LogBranchEntry,
    PoleEntry,
    SingularityReport,
    analyze,
    reg_residue_at_zero,
    run_pipeline,
)
from .lagrangian import LagrangianPair, boundary_det, validate_lagrangian
from .series import BigradedSeries, TruncationPolicy, log1p_truncated
from .spectral_data import EigenvalueSpec, nu_of_lambda, tau_of_nu

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BigradedSeries",
    "EigenvalueSpec",
    "LagrangianPair",
    "LogBranchEntry",
    "PoleEntry",
    "SingularityReport",
    "TruncationPolicy",
    "analyze",
    "boundary_det",
    "log1p_truncated",
    "nu_of_lambda",
    "reg_residue_at_zero",
    "run_pipeline",
    "tau_of_nu",
    "validate_lagrangian",
]
