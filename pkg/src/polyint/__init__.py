"""Symbolic integration in transcendental towers with dilogarithmic terms."""

from .engine import (
    DilogTerm,
    Failure,
    IntegralExpr,
    check_log_deriv_membership,
    d_dilog_term,
    descend_exp,
    descend_prim,
    integrate_dilog,
    integrate_elementary,
    li_I_convert,
    prep_ext,
    verify,
)
from .errors import DependentGenerator, DomainError, ParseError, PolyintError, PreconditionError
from .frontend import cli_run, parse, render
from .logsym import LogPoly, log_of, log_linear_relation
from .places import divisor_of, independent_basis, leading_coeff, order_at
from .tensor2 import Tensor2, is_symmetric, psi, tenseq_residual
from .tower import Tower, build_tower

__version__ = "0.1.0"

__all__ = [
    "Tower",
    "build_tower",
    "LogPoly",
    "log_of",
    "log_linear_relation",
    "divisor_of",
    "order_at",
    "leading_coeff",
    "independent_basis",
    "Tensor2",
    "tenseq_residual",
    "is_symmetric",
    "psi",
    "DilogTerm",
    "IntegralExpr",
    "Failure",
    "d_dilog_term",
    "li_I_convert",
    "integrate_elementary",
    "integrate_dilog",
    "prep_ext",
    "check_log_deriv_membership",
    "descend_prim",
    "descend_exp",
    "verify",
    "parse",
    "render",
    "cli_run",
    "PolyintError",
    "DomainError",
    "DependentGenerator",
    "ParseError",
    "PreconditionError",
]
