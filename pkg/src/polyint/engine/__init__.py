"""Integration engine: rational and elementary integration, dilog terms, descent."""

from .ansatz import Failure
from .convert import li_I_convert
from .descent import descend_exp, descend_prim
from .dilog import integrate_dilog
from .elementary import integrate_elementary
from .prepext import PrepExtData, check_log_deriv_membership, prep_ext
from .rational import integrate_rational
from .terms import DilogTerm, IntegralExpr, RootSumLog, d_dilog_term, verify

__all__ = [
    "Failure",
    "li_I_convert",
    "descend_exp",
    "descend_prim",
    "integrate_dilog",
    "integrate_elementary",
    "PrepExtData",
    "check_log_deriv_membership",
    "prep_ext",
    "integrate_rational",
    "DilogTerm",
    "IntegralExpr",
    "RootSumLog",
    "d_dilog_term",
    "verify",
]
