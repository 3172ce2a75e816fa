"""Formal Li_m <-> I_m rewrite rules and the z d/dz recurrence check.

I_m(z) denotes the iterated integral with z d/dz I_m = log(z)^(m-1) z/(1-z),
so I_1 = -log(1 - z) = Li_1.  The rules are sympy identities in the symbols
``Li_j``, ``I_j``, ``z`` and ``L`` (standing for log z).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import sympy

from ..errors import DomainError

z = sympy.Symbol("z")
L = sympy.Symbol("L")


def Li(j):
    return sympy.Symbol(f"Li_{j}")


def I(j):
    return sympy.Symbol(f"I_{j}")


@dataclass(frozen=True)
class RewriteRule:
    lhs: sympy.Expr
    rhs: sympy.Expr

    def text(self):
        return f"{self.lhs} = {expand_log(self.rhs)}"


def expand_log(expr):
    """Replace L by log(z) and I_1 by -log(1 - z) for display."""
    return expr.xreplace({L: sympy.log(z), I(1): -sympy.log(1 - z)})


@lru_cache(maxsize=None)
def li_to_i(m: int) -> sympy.Expr:
    """Li_m as a polynomial in I_1..I_m and L."""
    if m < 0:
        raise DomainError("polylog order must be nonnegative")
    if m == 0:
        return z / (1 - z)
    out = sympy.Integer(-1) ** (m - 1) / sympy.factorial(m - 1) * I(m)
    for k in range(1, m):
        out -= sympy.Integer(-1) ** k / sympy.factorial(k) * li_to_i(m - k) * L**k
    return sympy.expand(out)


@lru_cache(maxsize=None)
def i_to_li(m: int) -> sympy.Expr:
    """I_m as a polynomial in Li_1..Li_m and L."""
    if m < 1:
        raise DomainError("polylog order must be positive")
    expr = I(m)
    # invert the triangular system one order at a time
    known = {}
    for j in range(1, m + 1):
        eq = li_to_i(j)
        coeff = eq.coeff(I(j))
        known[I(j)] = sympy.expand((Li(j) - (eq - coeff * I(j)).xreplace(known)) / coeff)
    return sympy.expand(expr.xreplace(known))


def li_I_convert(m: int, direction: str = "LiToI") -> RewriteRule:
    if m < 1:
        raise DomainError("polylog order must be positive")
    if direction == "LiToI":
        return RewriteRule(Li(m), li_to_i(m))
    if direction == "IToLi":
        return RewriteRule(I(m), i_to_li(m))
    raise DomainError(f"unknown conversion direction {direction!r}")


def zdz(expr):
    """The derivation z d/dz on polynomials in Li_j, I_j, L with coefficients in Q(z)."""
    out = sympy.diff(expr, z) * z
    for s in expr.free_symbols:
        name = s.name
        if s == L:
            out += sympy.diff(expr, s)
        elif name.startswith("Li_"):
            j = int(name[3:])
            out += sympy.diff(expr, s) * (Li(j - 1) if j > 1 else z / (1 - z))
        elif name.startswith("I_"):
            j = int(name[2:])
            out += sympy.diff(expr, s) * L ** (j - 1) * z / (1 - z)
    return out


def recurrence_holds(m: int) -> bool:
    """z d/dz of converted Li_m equals converted Li_(m-1), exactly."""
    diff = zdz(li_to_i(m)) - li_to_i(m - 1)
    return sympy.cancel(sympy.together(diff)) == 0


def inverse_recurrence_holds(m: int) -> bool:
    """z d/dz of converted I_m equals log(z)^(m-1) z/(1-z) in Li form."""
    diff = zdz(i_to_li(m)) - L ** (m - 1) * z / (1 - z)
    return sympy.cancel(sympy.together(diff)) == 0
