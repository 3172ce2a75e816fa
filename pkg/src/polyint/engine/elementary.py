"""Elementary integration of log polynomials over a tower.

Towers whose upper generators are logarithms that occur only polynomially
are flattened onto Q(x), where the log generators become log symbols and
``ansatz_integrate`` applies.  Other towers (exponentials, logs in
denominators) are handed to sympy's transcendental Risch implementation and
its answer is read back into the tower.  Every result is verified by
differentiation before it is returned.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.integrals.risch import risch_integrate

from ..errors import DomainError, PolyintError
from ..logsym import LogPoly, as_logpoly, log_of
from ..places import coeffs_in
from .ansatz import Failure, ansatz_integrate
from .terms import IntegralExpr, verify


def log_generator_value(tower, level):
    """The generator log(g) at ``level`` as a log polynomial one level down."""
    ab = tower.absorptions[level]
    lower = tower.restrict(level - 1)
    out = LogPoly.sym(lower, ab.pivot) * lower.constant(ab.coeff)
    for s, c in ab.rest:
        out = out + LogPoly.sym(lower, s) * lower.constant(c)
    return out + LogPoly.const(lower, lower.from_expr(ab.remainder))


def flatten(tower, f):
    """Push f down through polynomial log generators; (tower, f) or None."""
    while tower.level > 0:
        n = tower.level
        if tower.top.kind != "log" or any(s.level >= n for s in f.syms()):
            return None
        lower = tower.restrict(n - 1)
        theta = log_generator_value(tower, n)
        out = LogPoly.zero(lower)
        for m, c in f.terms.items():
            if c.denom.degree(n) > 0:
                return None
            den = lower(c.denom)
            poly = LogPoly.zero(lower)
            for coeff in reversed(coeffs_in(tower, c.numer, n)):
                poly = poly * theta + LogPoly.const(lower, lower(coeff) / den)
            out = out + poly * LogPoly(lower, {m: lower.field.one})
        tower, f = lower, out
    return tower, f


def from_sympy(tower, e):
    """Read a sympy expression back as a log polynomial of the tower."""
    x = sympy.Symbol(tower.var)
    if e.is_Rational:
        return LogPoly.const(tower, Fraction(int(e.p), int(e.q)))
    if e == x:
        return LogPoly.const(tower, tower.gens[0])
    if e.is_Add:
        out = LogPoly.zero(tower)
        for a in e.args:
            out = out + from_sympy(tower, a)
        return out
    if e.is_Mul:
        out = LogPoly.const(tower, 1)
        for a in e.args:
            out = out * from_sympy(tower, a)
        return out
    if e.is_Pow:
        base, ex = e.args
        if isinstance(base, sympy.exp):
            return from_sympy(tower, sympy.exp(base.args[0] * ex, evaluate=False))
        if not ex.is_Integer:
            raise DomainError(f"non-integer power {e}")
        b = from_sympy(tower, base)
        if int(ex) >= 0:
            return b ** int(ex)
        if not b.is_field():
            raise DomainError("negative power of a log polynomial")
        return LogPoly.const(tower, b.field_part() ** int(ex))
    if isinstance(e, sympy.log):
        arg = from_sympy(tower, e.args[0])
        if not arg.is_field():
            raise DomainError("log of a log polynomial")
        return log_of(tower, arg.field_part()).to_logpoly()
    if isinstance(e, sympy.exp):
        u = from_sympy(tower, e.args[0])
        if not u.is_field():
            raise DomainError("exp of a log polynomial")
        return LogPoly.const(tower, _match_exp(tower, u.field_part()))
    raise DomainError(f"cannot express {e} in the tower")


def _match_exp(tower, u):
    if u == 0:
        return tower.field.one
    du = tower.derive(u)
    for m in tower.monomials[1:]:
        if m.kind == "exp":
            arg = tower.from_expr(m.arg)
            q = du / tower.derive(arg)
            if tower.level_of(q) < 0 and u == q * arg:
                qf = tower.to_constant(q)
                if qf.denominator == 1:
                    return tower.gens[m.level] ** int(qf)
        elif m.kind == "log":
            q = du / tower.derive(tower.gens[m.level])
            if tower.level_of(q) < 0 and u == q * tower.gens[m.level]:
                qf = tower.to_constant(q)
                if qf.denominator == 1:
                    return tower.from_expr(m.arg) ** int(qf)
    raise DomainError(f"exp({tower.text(u)}) is not in the tower")


def _risch_fallback(tower, f):
    x = sympy.Symbol(tower.var)
    try:
        res = risch_integrate(f.display(), x)
    except (NotImplementedError, ValueError, TypeError) as exc:
        return Failure(f"transcendental Risch step unavailable: {exc}", f)
    if res.has(sympy.Integral):
        return Failure("no elementary integral (Risch structure test)", f)
    try:
        elem = from_sympy(tower, sympy.expand(res) if not res.has(sympy.RootSum) else res)
    except (DomainError, PolyintError) as exc:
        return Failure(f"antiderivative leaves the tower: {exc}", f)
    out = IntegralExpr(tower, elem)
    if verify(out, f):
        return out
    return Failure("antiderivative failed verification", f)


def integrate_elementary(tower, f):
    """Elementary antiderivative of f (no dilog terms), or a Failure."""
    f = as_logpoly(tower, f)
    flat = flatten(tower, f)
    if flat is not None and flat[0].level == 0:
        base, g = flat
        res = ansatz_integrate(base, g)
        if not res:
            return res
        lifted = res.to_tower(tower) if base is not tower else res
        if verify(lifted, f):
            return lifted
        return Failure("elementary candidate failed verification", f)
    return _risch_fallback(tower, f)


__all__ = ["integrate_elementary", "flatten", "from_sympy", "Failure", "log_generator_value"]
