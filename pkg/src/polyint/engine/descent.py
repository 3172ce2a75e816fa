"""Moving dilog term arguments from F(t) down to F.

Both procedures rewrite every term d * Psi(log(1-h) (x) log h) through the
normalized data of ``prep_ext``: with h = u * (psi-product) and
1 - h = v * (psi-product), the antisymmetric part of log(1-h) (x) log h differs
from that of log v (x) log u by something whose image under Psi is
elementary.  The symmetric halves are exact derivatives and go straight into
the elementary part; what is left after the new terms is integrated with
``integrate_elementary`` and the whole answer is checked by differentiation.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError, PreconditionError
from ..logsym import LogPoly, as_logpoly, log_of
from ..places import Place, leading_coeff, order_at
from .ansatz import Failure
from .elementary import integrate_elementary
from .prepext import NEGATED, ONE_MINUS, prep_ext
from .terms import DilogTerm, IntegralExpr, merge_terms, verify


def _L(tower, g):
    return log_of(tower, g).to_logpoly()


def _finish(tower, f, elementary, terms, rootsums, what):
    """Integrate the leftover elementarily and certify the result."""
    f = as_logpoly(tower, f)
    expr = IntegralExpr(tower, elementary, merge_terms(tower, terms), list(rootsums))
    rest = f - expr.derive()
    if not rest.is_zero():
        extra = integrate_elementary(tower, rest)
        if not extra:
            return Failure(f"{what}: leftover is not elementary ({extra.reason})", rest)
        expr = expr + extra
    if not verify(expr, f):
        return Failure(f"{what}: internal error, result does not differentiate to f", f)
    return expr


def _term_level(tower, expr):
    return max((tower.level_of(t.h) for t in expr.terms), default=-1)


def _split_terms(tower, expr, lv):
    low, high = [], []
    for t in expr.terms:
        (high if tower.level_of(t.h) >= lv else low).append(t)
    return low, high


def descend_prim(expr: IntegralExpr, f=None, place=None, level=None):
    """Rewrite the terms of expr (over F(t), t primitive) with arguments in F.

    ``level`` selects t; by default it is the highest generator occurring in
    a term argument.
    """
    tower = expr.tower
    lv = _term_level(tower, expr) if level is None else level
    if lv < 1:
        return expr
    if tower.monomials[lv].kind not in ("log", "prim"):
        raise DomainError("descend_prim needs a primitive generator")
    if any(t.k != 1 for t in expr.terms):
        raise DomainError("descend_prim handles k = 1 terms only")
    f = expr.derive() if f is None else as_logpoly(tower, f)
    if not verify(expr, f):
        raise PreconditionError("expr does not differentiate to f")
    low, high = _split_terms(tower, expr, lv)
    if not high:
        return expr
    data = prep_ext(tower, [t.h for t in high], place, lv)
    elementary = expr.elementary
    terms = list(low)
    for i, t in enumerate(high):
        d = Fraction(t.d)
        u, v = tower(data.u[i]), tower(data.v[i])
        half = tower.constant(d / 2)
        elementary = elementary + (_L(tower, 1 - t.h) * _L(tower, t.h) - _L(tower, v) * _L(tower, u)) * half
        tag = data.tags[i]
        if tag == ONE_MINUS:
            if not tower.is_constant(u):
                terms.append(DilogTerm(d, u, 1))
        elif tag == NEGATED:
            elementary = elementary + _L(tower, u) ** 2 * half
    return _finish(tower, f, elementary, terms, expr.rootsums, "descend_prim")


def descend_exp(expr: IntegralExpr, f=None, level=None):
    """Rewrite the terms of expr (over F(t), t = exp(w)) for an integrand f in F."""
    tower = expr.tower
    lv = _term_level(tower, expr) if level is None else level
    if lv < 1:
        return expr
    if tower.monomials[lv].kind != "exp":
        raise DomainError("descend_exp needs an exponential generator")
    f = expr.derive() if f is None else as_logpoly(tower, f)
    if f.level() >= lv:
        raise PreconditionError("the integrand must lie in the base field F")
    if not verify(expr, f):
        raise PreconditionError("expr does not differentiate to f")
    low, high = _split_terms(tower, expr, lv)
    if not high:
        return expr
    theta = tower.gens[lv]
    p = Place.finite(tower, theta, lv)
    terms = list(low)
    fold = LogPoly.zero(tower)
    for t in high:
        h = tower(t.h)
        oh, o1 = order_at(tower, h, p), order_at(tower, 1 - h, p)
        d = Fraction(t.d)
        if oh == 0 and o1 == 0:
            u = tower(leading_coeff(tower, h, p))
            if not tower.is_constant(u):
                terms.append(DilogTerm(d, u, t.k))
        elif oh < 0:
            u = tower(leading_coeff(tower, h, p)) * theta**oh
            fold = fold + _L(tower, u) ** (t.k + 1) * tower.constant(d / (t.k + 1))
        # ord(h) > 0 gives v = 1 and ord(1-h) > 0 gives u = 1: both vanish
    new = IntegralExpr(tower, fold, merge_terms(tower, terms))
    rest = f - new.derive()
    if rest.level() >= lv:
        return Failure("descend_exp: leftover still involves the exponential", rest)
    lower = tower.restrict(lv - 1)
    extra = integrate_elementary(lower, rest.to_tower(lower))
    if not extra:
        return Failure(f"descend_exp: leftover is not elementary ({extra.reason})", rest)
    out = new + extra.to_tower(tower)
    if not verify(out, f):
        return Failure("descend_exp: internal error, result does not differentiate to f", f)
    return out


__all__ = ["descend_prim", "descend_exp"]
