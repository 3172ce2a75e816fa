from fractions import Fraction

import pytest

from polyint import parse
from polyint.engine.convert import (
    I,
    L,
    Li,
    inverse_recurrence_holds,
    li_I_convert,
    recurrence_holds,
    z,
)
from polyint.engine.dilog import integrate_dilog
from polyint.engine.elementary import integrate_elementary
from polyint.engine.rational import hermite_reduce, integrate_rational
from polyint.engine.terms import DilogTerm, IntegralExpr, RootSumLog, d_dilog_term, verify
from polyint.errors import DomainError
from polyint.logsym import LogPoly
from polyint.tower import Tower, build_tower

import sympy

T = Tower.base()
x = T.gens[0]


def P(text, tower=None):
    p = parse(text, tower=tower)
    return p.tower, p.value


# -- conversions ----------------------------------------------------------
def test_li1_is_i1():
    assert li_I_convert(1).rhs == I(1)


def test_li2_formula():
    assert sympy.expand(li_I_convert(2).rhs - (-I(2) + I(1) * L)) == 0


@pytest.mark.parametrize("m", range(1, 6))
def test_recurrences(m):
    assert recurrence_holds(m)
    assert inverse_recurrence_holds(m)


def test_inverse_conversion_roundtrip():
    for m in range(1, 5):
        back = li_I_convert(m, "IToLi").rhs
        expr = back
        for j in range(1, m + 1):
            expr = expr.subs(Li(j), li_I_convert(j).rhs)
        assert sympy.expand(expr - I(m)) == 0


def test_conversion_domain():
    with pytest.raises(DomainError):
        li_I_convert(0)
    with pytest.raises(DomainError):
        li_I_convert(2, "sideways")


# -- dilog terms ------------------------------------------------------------
def test_d_dilog_term_x():
    assert d_dilog_term(T, DilogTerm(1, x, 1)) == LogPoly.log(T, x) / (x - 1)


def test_d_dilog_term_exp():
    E = build_tower(["x", "exp(x)"])
    y, e = E.gens
    assert d_dilog_term(E, DilogTerm(1, e, 1)) == LogPoly.const(E, y * e / (e - 1))


def test_d_dilog_term_degenerate():
    with pytest.raises(DomainError):
        d_dilog_term(T, DilogTerm(1, T(1), 1))
    with pytest.raises(DomainError):
        DilogTerm(1, x, 0)


# -- rational -----------------------------------------------------------------
def test_hermite_reduce_exact():
    num = sympy.Poly(1, sympy.Symbol("x"), domain="QQ")
    den = sympy.Poly(sympy.Symbol("x") ** 3, sympy.Symbol("x"), domain="QQ")
    g_num, g_den, poly, a, d = hermite_reduce(num, den)
    assert g_num.as_expr() / g_den.as_expr() == sympy.Rational(-1, 2) / sympy.Symbol("x") ** 2
    assert a.is_zero


def test_rational_examples():
    r = integrate_rational(T, 1 / (x**2 - 1))
    logs = sorted((str(c), str(T.text(g))) for c, g in r.logs)
    assert logs == [("-1/2", "x + 1"), ("1/2", "x - 1")]
    r = integrate_rational(T, 1 / (x**2 + 1))
    assert len(r.rootsums) == 1 and r.rootsums[0].constant().minpoly_text() == "a1^2 + 1/4"
    assert integrate_rational(T, 1 / x**2).rational == -1 / x


def test_rootsum_derivative():
    # sum over a^2 = -1/4 of a log(x + 2a) = atan-type antiderivative of 1/(x^2+1)
    r = RootSumLog((Fraction(1, 4), Fraction(0), Fraction(1)), (sympy.Symbol("x"), sympy.Integer(2)), "a1")
    assert r.derive(T) == 1 / (x**2 + 1)


# -- elementary -------------------------------------------------------------
def test_elementary_examples():
    L2, f = P("log(x)")
    res = integrate_elementary(L2, f)
    y, t = L2.gens
    assert res.elementary == LogPoly.const(L2, y * t - y)
    res = integrate_elementary(*P("1/x^2"))
    assert res.elementary.field_part() == -1 / x
    assert not integrate_elementary(*P("exp(x^2)"))


def test_elementary_loglog():
    tw, f = P("1/(x*log(x))")
    res = integrate_elementary(tw, f)
    assert res and verify(res, f)
    assert "log(log(x))" in res.elementary.text()


def test_verify_examples():
    assert verify(IntegralExpr(T, LogPoly.log(T, x)), 1 / x)
    assert verify(IntegralExpr(T, LogPoly.zero(T), [DilogTerm(1, x, 1)]), LogPoly.log(T, x) / (x - 1))
    assert not verify(IntegralExpr(T, LogPoly.const(T, x)), 2)


# -- dilog integration ------------------------------------------------------
def test_integrate_dilog_basic():
    tw, f = P("log(x)/(x-1)")
    res = integrate_dilog(tw, f)
    assert [(t.d, tw.text(t.h), t.k) for t in res.terms] == [(1, "x", 1)]
    assert res.elementary.is_zero()


def test_integrate_dilog_li2_integrand():
    tw, f = P("-log(1-x)/x")
    res = integrate_dilog(tw, f)
    assert verify(res, f)
    assert [(t.d, tw.text(t.h)) for t in res.terms] == [(1, "x")]
    assert res.elementary.text() == "-log(x)*log(1 - x)"


def test_integrate_dilog_no_terms_needed():
    tw, f = P("log(x)/x")
    res = integrate_dilog(tw, f)
    assert res.terms == [] and verify(res, f)


def test_integrate_dilog_failure_is_value():
    tw, f = P("exp(x^2)")
    res = integrate_dilog(tw, f)
    assert not res and "heuristic H1" in res.reason
