from fractions import Fraction

import pytest

from corpora import _zero_packet
from polyint.engine.descent import descend_exp, descend_prim
from polyint.engine.terms import DilogTerm, IntegralExpr, verify
from polyint.errors import DomainError, PreconditionError
from polyint.logsym import LogPoly, log_of
from polyint.tower import build_tower


@pytest.fixture(scope="module")
def LT():
    return build_tower(["x", "log(x)"])


@pytest.fixture(scope="module")
def ET():
    return build_tower(["x", "exp(x)"])


def test_identity_case(LT):
    x, t = LT.gens
    e = IntegralExpr(LT, LogPoly.zero(LT), [DilogTerm(Fraction(2), x + 3, 1)])
    assert descend_prim(e) is e


def test_packet_collapses(LT):
    x, t = LT.gens
    base = IntegralExpr(LT, LogPoly.zero(LT), [DilogTerm(Fraction(1), x + 1, 1)])
    e = base + _zero_packet(LT, (t + 1) / (x * t - 2), Fraction(2, 3), 0)
    f = base.derive()
    res = descend_prim(e, f)
    assert verify(res, f)
    assert all(LT.level_of(tm.h) < 1 for tm in res.terms)


def test_negated_case_moves_to_elementary(LT):
    # term(h) + term(1/h) with h = t: at the chosen place 1/h has a pole
    x, t = LT.gens
    e = _zero_packet(LT, t, Fraction(1), 1)
    res = descend_prim(e, 0)
    assert res and verify(res, 0)
    assert all(LT.level_of(tm.h) < 1 for tm in res.terms)


def test_wrong_generator_kind(LT, ET):
    x, t = ET.gens
    e = IntegralExpr(ET, LogPoly.zero(ET), [DilogTerm(1, t + 2, 1)])
    with pytest.raises(DomainError):
        descend_prim(e)
    x, t = LT.gens
    with pytest.raises(DomainError):
        descend_exp(IntegralExpr(LT, LogPoly.zero(LT), [DilogTerm(1, t + 2, 1)]))


def test_exp_trivial_embedding(ET):
    x, t = ET.gens
    e = IntegralExpr(ET, LogPoly.zero(ET), [DilogTerm(Fraction(1), x / (x + 1), 2)])
    assert descend_exp(e) is e


def test_exp_refuses_integrand_outside_base(ET):
    x, t = ET.gens
    e = IntegralExpr(ET, LogPoly.zero(ET), [DilogTerm(1, t, 1)])
    assert e.derive() == LogPoly.const(ET, x * t / (t - 1))
    with pytest.raises(PreconditionError):
        descend_exp(e)


def test_exp_obfuscated(ET):
    x, t = ET.gens
    base = IntegralExpr(ET, LogPoly.zero(ET), [DilogTerm(Fraction(-1, 2), x**2 - 3, 1)])
    e = base + _zero_packet(ET, x * t, Fraction(1), 1) + _zero_packet(ET, (t - x) / (x + 1), Fraction(3), 0)
    f = base.derive()
    res = descend_exp(e, f)
    assert verify(res, f)
    assert all(ET.level_of(tm.h) < 1 for tm in res.terms)


def test_exp_polylog_fold(ET):
    # odd k: term(h, 3) + term(1/h, 3) = D(log(h)^4)/4, which lies in F for h = x e^x
    x, t = ET.gens
    h = x * t
    e = IntegralExpr(ET, LogPoly.zero(ET), [DilogTerm(1, h, 3), DilogTerm(1, 1 / h, 3)])
    f = e.derive()
    assert f.level() < 1
    assert f == (log_of(ET, h).to_logpoly() ** 4).derive() * ET.constant(Fraction(1, 4))
    res = descend_exp(e, f)
    assert res and verify(res, f)
    assert res.terms == []
