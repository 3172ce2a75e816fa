import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyint import parse, render
from polyint.engine.terms import DilogTerm, IntegralExpr
from polyint.errors import DomainError, ParseError
from polyint.frontend.cli import cli_run
from polyint.frontend.parser import parse_ast, BinOp, Neg
from polyint.frontend.render import JSON_SCHEMA
from polyint.logsym import LogPoly, as_logpoly
from polyint.tower import Tower


def test_parse_rational():
    p = parse("x^2/(x-1)")
    x = p.tower.gens[0]
    assert p.tower.level == 0
    assert p.value == x**2 / (x - 1)
    assert render(p.value, tower=p.tower) == "x^2/(x - 1)"


def test_parse_builds_tower():
    p = parse("log(x)*exp(x)")
    kinds = [m.kind for m in p.tower.monomials]
    assert kinds == ["base", "log", "exp"]
    x, l, e = p.tower.gens
    assert p.value == l * e


def test_parse_error_offset():
    with pytest.raises(ParseError) as exc:
        parse("log(")
    assert exc.value.offset == 4
    with pytest.raises(ParseError) as exc:
        parse("x + * 2")
    assert exc.value.offset == 4


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than *
    ast = parse_ast("-x^2")
    assert isinstance(ast, Neg) and isinstance(ast.arg, BinOp) and ast.arg.op == "^"
    x = Tower.base().gens[0]
    assert parse("-x^2").value == -(x**2)
    assert parse("2^3^2").value == 512
    assert parse("1 - 2 - 3").value == -4
    assert parse("8/2/2").value == 2


def test_log_exp_simplifications():
    p = parse("exp(log(x+1))")
    assert p.tower.level == 0 and p.value == p.tower.gens[0] + 1
    p = parse("log(exp(x^2))")
    assert p.tower.level == 0 and p.value == p.tower.gens[0] ** 2
    p = parse("log(x^2) - 2*log(x)")
    assert p.value == 0


def test_exp_generator_is_refined():
    # exp(2x) arrives first; exp(x) forces the generator down to exp(x)
    p = parse("exp(2*x) + exp(x)")
    t = p.tower.gens[1]
    assert p.tower.level == 1 and p.value == t**2 + t
    p = parse("exp(x) * exp(x/3)")
    assert p.tower.level == 1 and p.value == p.tower.gens[1] ** 4


def test_log_constants_stay_symbolic():
    p = parse("log(6) - log(2) - log(3)")
    assert as_logpoly(p.tower, p.value).is_zero()


def test_domain_errors():
    with pytest.raises(DomainError):
        parse("log(0)")
    with pytest.raises(DomainError):
        parse("x^(1/2)")
    with pytest.raises(DomainError):
        parse("exp(1)")
    with pytest.raises(DomainError):
        parse("log(x)*Li(2, x)")


def test_parse_integral_claims():
    p = parse("Li(2, x)")
    assert isinstance(p.value, IntegralExpr)
    assert [(t.d, t.k) for t in p.value.terms] == [(1, 1)]
    p = parse("-3*I(3, x)/2 + dilog_term(d=1/2, h=x+1, k=1)")
    assert sorted((str(t.d), t.k) for t in p.value.terms) == [("1/2", 1), ("3/2", 2)]


def test_render_integral_text():
    T = Tower.base()
    x = T.gens[0]
    e = IntegralExpr(T, LogPoly.zero(T), [DilogTerm(1, x, 1)])
    assert "dilog_term(d=1, h=x, k=1)" in render(e)
    doc = json.loads(render(e, "json"))
    jsonschema.validate(doc, JSON_SCHEMA)
    assert doc["dilog_terms"] == [{"d": "1", "h": "x", "k": 1}]


atoms = st.sampled_from(["x", "2", "1/3", "log(x)", "log(x+1)", "exp(x)", "exp(2*x)", "log(x^2+1)", "(x-1)"])


@st.composite
def expressions(draw, depth=2):
    if depth == 0:
        return draw(atoms)
    a, b = draw(expressions(depth=depth - 1)), draw(expressions(depth=depth - 1))
    op = draw(st.sampled_from(["+", "-", "*", "/", "^"]))
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    if op == "/":
        return f"({a})/(x + {draw(st.integers(1, 3))})"
    return f"({a}) {op} ({b})"


@settings(max_examples=60, deadline=None)
@given(expressions())
def test_parse_render_roundtrip(text):
    p = parse(text)
    shown = render(p.value, tower=p.tower)
    q = parse(shown, tower=p.tower)
    assert as_logpoly(q.tower, q.value) == as_logpoly(q.tower, p.value)


def test_cli_examples():
    r = cli_run(["integrate", "log(x)/(x-1)"])
    assert r.status == "Integrated" and r.exit_code == 0
    assert "dilog_term(d=1, h=x, k=1)" in r.text
    r = cli_run(["derive", "log(x)^2"])
    assert r.text == "2*log(x)/x" and r.exit_code == 0
    r = cli_run(["integrate", "exp(x^2)"])
    assert r.status == "NoIntegralFound" and r.exit_code == 1


def test_cli_errors_and_verify():
    assert cli_run(["integrate", "log("]).exit_code == 2
    assert cli_run(["integrate", "log(0)"]).exit_code == 2
    r = cli_run(["verify", "-log(1-x)/x", "--claim", "Li(2, x)"])
    assert r.status == "Verified" and r.exit_code == 0
    r = cli_run(["verify", "1/x", "--claim", "log(x+1)"])
    assert r.exit_code == 1
    with pytest.raises(SystemExit) as exc:
        cli_run(["integrate", "x", "--bogus"])
    assert exc.value.code == 2


def test_cli_descend_and_tensor_check():
    text = "dilog_term(d=1,h=x+1,k=1) + dilog_term(d=1,h=log(x),k=1) + dilog_term(d=1,h=1-log(x),k=1) - log(1-log(x))*log(log(x))"
    r = cli_run(["descend", text, "--json"])
    doc = json.loads(r.json())
    jsonschema.validate(doc, JSON_SCHEMA)
    assert [t["h"] for t in doc["dilog_terms"]] == ["x + 1"]
    r = cli_run(["tensor-check", "x"])
    assert r.status == "Symmetric" and r.payload["tags"] == ["OneMinus"]
    assert r.payload["u"] == ["2"] and r.payload["v"] == ["-1"]


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "polyint.frontend.cli", "derive", "x^3", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["value"] == "3*x^2"
