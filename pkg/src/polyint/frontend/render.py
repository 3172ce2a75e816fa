"""Text and JSON renderings of tower elements and integral expressions."""

from __future__ import annotations

import json
from fractions import Fraction

from ..logsym import LogPoly
from ..tower import sympy_text

SCHEMA = "polyint-1"


def _frac(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def element_text(tower, e):
    if isinstance(e, LogPoly):
        return e.text()
    return tower.text(e)


def term_text(tower, term):
    return f"dilog_term(d={_frac(term.d)}, h={tower.text(term.h)}, k={term.k})"


def integral_text(expr):
    t = expr.tower
    parts = []
    if not expr.elementary.is_zero():
        parts.append(expr.elementary.text())
    parts += [r.text() for r in expr.rootsums]
    parts += [term_text(t, tm) for tm in expr.terms]
    return " + ".join(parts) if parts else "0"


def integral_payload(expr):
    """Dictionary following the polyint-1 layout (without status)."""
    t = expr.tower
    logs = [{"coeff": _frac(c), "arg": sympy_text(s.display(t).args[0])} for c, s in expr.log_part()]
    for r in expr.rootsums:
        logs.append({"coeff": r.name, "arg": sympy_text(r.s_expr())})
    rest = expr.rational_part()
    elementary = LogPoly.const(t, rest) + expr.logpoly_part()
    return {
        "elementary": elementary.text(),
        "logs": logs,
        "dilog_terms": [{"d": _frac(tm.d), "h": t.text(tm.h), "k": tm.k} for tm in expr.terms],
        "new_constants": [{"name": c.name, "minpoly": c.minpoly_text()} for c in expr.new_constants],
    }


def render(obj, fmt="text", tower=None):
    """Render an IntegralExpr, LogPoly or field element as text or JSON."""
    from ..engine.terms import IntegralExpr

    if isinstance(obj, IntegralExpr):
        if fmt == "json":
            return json.dumps({"schema": SCHEMA, "status": "Integrated", **integral_payload(obj)})
        return integral_text(obj)
    if isinstance(obj, LogPoly):
        tower = obj.tower
    if tower is None:
        raise TypeError("rendering a field element needs its tower")
    text = element_text(tower, obj)
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "status": "Ok", "value": text})
    return text


JSON_SCHEMA = {
    "type": "object",
    "required": ["schema", "status"],
    "properties": {
        "schema": {"const": SCHEMA},
        "status": {"type": "string"},
        "elementary": {"type": "string"},
        "logs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "arg"],
                "properties": {"coeff": {"type": "string"}, "arg": {"type": "string"}},
            },
        },
        "dilog_terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "h", "k"],
                "properties": {
                    "d": {"type": "string"},
                    "h": {"type": "string"},
                    "k": {"type": "integer", "minimum": 1},
                },
            },
        },
        "new_constants": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "minpoly"],
                "properties": {"name": {"type": "string"}, "minpoly": {"type": "string"}},
            },
        },
        "message": {"type": "string"},
    },
    "allOf": [
        {
            "if": {"properties": {"status": {"const": "Integrated"}}},
            "then": {"required": ["elementary", "logs", "dilog_terms", "new_constants"]},
        }
    ],
}

__all__ = ["render", "integral_payload", "integral_text", "term_text", "JSON_SCHEMA", "SCHEMA"]
