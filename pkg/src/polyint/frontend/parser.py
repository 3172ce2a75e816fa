"""Recursive-descent parser for integrands and claimed antiderivatives.

Grammar (precedence ^ > unary minus > * / > + -; ^ is right associative):

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | NAME | NAME '(' args ')' | '(' sum ')'

Evaluation grows a tower on demand: each log(g) that introduces a new
non-constant logarithm and each exp(u) independent of the existing
generators becomes a new monomial.  Li(k, z), I(k, z) and
dilog_term(d=.., h=.., k=..) are accepted only as top-level summands (times
constants) and produce an IntegralExpr instead of a plain element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DependentGenerator, DomainError, ParseError
from ..logsym import LogPoly, as_logpoly, log_of
from ..tower import Tower

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^(),=]))"
)

POLYLOG_FUNCS = ("Li", "I", "dilog_term")


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tok = m.group(kind)
        toks.append(Tok(kind, "^" if tok == "**" else tok, m.start(kind)))
        pos = m.end()
    toks.append(Tok("end", "", n))
    return toks


# -- AST -----------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    kwargs: tuple
    pos: int


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text or t.kind == "end":
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.pos)
        return self.take()

    def parse(self):
        node = self.sum()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def sum(self):
        node = self.product()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take()
            node = BinOp(op.text, node, self.product(), op.pos)
        return node

    def product(self):
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.take()
            node = BinOp(op.text, node, self.unary(), op.pos)
        return node

    def unary(self):
        if self.tok.text == "-" and self.tok.kind == "op":
            op = self.take()
            return Neg(self.unary(), op.pos)
        if self.tok.text == "+" and self.tok.kind == "op":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            op = self.take()
            return BinOp("^", base, self.unary(), op.pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text), t.pos)
        if t.kind == "name":
            self.take()
            if self.tok.text == "(":
                return self.call(t)
            return Name(t.text, t.pos)
        if t.text == "(":
            self.take()
            node = self.sum()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected an operand, found {found}", t.pos)

    def call(self, name):
        self.expect("(")
        args, kwargs = [], []
        if self.tok.text != ")":
            while True:
                if self.tok.kind == "name" and self.toks[self.i + 1].text == "=":
                    key = self.take().text
                    self.take()
                    kwargs.append((key, self.sum()))
                else:
                    if kwargs:
                        raise ParseError("positional argument after keyword argument", self.tok.pos)
                    args.append(self.sum())
                if self.tok.text == ",":
                    self.take()
                    continue
                break
        self.expect(")")
        return Call(name.text, tuple(args), tuple(kwargs), name.pos)


def parse_ast(text):
    return _Parser(text).parse()


# -- evaluation ----------------------------------------------------------
class _Evaluator:
    def __init__(self, tower):
        self.tower = tower

    def lift(self, v):
        return as_logpoly(self.tower, v)

    def const(self, node, what):
        v = self.lift(self.eval(node))
        if not v.is_field() or not self.tower.is_constant(v.field_part()):
            raise DomainError(f"{what} must be a rational constant")
        return self.tower.to_constant(v.field_part())

    def int_const(self, node, what):
        c = self.const(node, what)
        if c.denominator != 1:
            raise DomainError(f"{what} must be an integer")
        return int(c)

    def eval(self, node):
        t = self.tower
        if isinstance(node, Num):
            return LogPoly.const(t, t.constant(node.value))
        if isinstance(node, Name):
            if node.name == t.var:
                return LogPoly.const(t, t.gens[0])
            raise ParseError(f"unknown name {node.name!r}", node.pos)
        if isinstance(node, Neg):
            return -self.eval(node.arg)
        if isinstance(node, BinOp):
            if node.op == "^":
                base = self.eval(node.left)
                n = self.const(node.right, "an exponent")
                if n.denominator != 1:
                    raise DomainError("fractional powers would leave the transcendental tower")
                base = self.lift(base)
                if n >= 0:
                    return base ** int(n)
                return LogPoly.const(self.tower, 1) / (base ** int(-n))
            a = self.eval(node.left)
            b = self.eval(node.right)
            a, b = self.lift(a), self.lift(b)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            return a / b
        if isinstance(node, Call):
            return self.call(node)
        raise TypeError(node)

    def call(self, node):
        if node.func in POLYLOG_FUNCS:
            raise DomainError(f"{node.func}(...) may only appear as a top-level summand")
        if node.kwargs or len(node.args) != 1:
            raise ParseError(f"{node.func} takes exactly one argument", node.pos)
        if node.func == "log":
            inner = node.args[0]
            if isinstance(inner, Call) and inner.func == "exp" and len(inner.args) == 1 and not inner.kwargs:
                # log(exp(u)) = u, the additive constant chosen 0
                return self.lift(self.eval(inner.args[0]))
            return self.log(self.lift(self.eval(inner)))
        if node.func == "exp":
            inner = node.args[0]
            if isinstance(inner, Call) and inner.func == "log" and len(inner.args) == 1 and not inner.kwargs:
                # exp(log(u)) = u without creating the log generator
                u = self.lift(self.eval(inner.args[0]))
                if u.is_zero():
                    raise DomainError("log(0) is undefined")
                return u
            return self.exp(self.lift(self.eval(inner)))
        raise ParseError(f"unknown function {node.func!r}", node.pos)

    def log(self, g):
        if not g.is_field():
            raise DomainError("log of an expression containing logarithms of constants")
        g = g.field_part()
        if g == 0:
            raise DomainError("log(0) is undefined")
        t = self.tower
        comb = log_of(t, g)
        if t.is_constant(g) or all(s.is_constant for s in comb.coeffs):
            return comb.to_logpoly()
        self.tower = t.extend("log", g)
        return LogPoly.const(self.tower, self.tower.gens[-1])

    def exp(self, u):
        t = self.tower
        # exp(c*log(a) + w) = a^c * exp(w) for integer c
        value = LogPoly.const(t, 1)
        for m, c in u.terms.items():
            if not m:
                continue
            if len(m) != 1 or m[0][1] != 1 or not t.is_constant(c):
                raise DomainError("exp of a non-linear expression in logarithms")
            k = t.to_constant(c)
            if k.denominator != 1:
                raise DomainError("exp(c*log(a)) with fractional c is algebraic")
            value = value * LogPoly.const(t, m[0][0].arg_in(t) ** int(k))
        w = u.field_part()
        if w == 0:
            return value
        try:
            self.tower = t.extend("exp", w)
        except DependentGenerator as exc:
            return value * LogPoly.const(t, self._dependent_exp(t, w, exc.relation))
        return self.lift(value) * LogPoly.const(self.tower, self.tower.gens[-1])

    @staticmethod
    def _dependent_exp(t, w, rel):
        """exp(w) when w = sum r_i (log generator or exp argument).

        Integer r_i give a product of existing generators.  A fractional
        coefficient on an exp generator asks for a finer root of it
        (``_Refine``); on a log generator it means exp(w) is algebraic.
        """
        rest = w
        parts = []
        j = 0
        for m in t.monomials[1:]:
            if m.kind not in ("log", "exp"):
                continue
            r = Fraction(rel[j])
            j += 1
            if r == 0:
                continue
            base = t.gens[m.level] if m.kind == "log" else t.from_expr(m.arg)
            rest -= base * t.constant(r)
            parts.append((m, r))
        if rest != 0:
            raise DomainError(f"exp({t.text(w)}) would add the constant exp({t.text(rest)})")
        out = t.field.one
        for m, r in parts:
            if r.denominator != 1:
                if m.kind == "log":
                    raise DomainError(f"exp({t.text(w)}) is algebraic over the tower")
                raise _Refine(m.level, r.denominator)
            out *= (t.from_expr(m.arg) if m.kind == "log" else t.gens[m.level]) ** int(r)
        return out


class _Refine(Exception):
    """Restart with the exp generator at ``level`` replaced by its q-th root."""

    def __init__(self, level, q):
        super().__init__(level, q)
        self.level = level
        self.q = q


def _refined(tower, level, q):
    """The tower with exp(a) at ``level`` replaced by exp(a/q), later arguments rewritten."""
    import sympy

    gen = sympy.Symbol(tower.monomials[level].name)
    out = Tower.base(tower.var)
    for m in tower.monomials[1:]:
        arg = m.arg
        if m.level == level:
            arg = arg / q
        elif m.level > level:
            arg = arg.xreplace({gen: gen**q})
        out = out.extend(m.kind, out.from_expr(arg))
    return out


def _summands(node, sign=1):
    if isinstance(node, BinOp) and node.op in ("+", "-"):
        yield from _summands(node.left, sign)
        yield from _summands(node.right, sign if node.op == "+" else -sign)
    elif isinstance(node, Neg):
        yield from _summands(node.arg, -sign)
    else:
        yield sign, node


def _polylog_factor(node):
    """Split a summand into (constant factor nodes, polylog call) if it has one."""
    if isinstance(node, Call) and node.func in POLYLOG_FUNCS:
        return [], [], node
    if isinstance(node, BinOp) and node.op in ("*", "/"):
        for side, other in ((node.left, node.right), (node.right, node.left)):
            if node.op == "/" and side is node.right:
                continue
            found = _polylog_factor(side)
            if found:
                muls, divs, call = found
                if node.op == "*":
                    return muls + [other], divs, call
                return muls, divs + [other], call
    return None


def _contains_polylog(node):
    if isinstance(node, Call):
        return node.func in POLYLOG_FUNCS or any(map(_contains_polylog, node.args)) or any(
            _contains_polylog(v) for _, v in node.kwargs
        )
    if isinstance(node, BinOp):
        return _contains_polylog(node.left) or _contains_polylog(node.right)
    if isinstance(node, Neg):
        return _contains_polylog(node.arg)
    return False


def _polylog_terms(ev, call, coeff):
    """Elementary part and dilog terms for coeff * call."""
    from ..engine.terms import DilogTerm

    t = ev.tower
    if call.func == "dilog_term":
        kw = dict(call.kwargs)
        if call.args or set(kw) - {"d", "h", "k"} or "h" not in kw:
            raise ParseError("dilog_term takes keyword arguments d=, h=, k=", call.pos)
        d = ev.const(kw["d"], "d") if "d" in kw else Fraction(1)
        k = ev.int_const(kw["k"], "k") if "k" in kw else 1
        h = ev.lift(ev.eval(kw["h"]))
        return None, DilogTerm(d * coeff, h, k)
    if call.kwargs or len(call.args) != 2:
        raise ParseError(f"{call.func} takes (order, argument)", call.pos)
    m = ev.int_const(call.args[0], "the polylog order")
    z = ev.lift(ev.eval(call.args[1]))
    if m < 1:
        raise DomainError("polylog order must be positive")
    if call.func == "I":
        if m == 1:
            return ("neg_log_1mz", z, coeff), None
        return None, DilogTerm(-coeff, z, m - 1)
    if m == 1:
        return ("neg_log_1mz", z, coeff), None
    if m == 2:
        # Li_2(z) = -I_2(z) - log(1 - z) log(z)
        return ("li2_elem", z, coeff), DilogTerm(coeff, z, 1)
    raise DomainError("Li(k, .) for k > 2 involves products of polylogarithms and logs")


@dataclass
class Parsed:
    tower: Tower
    value: object  # FracElement, LogPoly or IntegralExpr

    @property
    def is_integral(self):
        from ..engine.terms import IntegralExpr

        return isinstance(self.value, IntegralExpr)


def parse(text, var="x", tower=None):
    """Parse text into (tower, value); the tower is extended as needed."""
    ast = parse_ast(text)
    start = tower if tower is not None else Tower.base(var)
    for _ in range(8):
        ev = _Evaluator(start)
        try:
            if not _contains_polylog(ast):
                v = ev.lift(ev.eval(ast))
                return Parsed(ev.tower, v.field_part() if v.is_field() else v)
            return Parsed(ev.tower, _parse_integral(ev, ast))
        except _Refine as r:
            if r.level <= start.level and tower is not None:
                raise DomainError("the expression needs a root of a generator of the given tower") from None
            start = _refined(ev.tower, r.level, r.q)
    raise DomainError("too many generator refinements")


def _parse_integral(ev, ast):
    from ..engine.terms import IntegralExpr, merge_terms

    plain = []
    pending = []
    for sign, node in _summands(ast):
        if not _contains_polylog(node):
            plain.append((sign, ev.eval(node)))
            continue
        found = _polylog_factor(node)
        if not found:
            raise DomainError("polylog terms may only be multiplied or divided by constants")
        muls, divs, call = found
        if any(map(_contains_polylog, muls + divs)):
            raise DomainError("products of polylog terms are not supported")
        coeff = Fraction(sign)
        for n in muls:
            coeff *= ev.const(n, "a polylog coefficient")
        for n in divs:
            coeff /= ev.const(n, "a polylog coefficient")
        pending.append(_polylog_terms(ev, call, coeff))
    t = ev.tower
    elementary = LogPoly.zero(t)
    for sign, v in plain:
        elementary = elementary + as_logpoly(t, v) * sign
    terms = []
    for elem, term in pending:
        if elem is not None:
            kind, z, c = elem
            z = as_logpoly(t, z)
            if not z.is_field():
                raise DomainError("polylog arguments must be field elements")
            z = z.field_part()
            if kind == "neg_log_1mz":
                elementary = elementary - log_of(t, 1 - z).to_logpoly() * t.constant(c)
            else:
                elementary = elementary - log_of(t, 1 - z).to_logpoly() * log_of(t, z).to_logpoly() * t.constant(c)
        if term is not None:
            h = as_logpoly(t, term.h)
            if not h.is_field():
                raise DomainError("dilog term arguments must be field elements")
            terms.append(type(term)(term.d, h.field_part(), term.k))
    for tm in terms:
        if tm.h == 0 or tm.h == 1:
            raise DomainError("dilog term argument must differ from 0 and 1")
    return IntegralExpr(t, elementary, merge_terms(t, terms))


def parse_generator_spec(item, tower):
    """'log(g)' / 'exp(u)' / 'prim(a)' -> (kind, element of tower)."""
    ast = parse_ast(item)
    if not isinstance(ast, Call) or ast.func not in ("log", "exp", "prim") or len(ast.args) != 1 or ast.kwargs:
        raise ParseError("a generator is written log(...), exp(...) or prim(...)", 0)
    ev = _Evaluator(tower)
    arg = ev.lift(ev.eval(ast.args[0]))
    if ev.tower is not tower:
        raise DomainError(f"the argument of {item!r} needs generators not yet in the tower")
    if not arg.is_field():
        raise DomainError(f"the argument of {item!r} contains logarithms of constants")
    return ast.func, arg.field_part()


__all__ = ["parse", "parse_ast", "parse_generator_spec", "tokenize", "Parsed", "POLYLOG_FUNCS"]
