"""Integral expressions: elementary part, dilog terms and root-sum logs."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from ..constants import AlgebraicConstant, ResidueElement
from ..errors import DomainError
from ..logsym import LogPoly, as_logpoly, log_of
from ..tower import Tower, sympy_text


@dataclass(frozen=True)
class DilogTerm:
    """d * (D(1-h)/(1-h)) * log(h)^k."""

    d: Fraction
    h: object
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("dilog term exponent k must be positive")


def d_dilog_term(tower: Tower, term: DilogTerm) -> LogPoly:
    h = tower(term.h)
    if h == 0 or h == 1:
        raise DomainError("dilog term argument must differ from 0 and 1")
    one_minus = 1 - h
    lead = tower.derive(one_minus) / one_minus * tower.constant(term.d)
    return log_of(tower, h).to_logpoly() ** term.k * lead


@dataclass(frozen=True)
class RootSumLog:
    """sum over roots a of minpoly of  a * log(S(a, x)).

    ``minpoly`` holds rational coefficients (low degree first, monic) and
    ``coeffs`` the coefficients in a of S, each a polynomial in the base
    variable given as a sympy expression.
    """

    minpoly: tuple
    coeffs: tuple
    name: str = "a"

    def s_expr(self):
        a = sympy.Symbol(self.name)
        return sympy.expand(sum(c * a**i for i, c in enumerate(self.coeffs)))

    def derive(self, tower: Tower):
        """Trace of a * S_x / S over Q(x)[a]/(minpoly), as a field element."""
        mod = [tower.constant(c) for c in self.minpoly]
        s = [tower.from_expr(c) for c in self.coeffs]
        sx = [tower.derive(c) for c in s]
        g = ResidueElement([tower.field.zero, tower.field.one], mod) * ResidueElement(sx, mod)
        g = g / ResidueElement(s, mod)
        n = len(self.minpoly) - 1
        total = tower.field.zero
        for i, gi in enumerate(g.coeffs):
            if gi != 0:
                total += gi * tower.constant(power_trace(self.minpoly, i))
        return total

    def constant(self):
        return AlgebraicConstant(self.name, self.minpoly)

    def display(self, tower=None):
        a = sympy.Symbol(self.name)
        return sympy.Function("rootsum")(
            sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.minpoly)], a).as_expr(),
            a * sympy.log(self.s_expr(), evaluate=False),
        )

    def text(self):
        return sympy_text(self.display())

    def renamed(self, name):
        old, new = sympy.Symbol(self.name), sympy.Symbol(name)
        return RootSumLog(self.minpoly, tuple(sympy.sympify(c).xreplace({old: new}) for c in self.coeffs), name)


def power_trace(minpoly, k):
    """Sum of k-th powers of the roots of a monic rational polynomial."""
    n = len(minpoly) - 1
    mod = [Fraction(c) for c in minpoly]
    ak = ResidueElement([Fraction(0)] * k + [Fraction(1)], mod)
    total = Fraction(0)
    for i in range(n):
        prod = ak * ResidueElement([Fraction(0)] * i + [Fraction(1)], mod)
        c = prod.coeffs
        total += c[i] if i < len(c) else 0
    return total


@dataclass
class IntegralExpr:
    """E + sum of dilog terms, with E a log polynomial plus root-sum logs."""

    tower: Tower
    elementary: LogPoly
    terms: list = dc_field(default_factory=list)
    rootsums: list = dc_field(default_factory=list)

    @classmethod
    def zero(cls, tower):
        return cls(tower, LogPoly.zero(tower))

    @property
    def new_constants(self):
        return [r.constant() for r in self.rootsums]

    def derive(self) -> LogPoly:
        t = self.tower
        out = self.elementary.derive()
        for term in self.terms:
            out = out + d_dilog_term(t, term)
        for r in self.rootsums:
            out = out + LogPoly.const(t, r.derive(t))
        return out

    def to_tower(self, tower):
        return IntegralExpr(
            tower,
            as_logpoly(tower, self.elementary),
            [DilogTerm(tm.d, tower(tm.h), tm.k) for tm in self.terms],
            list(self.rootsums),
        )

    def __add__(self, other):
        return IntegralExpr(
            self.tower,
            self.elementary + as_logpoly(self.tower, other.elementary),
            merge_terms(self.tower, list(self.terms) + [DilogTerm(t.d, self.tower(t.h), t.k) for t in other.terms]),
            list(self.rootsums) + list(other.rootsums),
        )

    # -- elementary decomposition --------------------------------------
    def rational_part(self):
        return self.elementary.field_part()

    def log_part(self):
        """Degree-one monomials with constant coefficients: [(c, LogSym)]."""
        out = []
        for m, c in self.elementary.terms.items():
            if len(m) == 1 and m[0][1] == 1 and self.tower.level_of(c) < 0:
                out.append((self.tower.to_constant(c), m[0][0]))
        return sorted(out, key=lambda cs: cs[1].sort_key)

    def logpoly_part(self):
        logs = {((s, 1),) for _, s in self.log_part()}
        return LogPoly(self.tower, {m: c for m, c in self.elementary.terms.items() if m and m not in logs})


def merge_terms(tower, terms):
    """Combine dilog terms with equal (h, k) and drop zero coefficients."""
    acc = {}
    order = []
    for t in terms:
        key = (str(tower(t.h)), t.k)
        if key not in acc:
            acc[key] = [Fraction(0), tower(t.h), t.k]
            order.append(key)
        acc[key][0] += Fraction(t.d)
    return [DilogTerm(acc[k][0], acc[k][1], acc[k][2]) for k in order if acc[k][0] != 0]


def verify(expr: IntegralExpr, f) -> bool:
    """Exact check that the derivative of expr equals f."""
    return expr.derive() == as_logpoly(expr.tower, f)


__all__ = ["DilogTerm", "RootSumLog", "IntegralExpr", "d_dilog_term", "verify", "merge_terms", "power_trace"]
