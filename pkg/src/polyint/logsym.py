"""Canonical logarithm symbols, log combinations and log polynomials.

A logarithm of a tower element is split over a free generating set of the
multiplicative group: monic irreducible factors (in their top generator)
and rational primes.  Signs and other roots of unity contribute nothing, so
log(-f) = log(f).  Logs of exponential generators collapse to their
argument, and log generators absorb one symbol each.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy
from sympy import factorint
from sympy.polys.fields import FracElement

from .errors import DomainError
from .linalg import nullspace, primitive_integer_vector, to_fraction
from .tower import Tower, sympy_text


@dataclass(frozen=True)
class LogSym:
    """log(arg) for a canonical argument.

    ``level`` is the top generator of ``arg`` (monic in it), or -1 for a
    rational prime.  Identity is (level, key) with key the printed argument.
    """

    level: int
    key: str
    elem: object = dc_field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, level, elem):
        return cls(level, str(elem), elem)

    @property
    def is_constant(self):
        return self.level < 0

    @property
    def sort_key(self):
        return (self.level, len(self.key), self.key)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def arg_in(self, tower):
        return tower(self.elem)

    def display(self, tower=None):
        if self.level < 0:
            return sympy.log(sympy.Integer(int(self.key)), evaluate=False)
        if tower is None:
            return sympy.log(self.elem.as_expr(), evaluate=False)
        return sympy.log(tower.display(self.elem), evaluate=False)

    def __repr__(self):
        return f"log({self.key})"


def prime_sym(tower, p):
    return LogSym(-1, str(p), tower(p))


def _factor(tower, poly):
    cache = tower.__dict__.setdefault("_factor_cache", {})
    try:
        return cache[poly]
    except KeyError:
        res = poly.factor_list()
        cache[poly] = res
        return res


def _decompose(tower, f, acc, rem):
    """Accumulate log(f) into acc (symbol -> coefficient) and rem (list)."""
    fld = tower.field
    while True:
        level = tower.level_of(f)
        if level < 0:
            c = tower.to_constant(f)
            for p, e in factorint(abs(c.numerator)).items():
                acc[prime_sym(tower, p)] += e
            for p, e in factorint(c.denominator).items():
                acc[prime_sym(tower, p)] -= e
            return
        mono = tower.monomials[level]
        gen = tower.gens[level]
        lower = fld.one
        for poly, sign in ((f.numer, 1), (f.denom, -1)):
            content, factors = _factor(tower, poly)
            lower *= fld(content) ** sign
            for P, e in factors:
                d = P.degree(level)
                if d == 0:
                    lower *= fld(P) ** (sign * e)
                    continue
                lc = fld(P.coeff_wrt(level, d))
                monic = fld(P) / lc
                lower *= lc ** (sign * e)
                if mono.kind == "exp" and monic == gen:
                    rem.append(tower.from_expr(mono.arg) * (sign * e))
                    continue
                acc[LogSym.of(level, monic)] += sign * e
        f = lower


def absorb(tower, acc, rem):
    """Rewrite symbols absorbed by log generators, lowest level first."""
    for i in sorted(tower.absorptions):
        ab = tower.absorptions[i]
        c = acc.pop(ab.pivot, 0)
        if c == 0:
            continue
        scale = Fraction(c) / ab.coeff
        for s, r in ab.rest:
            acc[s] -= scale * r
        rem.append((tower.gens[i] - tower.from_expr(ab.remainder)) * tower.constant(scale))


class LogCombination:
    """sum c_i log(s_i) + remainder with rational c_i."""

    __slots__ = ("tower", "coeffs", "remainder")

    def __init__(self, tower, coeffs, remainder=None):
        self.tower = tower
        self.coeffs = {s: Fraction(c) for s, c in coeffs.items() if c != 0}
        self.remainder = tower.field.zero if remainder is None else tower(remainder)

    def __add__(self, other):
        acc = defaultdict(Fraction, self.coeffs)
        for s, c in other.coeffs.items():
            acc[s] += c
        return LogCombination(self.tower, acc, self.remainder + self.tower(other.remainder))

    def __neg__(self):
        return LogCombination(self.tower, {s: -c for s, c in self.coeffs.items()}, -self.remainder)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q):
        q = Fraction(q)
        return LogCombination(
            self.tower, {s: c * q for s, c in self.coeffs.items()}, self.remainder * self.tower.constant(q)
        )

    def __mul__(self, q):
        return self.scale(q)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs and self.remainder == 0

    def __eq__(self, other):
        return isinstance(other, LogCombination) and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def derive(self):
        t = self.tower
        total = t.derive(self.remainder)
        for s, c in self.coeffs.items():
            if not s.is_constant:
                a = s.arg_in(t)
                total += t.constant(c) * t.derive(a) / a
        return total

    def to_logpoly(self):
        p = LogPoly.const(self.tower, self.remainder)
        for s, c in self.coeffs.items():
            p = p + LogPoly.sym(self.tower, s) * c
        return p

    def display(self):
        return self.to_logpoly().display()

    def display_text(self):
        return sympy_text(self.display())

    def __repr__(self):
        return f"LogCombination({self.display_text()})"


def log_of(tower: Tower, f) -> LogCombination:
    """Decompose log(f) over the canonical symbols of ``tower``."""
    f = tower(f)
    if f == 0:
        raise DomainError("log(0) is undefined")
    acc = defaultdict(Fraction)
    rem = []
    _decompose(tower, f, acc, rem)
    absorb(tower, acc, rem)
    return LogCombination(tower, acc, sum(rem, tower.field.zero))


@dataclass(frozen=True)
class Relation:
    coeffs: tuple
    remainder: object


def log_linear_relation(logs):
    """Rational c, not all zero, with sum c_i logs_i = g in the field."""
    logs = list(logs)
    if not logs:
        return None
    syms = sorted({s for lc in logs for s in lc.coeffs})
    # columns are the logs, rows the symbols: kernel vectors are relations
    rows = [[lc.coeffs.get(s, Fraction(0)) for lc in logs] for s in syms]
    kernel = nullspace(rows, len(logs))
    if not kernel:
        return None
    c = primitive_integer_vector(kernel[0])
    tower = logs[0].tower
    g = tower.field.zero
    for ci, lc in zip(c, logs):
        g += tower.constant(ci) * tower(lc.remainder)
    return Relation(tuple(Fraction(ci) for ci in c), g)


def _mono_key(pairs):
    return tuple(sorted(pairs, key=lambda se: se[0].sort_key))


def _mono_mul(a, b):
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return _mono_key(d.items())


class LogPoly:
    """A polynomial in log symbols with coefficients in a tower field.

    Monomials are tuples of (LogSym, exponent) pairs sorted by symbol; the
    empty tuple is the field part.
    """

    __slots__ = ("tower", "terms")

    def __init__(self, tower, terms=None):
        self.tower = tower
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, tower):
        return cls(tower)

    @classmethod
    def const(cls, tower, c):
        return cls(tower, {(): tower(c)})

    @classmethod
    def sym(cls, tower, s):
        return cls(tower, {((s, 1),): tower.field.one})

    @classmethod
    def log(cls, tower, f):
        return log_of(tower, f).to_logpoly()

    def _lift(self, x):
        if isinstance(x, LogPoly):
            if x.tower is self.tower or x.tower == self.tower:
                return x
            return x.to_tower(self.tower)
        return LogPoly.const(self.tower, x)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return LogPoly(self.tower, t)

    __radd__ = __add__

    def __neg__(self):
        return LogPoly(self.tower, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LogPoly):
            c = self.tower(other)
            return LogPoly(self.tower, {m: v * c for m, v in self.terms.items()})
        other = self._lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2) if m1 and m2 else (m1 or m2)
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return LogPoly(self.tower, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LogPoly):
            if not other.is_field():
                raise DomainError("division by a polynomial in logarithms")
            other = other.field_part()
        c = self.tower(other)
        if c == 0:
            raise DomainError("division by zero")
        return self * (1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("log polynomials only take nonnegative integer powers")
        out = LogPoly.const(self.tower, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- queries --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_field(self):
        return all(m == () for m in self.terms)

    def field_part(self):
        return self.terms.get((), self.tower.field.zero)

    def coeff(self, mono):
        return self.terms.get(_mono_key(mono), self.tower.field.zero)

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def syms(self):
        return sorted({s for m in self.terms for s, _ in m})

    def level(self):
        """Highest tower level used by coefficients or symbol arguments."""
        lv = -1
        for m, c in self.terms.items():
            lv = max(lv, self.tower.level_of(c))
            for s, _ in m:
                lv = max(lv, s.level)
        return lv

    def __eq__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly.const(self.tower, other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    # -- calculus -------------------------------------------------------
    def sym_derivative(self, s):
        cache = self.tower.__dict__.setdefault("_symd_cache", {})
        if s not in cache:
            if s.is_constant:
                cache[s] = self.tower.field.zero
            else:
                a = s.arg_in(self.tower)
                cache[s] = self.tower.derive(a) / a
        return cache[s]

    def derive(self):
        t = self.tower
        out = {}

        def add(m, v):
            if v:
                out[m] = out[m] + v if m in out else v

        for m, c in self.terms.items():
            add(m, t.derive(c))
            for i, (s, e) in enumerate(m):
                ds = self.sym_derivative(s)
                if not ds:
                    continue
                rest = list(m)
                if e == 1:
                    rest.pop(i)
                else:
                    rest[i] = (s, e - 1)
                add(tuple(rest), c * ds * e)
        return LogPoly(t, out)

    # -- tower changes --------------------------------------------------
    def to_tower(self, tower):
        """Re-express in a tower extending (or equal to) this one."""
        out = LogPoly(tower)
        pivots = {ab.pivot: i for i, ab in tower.absorptions.items()}
        for m, c in self.terms.items():
            term = LogPoly.const(tower, tower(c))
            for s, e in m:
                if s in pivots:
                    base = log_of(tower, s.arg_in(tower)).to_logpoly()
                else:
                    base = LogPoly(tower, {((s, 1),): tower.field.one})
                term = term * base ** e
            out = out + term
        return out

    def subs(self, s, value):
        """Substitute the LogPoly ``value`` for symbol s."""
        out = LogPoly(self.tower)
        for m, c in self.terms.items():
            term = LogPoly.const(self.tower, c)
            for t, e in m:
                term = term * (value ** e if t == s else LogPoly(self.tower, {((t, e),): self.tower.field.one}))
            out = out + term
        return out

    # -- display --------------------------------------------------------
    def display(self):
        t = self.tower
        total = sympy.Integer(0)
        for m, c in sorted(self.terms.items(), key=lambda mc: [(s.sort_key, e) for s, e in mc[0]]):
            term = t.display(c)
            for s, e in m:
                term = term * s.display(t) ** e
            total = total + term
        return total

    def text(self):
        return sympy_text(self.display())

    def __repr__(self):
        return f"LogPoly({self.text()})"


def as_logpoly(tower, e):
    if isinstance(e, LogPoly):
        return e if e.tower == tower else e.to_tower(tower)
    if isinstance(e, LogCombination):
        return e.to_logpoly().to_tower(tower) if e.tower != tower else e.to_logpoly()
    return LogPoly.const(tower, e)


__all__ = [
    "LogSym",
    "LogCombination",
    "LogPoly",
    "Relation",
    "log_of",
    "log_linear_relation",
    "as_logpoly",
    "prime_sym",
    "FracElement",
]
