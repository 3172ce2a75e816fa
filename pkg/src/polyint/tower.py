"""Differential field towers Q(x)(t1, ..., tn) of transcendental monomials.

Every element is a sympy ``FracElement`` of the tower's rational function
field, which keeps numerator and denominator coprime and gives canonical
equality.  Generators are named ``x`` (or the chosen base variable) and
``t1, t2, ...``; the tower records what each ``ti`` means and its
derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field

from .errors import DependentGenerator, DomainError
from .linalg import solve_affine, to_fraction

KINDS = ("base", "log", "exp", "prim")


@dataclass(frozen=True)
class Monomial:
    """One tower generator.

    ``arg`` is the log/exp argument, or the derivative for a primitive, as a
    sympy expression in the generator names of the levels below.
    """

    kind: str
    level: int
    name: str
    arg: sympy.Expr | None = None


@dataclass(frozen=True)
class Absorption:
    """Bookkeeping for a log generator t = log(g).

    log_of(g) = coeff * pivot + sum(rest) + remainder over the lower tower,
    so once t exists the symbol ``pivot`` is rewritten as
    (t - sum(rest) - remainder) / coeff.
    """

    pivot: object
    coeff: Fraction
    rest: tuple
    remainder: sympy.Expr


def _names(var, n):
    return [var] + [f"t{i}" for i in range(1, n)]


class Tower:
    """An ordered list of monomials with the induced derivation."""

    def __init__(self, monomials, absorptions=None):
        self.monomials = tuple(monomials)
        if not self.monomials or self.monomials[0].kind != "base":
            raise DomainError("a tower starts with its base variable")
        self.absorptions = dict(absorptions or {})
        names = [m.name for m in self.monomials]
        fld = field(",".join(names), QQ)
        self.field = fld[0]
        self.gens = tuple(fld[1:])
        self.derivs = []
        for m in self.monomials:
            if m.kind == "base":
                self.derivs.append(self.field.one)
            elif m.kind == "log":
                u = self.from_expr(m.arg)
                self.derivs.append(self._derive_partial(u, len(self.derivs)) / u)
            elif m.kind == "exp":
                u = self.from_expr(m.arg)
                self.derivs.append(self._derive_partial(u, len(self.derivs)) * self.gens[m.level])
            else:
                self.derivs.append(self.from_expr(m.arg))
        self._restricted = {}

    # -- construction ---------------------------------------------------
    @classmethod
    def base(cls, var="x"):
        return cls([Monomial("base", 0, var)])

    @property
    def var(self):
        return self.monomials[0].name

    @property
    def level(self):
        """Index of the top generator."""
        return len(self.monomials) - 1

    @property
    def top(self):
        return self.monomials[-1]

    def __repr__(self):
        return "Tower[" + ", ".join(str(self.display_gen(i)) for i in range(len(self.monomials))) + "]"

    def __eq__(self, other):
        return isinstance(other, Tower) and self.monomials == other.monomials

    def __hash__(self):
        return hash(self.monomials)

    def restrict(self, level):
        """The subtower of generators 0..level."""
        if level >= self.level:
            return self
        if level < 0:
            raise DomainError("a tower keeps at least its base variable")
        if level not in self._restricted:
            ab = {k: v for k, v in self.absorptions.items() if k <= level}
            self._restricted[level] = Tower(self.monomials[: level + 1], ab)
        return self._restricted[level]

    def extend(self, kind, arg):
        """Return the tower with one more generator of the given kind.

        ``arg`` is an element (or sympy expression) of this tower: the log or
        exp argument, or the derivative of a primitive.
        """
        if kind not in ("log", "exp", "prim"):
            raise DomainError(f"unknown monomial kind {kind!r}")
        a = self(arg)
        n = self.level + 1
        name = f"t{n}"
        absorptions = dict(self.absorptions)
        if kind == "log":
            absorptions[n] = self._check_log(a)
        elif kind == "exp":
            self._check_exp(a)
        mono = Monomial(kind, n, name, a.as_expr())
        return Tower(self.monomials + (mono,), absorptions)

    def _check_log(self, g):
        from .logsym import log_of

        if g == 0:
            raise DomainError("log(0) is undefined")
        if self.level_of(g) < 0:
            raise DomainError(f"log({self.display(g)}) is a constant; it would add a new constant")
        comb = log_of(self, g)
        fresh = [s for s in comb.coeffs if not s.is_constant]
        if not fresh:
            rel = comb.display_text()
            raise DependentGenerator(
                f"log({self.display(g)}) - ({rel}) is constant", relation=comb
            )
        pivot = max(fresh, key=lambda s: s.sort_key)
        rest = tuple((s, c) for s, c in comb.coeffs.items() if s != pivot)
        return Absorption(pivot, comb.coeffs[pivot], rest, comb.remainder.as_expr())

    def _check_exp(self, u):
        if self.is_constant(u):
            raise DomainError(f"exp({self.display(u)}) is a constant")
        basis, labels = [], []
        for m in self.monomials[1:]:
            if m.kind == "log":
                basis.append(self.derivs[m.level])
                labels.append(self.display_gen(m.level))
            elif m.kind == "exp":
                basis.append(self.derive(self.from_expr(m.arg)))
                labels.append(self.display(self.from_expr(m.arg)))
        rel = rational_relation(self.derive(u), basis)
        if rel is not None:
            terms = " + ".join(f"({c})*{lab}" for c, lab in zip(rel, labels) if c != 0) or "0"
            raise DependentGenerator(
                f"exp({self.display(u)}) is dependent: {self.display(u)} - ({terms}) is constant",
                relation=rel,
            )

    # -- coercion -------------------------------------------------------
    def from_expr(self, expr):
        return self.field.from_expr(sympy.sympify(expr))

    def __call__(self, e):
        """Coerce e into this tower's field."""
        if isinstance(e, FracElement):
            if e.field is self.field:
                return e
            return e.set_field(self.field)
        if isinstance(e, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(e, int):
            return self.field(e)
        if isinstance(e, Fraction):
            return self.field(QQ(e.numerator, e.denominator))
        if hasattr(e, "ring") and hasattr(e, "terms"):
            return self.field(e.set_ring(self.field.ring))
        if isinstance(e, sympy.Basic):
            return self.from_expr(e)
        return self.field(QQ(to_fraction(e).numerator, to_fraction(e).denominator))

    def constant(self, c):
        return self(Fraction(c))

    # -- derivation -----------------------------------------------------
    def _derive_partial(self, e, upto):
        """Derivative of e using the derivatives of generators below ``upto``."""
        total = self.field.zero
        for i in range(upto):
            pe = e.diff(self.gens[i])
            if pe:
                total += pe * self.derivs[i]
        return total

    def derive(self, e):
        e = self(e)
        return self._derive_partial(e, len(self.gens))

    def is_constant(self, e):
        return self.derive(e) == 0

    def normalize(self, e):
        return self(e)

    def level_of(self, e):
        """Highest generator index occurring in e, or -1 for constants."""
        e = self(e)
        lv = -1
        for poly in (e.numer, e.denom):
            degs = poly.degrees()
            for i in range(len(degs) - 1, lv, -1):
                if degs[i] > 0:
                    lv = i
                    break
        return lv

    def to_constant(self, e):
        """Return e as a Fraction; e must have level -1."""
        e = self(e)
        if self.level_of(e) >= 0:
            raise DomainError(f"{self.display(e)} is not a rational constant")
        return to_fraction(e.numer.LC) / to_fraction(e.denom.LC)

    # -- display --------------------------------------------------------
    @cached_property
    def _display_map(self):
        out = {}
        for m in self.monomials:
            sym = sympy.Symbol(m.name)
            if m.kind == "base":
                out[sym] = sym
            elif m.kind == "prim":
                out[sym] = sympy.Function(f"prim{m.level}")(sympy.Symbol(self.var))
            else:
                inner = m.arg.xreplace(out)
                out[sym] = (sympy.log if m.kind == "log" else sympy.exp)(inner, evaluate=False)
        return out

    def display_gen(self, i):
        return self._display_map[sympy.Symbol(self.monomials[i].name)]

    def display(self, e):
        """sympy expression of e in terms of log(...)/exp(...)."""
        e = self(e)
        return e.as_expr().xreplace(self._display_map)

    def text(self, e):
        return sympy_text(self.display(e))


def sympy_text(expr):
    return str(expr).replace("**", "^")


def rational_relation(target, basis):
    """Rational q with target = sum q_i basis_i, or None.

    All arguments are elements of one FracField; the test clears
    denominators and matches polynomial coefficients.
    """
    if not basis:
        return None if target != 0 else []
    elems = [target] + list(basis)
    den = elems[0].denom
    for e in elems[1:]:
        den = den.lcm(e.denom)
    polys = [(e.numer * den.exquo(e.denom)) for e in elems]
    monoms = set()
    for p in polys:
        monoms.update(p.keys())
    equations = []
    for mon in monoms:
        coeffs = {j: to_fraction(p.get(mon, 0)) for j, p in enumerate(polys[1:]) if p.get(mon, 0)}
        equations.append((coeffs, -to_fraction(polys[0].get(mon, 0))))
    sol = solve_affine(equations, len(basis))
    return sol


def build_tower(spec, var="x"):
    """Build a tower from descriptions like ["x", "log(x)", "exp(x)"].

    Each entry after the first is a string ``kind(argument)`` with kind in
    log/exp/prim, or a pair (kind, argument).  Arguments may use ``x`` and
    the names ``t1, t2, ...`` of earlier generators.
    """
    items = list(spec)
    if items and items[0] in ("x", var, ("base", var)):
        items = items[1:]
    tower = Tower.base(var)
    for item in items:
        if isinstance(item, str):
            from .frontend.parser import parse_generator_spec

            kind, arg = parse_generator_spec(item, tower)
        else:
            kind, arg = item
            if isinstance(arg, str):
                arg = tower.from_expr(sympy.sympify(arg, locals={m.name: sympy.Symbol(m.name) for m in tower.monomials}))
        tower = tower.extend(kind, arg)
    return tower
