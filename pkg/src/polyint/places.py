"""Places of the top-level function field F(t), valuations and divisors.

A finite place is a monic irreducible polynomial in the top generator t
with coefficients in the field one level down; the infinite place has
local parameter 1/t.  Residue fields of places of degree > 1 are handled
as ``ResidueElement`` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import chain

import sympy

from .constants import ResidueElement
from .errors import DomainError
from .linalg import hnf


@dataclass(frozen=True)
class Place:
    """Finite(poly) or Infinite, relative to generator ``level``."""

    level: int
    key: str | None  # printed polynomial; None for the infinite place
    poly: object = dc_field(compare=False, hash=False, repr=False)
    degree: int = dc_field(compare=False, default=1)

    @classmethod
    def finite(cls, tower, poly, level=None):
        if level is None:
            level = tower.level
        p = tower(poly)
        if p.denom.degree(level) != 0:
            raise DomainError("a finite place is a polynomial in the top generator")
        d = p.numer.degree(level)
        if d <= 0:
            raise DomainError("a finite place has positive degree")
        lc = tower.field(p.numer.coeff_wrt(level, d)) / tower.field(p.denom)
        p = p / lc
        return cls(level, str(p), p, d)

    @classmethod
    def infinite(cls, level):
        return cls(level, None, None, 1)

    @property
    def is_infinite(self):
        return self.key is None

    @property
    def sort_key(self):
        return (1, 0, "") if self.is_infinite else (0, self.degree, self.key)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return "Place(oo)" if self.is_infinite else f"Place({self.key})"


class Divisor(dict):
    """Mapping Place -> nonzero order."""

    def degree(self):
        return sum(o * p.degree for p, o in self.items())

    def __add__(self, other):
        out = Divisor(self)
        for p, o in other.items():
            out[p] = out.get(p, 0) + o
            if out[p] == 0:
                del out[p]
        return out

    def scaled(self, n):
        return Divisor({p: o * n for p, o in self.items()} if n else {})


def _top(tower, level):
    return tower.level if level is None else level


def _check_nonzero(f):
    if f == 0:
        raise DomainError("valuation of 0 is undefined")


def _multiplicity(poly, pnumer):
    n = 0
    while True:
        q, r = poly.div(pnumer)
        if r:
            return n
        poly = q
        n += 1


def order_at(tower, f, place):
    f = tower(f)
    _check_nonzero(f)
    lv = place.level
    if place.is_infinite:
        return f.denom.degree(lv) - f.numer.degree(lv)
    pn = tower(place.poly).numer
    return _multiplicity(f.numer, pn) - _multiplicity(f.denom, pn)


def divisor_of(tower, f, level=None):
    """Divisor of f as a function of the generator at ``level``."""
    lv = _top(tower, level)
    f = tower(f)
    _check_nonzero(f)
    from .logsym import _factor

    div = Divisor()
    for poly, sign in ((f.numer, 1), (f.denom, -1)):
        _, factors = _factor(tower, poly)
        for P, e in factors:
            if P.degree(lv) > 0:
                pl = Place.finite(tower, tower.field(P), lv)
                div[pl] = div.get(pl, 0) + sign * e
    inf = f.denom.degree(lv) - f.numer.degree(lv)
    if inf:
        div[Place.infinite(lv)] = inf
    return Divisor({p: o for p, o in div.items() if o})


def coeffs_in(tower, poly, level):
    """Coefficients (low degree first) of a polynomial in generator ``level``."""
    d = poly.degree(level)
    return [tower.field(poly.coeff_wrt(level, i)) for i in range(max(d, 0) + 1)]


def _eval_at(tower, poly, level, c):
    acc = tower.field.zero
    for coeff in reversed(coeffs_in(tower, poly, level)):
        acc = acc * c + coeff
    return acc


def leading_coeff(tower, f, place):
    """Value of f / t^ord at the place (t the canonical local parameter)."""
    f = tower(f)
    _check_nonzero(f)
    lv = place.level
    if place.is_infinite:
        num = f.numer.coeff_wrt(lv, f.numer.degree(lv))
        den = f.denom.coeff_wrt(lv, f.denom.degree(lv))
        return tower.field(num) / tower.field(den)
    k = order_at(tower, f, place)
    g = f / tower(place.poly) ** k
    pc = coeffs_in(tower, (tower(place.poly)).numer, lv)
    if place.degree == 1:
        # place is t - c after normalization
        c = -pc[0] / pc[1]
        return _eval_at(tower, g.numer, lv, c) / _eval_at(tower, g.denom, lv, c)
    nc, dc = coeffs_in(tower, g.numer, lv), coeffs_in(tower, g.denom, lv)
    if all(tower.level_of(c) < 0 for c in chain(nc, dc, pc)):
        # constant residue field: plain rationals are far cheaper
        nc, dc, pc = ([tower.to_constant(c) for c in cs] for cs in (nc, dc, pc))
    return ResidueElement(nc, pc) / ResidueElement(dc, pc)


def rational_place(tower, c, level=None):
    """The degree-one place t - c."""
    lv = _top(tower, level)
    return Place.finite(tower, tower.gens[lv] - tower(c), lv)


@dataclass
class IndependentBasis:
    psi: list
    exponents: list  # exponents[i][j]: f_i = c_i * prod psi_j ** e_ij
    constants: list
    places: list
    psi_orders: list  # psi_orders[j][a]: ord(psi_j, places[a])


def _divisor_rows(tower, fs, level):
    divs = [divisor_of(tower, f, level) for f in fs]
    places = sorted({p for d in divs for p in d})
    rows = [[d.get(p, 0) for p in places] for d in divs]
    return places, rows


def independent_basis(tower, fs, level=None):
    """Multiplicatively independent generators of <fs> modulo lower elements."""
    lv = _top(tower, level)
    fs = [tower(f) for f in fs]
    for f in fs:
        _check_nonzero(f)
    places, rows = _divisor_rows(tower, fs, lv)
    if not places:
        return IndependentBasis([], [[] for _ in fs], list(fs), [], [])
    H, U = hnf(rows)
    rank = sum(1 for r in H if any(r))
    psi = []
    for j in range(rank):
        g = tower.field.one
        for i, e in enumerate(U[j]):
            if e:
                g *= fs[i] ** e
        psi.append(g)
    pivots = [next(c for c, v in enumerate(H[j]) if v) for j in range(rank)]
    exps = []
    for r in rows:
        rem = list(r)
        e = []
        for j, pc in enumerate(pivots):
            q, m = divmod(rem[pc], H[j][pc])
            if m:
                raise AssertionError("row outside the HNF lattice")
            e.append(q)
            rem = [a - q * b for a, b in zip(rem, H[j])]
        if any(rem):
            raise AssertionError("row outside the HNF lattice")
        exps.append(e)
    consts = []
    for f, e in zip(fs, exps):
        g = f
        for p, k in zip(psi, e):
            if k:
                g /= p ** k
        consts.append(g)
    return IndependentBasis(psi, exps, consts, places, [list(H[j]) for j in range(rank)])


def place_text(tower, place):
    if place.is_infinite:
        return "oo"
    return str(sympy.sympify(tower.display(place.poly))).replace("**", "^")


__all__ = [
    "Place",
    "Divisor",
    "order_at",
    "divisor_of",
    "leading_coeff",
    "independent_basis",
    "IndependentBasis",
    "rational_place",
    "coeffs_in",
    "place_text",
    "Fraction",
]
