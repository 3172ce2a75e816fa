"""Integration of rational functions in the base variable.

Hermite reduction splits off the rational part; the remaining simple-pole
part goes through the Lazard-Rioboo-Trager resultant method.  Rational
residues give ordinary logs, irreducible residue factors of higher degree
give root-sum logs over their roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy
from sympy import QQ, Poly
from sympy.integrals.rationaltools import ratint_logpart

from ..errors import DomainError
from ..linalg import to_fraction
from .terms import RootSumLog


def to_upoly(tower, p):
    """A level-0 ring element as a univariate sympy Poly."""
    data = {}
    for m, c in p.items():
        if any(m[1:]):
            raise DomainError("expected a function of the base variable only")
        data[(m[0],)] = c
    return Poly.from_dict(data or {(0,): 0}, sympy.Symbol(tower.var), domain=QQ)


def from_upoly(tower, poly):
    n = len(tower.gens)
    ring = tower.field.ring
    data = {(m[0],) + (0,) * (n - 1): QQ.convert(c) for m, c in poly.as_dict().items()}
    return tower.field(ring.from_dict(data))


def split(tower, e):
    e = tower(e)
    return to_upoly(tower, e.numer), to_upoly(tower, e.denom)


def _ext_euclid(a, b, c):
    """s, t with s*a + t*b = c and deg s < deg b (a, b coprime)."""
    s, t, g = a.gcdex(b)
    s = (s * c).quo(g)
    q, s = s.div(b)
    t = (c - s * a).quo(b)
    return s, t


def hermite_reduce(num, den):
    """Return (g_num, g_den, poly, a, ds) with num/den = (g_num/g_den)' + poly + a/ds.

    ds is squarefree and deg a < deg ds.
    """
    x = den.gen
    poly, num = num.div(den)
    g_num, g_den = Poly(0, x, domain=QQ), Poly(1, x, domain=QQ)
    dm = den.gcd(den.diff(x))
    ds = den.quo(dm)
    a = num
    while dm.degree() > 0:
        dm2 = dm.gcd(dm.diff(x))
        dms = dm.quo(dm2)
        b, c = _ext_euclid((-ds * dm.diff(x)).quo(dm), dms, a)
        a = c - b.diff(x) * ds.quo(dms)
        # g += b / dm
        g_num, g_den = g_num * dm + b * g_den, g_den * dm
        dm = dm2
    extra, a = a.div(ds)
    poly = poly + extra
    if not g_num.is_zero:
        common = g_num.gcd(g_den)
        g_num, g_den = g_num.quo(common), g_den.quo(common)
    return g_num, g_den, poly, a, ds


def hermite(tower, e):
    """(g, h) in the tower field with e = D g + h, h proper with squarefree denominator."""
    e = tower(e)
    if e == 0:
        return tower.field.zero, tower.field.zero
    num, den = split(tower, e)
    g_num, g_den, poly, a, ds = hermite_reduce(num, den)
    g = from_upoly(tower, g_num) / from_upoly(tower, g_den) + from_upoly(tower, poly.integrate())
    h = from_upoly(tower, a) / from_upoly(tower, ds)
    return g, h


@dataclass
class RationalIntegral:
    rational: object
    logs: list = dc_field(default_factory=list)  # (Fraction, argument element)
    rootsums: list = dc_field(default_factory=list)


def log_part(tower, a, d, name_start=1):
    """Logs for the integral of a/d (d squarefree, deg a < deg d)."""
    x = d.gen
    t = sympy.Dummy("t")
    logs, sums = [], []
    if a.is_zero:
        return logs, sums
    for s_poly, r_poly in ratint_logpart(a, d, x, t):
        r_poly = Poly(r_poly.as_expr(), t, domain=QQ)
        s_expr = s_poly.as_expr()
        _, factors = r_poly.factor_list()
        for fac, _ in factors:
            if fac.degree() == 1:
                c0, c1 = fac.all_coeffs()[1], fac.all_coeffs()[0]
                root = -QQ.convert(c0) / QQ.convert(c1)
                if root == 0:
                    continue
                root = to_fraction(root)
                arg = Poly(s_expr.subs(t, sympy.Rational(root.numerator, root.denominator)), x, domain=QQ)
                logs.append((root, from_upoly(tower, arg)))
            else:
                monic = fac.monic()
                if monic.eval(0) == 0:
                    continue
                name = f"a{name_start + len(sums)}"
                reduced = sympy.rem(sympy.Poly(s_expr, t), sympy.Poly(monic.as_expr(), t), t)
                rp = Poly(reduced.as_expr(), t)
                cs = [sympy.expand(c) for c in reversed(rp.all_coeffs())]
                minpoly = tuple(to_fraction(QQ.convert(c)) for c in reversed(monic.all_coeffs()))
                sums.append(RootSumLog(minpoly, tuple(cs), name))
    return logs, sums


def integrate_rational(tower, e, name_start=1) -> RationalIntegral:
    """Antiderivative of a rational function of the base variable."""
    e = tower(e)
    if e == 0:
        return RationalIntegral(tower.field.zero)
    num, den = split(tower, e)
    g_num, g_den, poly, a, ds = hermite_reduce(num, den)
    g = from_upoly(tower, g_num) / from_upoly(tower, g_den) + from_upoly(tower, poly.integrate())
    logs, sums = log_part(tower, a, ds, name_start)
    return RationalIntegral(g, logs, sums)
