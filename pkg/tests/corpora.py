"""Seeded random inputs shared by the acceptance and property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from polyint.engine.terms import DilogTerm, IntegralExpr
from polyint.logsym import LogPoly, log_of
from polyint.places import independent_basis
from polyint.tower import Tower

RATIONAL_INTEGRANDS = [
    "1/(x^2-1)",
    "1/(x^2+1)",
    "1/x^2",
    "1/x",
    "x^3+2*x-7",
    "1/(x-1)^2",
    "(x+1)/(x^2+x+1)",
    "1/(x^3+x+1)",
    "x/(x^2+1)^2",
    "1/(x^4+1)",
    "(2*x+3)/(x^2+3*x+2)",
    "1/(x^2-2)",
    "1/((x-1)*(x-2)*(x-3))",
    "x^4/(x^2+1)",
    "1/(x^3-1)",
    "3/(x^2+4)",
    "(x^2+1)/(x^3-x)",
    "1/(x^2*(x+1))",
    "1/(x^4-1)",
    "5*x/(x^2-4)^3",
    "1/(x^2+x+1)^2",
    "(x^5+1)/(x^3-x)",
    "1/(2*x+1)",
    "(x^3-3*x)/(x^4-2*x^2+2)",
    "(3*x^2+1)/(x^3+x-5)",
]


def random_poly(rng, tower, deg, lo=-3, hi=3):
    x = tower.gens[0]
    coeffs = [rng.randint(lo, hi) for _ in range(deg)] + [rng.choice([1, -1, 2])]
    return sum((tower.constant(c) * x**i for i, c in enumerate(coeffs)), tower.field.zero)


def random_h(rng, tower, max_deg=3):
    """Nonconstant h in Q(x) with numerator and denominator degrees summing to <= max_deg."""
    while True:
        dn = rng.randint(0, max_deg)
        dd = rng.randint(0, max_deg - dn)
        if dn + dd == 0:
            continue
        h = random_poly(rng, tower, dn) / random_poly(rng, tower, dd)
        if tower.level_of(h) >= 0 and h != 1:
            return h


def dilog_corpus(seed=1, n=100):
    """(tower, expr) pairs: one or two k = 1 terms with random h and rational d."""
    rng = random.Random(seed)
    T = Tower.base()
    out = []
    for _ in range(n):
        terms = [
            DilogTerm(Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)), random_h(rng, T), 1)
            for _ in range(rng.randint(1, 2))
        ]
        out.append((T, IntegralExpr(T, LogPoly.zero(T), terms)))
    return out


def prep_ext_corpus(seed=3, n=200):
    """(hs, place-or-None) with places drawn from the default, zeros/poles and infinity."""
    from polyint.places import Place, divisor_of, rational_place

    rng = random.Random(seed)
    T = Tower.base()
    out = []
    for _ in range(n):
        hs = [random_h(rng, T) for _ in range(rng.randint(1, 2))]
        mode = rng.randrange(4)
        place = None
        if mode == 1:
            place = rational_place(T, rng.randint(-3, 3))
        elif mode == 2:
            place = Place.infinite(0)
        elif mode == 3:
            pts = [p for h in hs for f in (h, 1 - h) for p in divisor_of(T, f) if p.degree == 1]
            place = rng.choice(pts) if pts else None
        out.append((T, hs, place))
    return out


def _theta_poly(rng, tower, deg, no_const=False):
    x, th = tower.gens
    while True:
        p = tower.field.zero
        for i in range(deg + 1):
            c = rng.randint(-3, 3) * x ** rng.randint(0, 1) + rng.randint(-2, 2)
            p += tower(c) * th**i
        p += th ** (deg + 1)
        if tower.level_of(p) == 1 and (not no_const or p.numer.coeff_wrt(1, 0) != 0):
            return p


def pole_indep_corpus(seed=5, n=100):
    """Instances (tower, a, psi, s, expected) for the membership oracle."""
    rng = random.Random(seed)
    out = []
    towers = []
    for kind in ("log", "exp"):
        B = Tower.base()
        towers.append(B.extend(kind, B.gens[0]))
    for i in range(n):
        T = towers[i % 2]
        x, th = T.gens
        exp_case = T.top.kind == "exp"
        while True:
            raw = [_theta_poly(rng, T, rng.randint(0, 1), exp_case) for _ in range(rng.randint(1, 3))]
            ib = independent_basis(T, raw + ([th] if exp_case else []), 1)
            if len(ib.psi) == len(raw) + exp_case:
                break
        psi = raw
        a = [T.constant(Fraction(rng.randint(-3, 3), rng.randint(1, 3))) * x ** rng.randint(0, 2) for _ in psi]
        if all(c == 0 for c in a):
            a[rng.randrange(len(a))] = T(1) / (x + rng.randint(1, 3))
        s = _theta_poly(rng, T, rng.randint(0, 2)) / _theta_poly(rng, T, rng.randint(0, 1))
        out.append((T, a, psi, s, False))
    for i in range(n):
        T = towers[i % 2]
        x, th = T.gens
        psi = [_theta_poly(rng, T, rng.randint(0, 1), True) for _ in range(rng.randint(1, 3))]
        a = [T.field.zero for _ in psi]
        s = T(random_h(rng, T))
        out.append((T, a, psi, s, True))
    return out


def _zero_packet(tower, h, d, kind):
    """IntegralExpr with derivative 0 whose terms have arguments h and 1-h or 1/h."""
    L = lambda g: log_of(tower, g).to_logpoly()  # noqa: E731
    d = Fraction(d)
    if kind == 0:
        elem = -(L(1 - h) * L(h)) * tower.constant(d)
        return IntegralExpr(tower, elem, [DilogTerm(d, h, 1), DilogTerm(d, 1 - h, 1)])
    elem = -(L(h) ** 2) * tower.constant(d / 2)
    return IntegralExpr(tower, elem, [DilogTerm(d, h, 1), DilogTerm(d, 1 / h, 1)])


def descent_corpus(kind, seed=11, n=20):
    """F-level expressions over Q(x, t) hidden behind zero packets with t-dependent arguments."""
    rng = random.Random(seed)
    B = Tower.base()
    T = B.extend(kind, B.gens[0])
    x, th = T.gens
    out = []
    for _ in range(n):
        base_terms = [
            DilogTerm(Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3)), T(random_h(rng, B, 2)), 1)
            for _ in range(rng.randint(1, 2))
        ]
        expr = IntegralExpr(T, LogPoly.zero(T), base_terms)
        f = expr.derive()
        for _ in range(rng.randint(1, 2)):
            g = T(random_h(rng, B, 1))
            h = g * th ** rng.choice([1, -1, 2]) if rng.random() < 0.5 else (th + rng.randint(-2, 2) * x) / g
            if h == 1 or T.level_of(h) < 1:
                continue
            expr = expr + _zero_packet(T, h, Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2)), rng.randrange(2))
        out.append((T, expr, f))
    return out
