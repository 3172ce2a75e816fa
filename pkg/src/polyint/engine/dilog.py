"""Integration with dilogarithm terms over Q(x), heuristic H1.

A term d (D(1-h)/(1-h)) log(h) has simple poles at the zeros of 1 - h, and
its residues there are proportional (across log symbols) to the exponent
vector of h.  H1 reads those residues off the integrand, groups zeros with
proportional residue vectors into a candidate numerator Z of 1 - h, and
searches for h = (D - cZ)/D with D a product of log arguments and every
factor of D - cZ again a log argument.  The anharmonic orbit of each hit
(h, 1-h, 1/h, ...) joins the candidate list; the multipliers d are solved
for linearly inside ``ansatz_integrate``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from sympy import QQ, Poly

from ..linalg import primitive_integer_vector, to_fraction
from ..logsym import as_logpoly
from .ansatz import Failure, ansatz_integrate
from .elementary import flatten, integrate_elementary
from .rational import from_upoly, hermite, split, to_upoly
from .terms import verify

MAX_CANDIDATES = 200
MAX_DEN_DEGREE = 3


def _residues(num, den):
    """{irreducible factor Q: rational residue} for num/den with squarefree den."""
    out = {}
    dd = den.diff(den.gen)
    _, factors = den.factor_list()
    for q, _ in factors:
        q = q.monic()
        inv = dd.invert(q)
        r = (num * inv).rem(q)
        if r.degree() <= 0:
            out[q] = to_fraction(QQ.convert(r.LC())) if not r.is_zero else Fraction(0)
    return out


def _residue_table(tower, f, arg_polys):
    table = {}
    monos = sorted((m for m in f.terms if m), key=lambda m: [(s.sort_key, e) for s, e in m])
    for m in monos:
        _, h = hermite(tower, f.terms[m])
        if h == 0:
            continue
        num, den = split(tower, h)
        for q, r in _residues(num, den).items():
            if r == 0 or q in arg_polys:
                continue
            table.setdefault(q, {})[m] = r
    return monos, table


def _zero_factors(tower, f, arg_polys):
    return list(_residue_table(tower, f, arg_polys)[1])


def _zero_classes(tower, f, arg_polys):
    monos, table = _residue_table(tower, f, arg_polys)
    classes = {}
    for q, vec in table.items():
        m0 = next(m for m in monos if m in vec)
        key = tuple((str(m), vec[m] / vec[m0]) for m in monos if m in vec)
        classes.setdefault(key, []).append((q, vec[m0]))
    zs = []
    for members in classes.values():
        # one term's zeros share a sign; split mixed classes
        for part in ([m for m in members if m[1] > 0], [m for m in members if m[1] < 0]):
            if not part:
                continue
            ints = primitive_integer_vector([abs(r) for _, r in part])
            z = Poly(1, part[0][0].gen, domain=QQ)
            for (q, _), e in zip(part, ints):
                z = z * q**e
            zs.append(z)
            if len(part) == 1 and 2 * z.degree() <= MAX_DEN_DEGREE:
                zs.append(z**2)
    return zs


def _flist(poly):
    """Coefficients of a sympy Poly as Fractions, low degree first."""
    return [to_fraction(QQ.convert(c)) for c in reversed(poly.all_coeffs())]


def _fl_eval(c, r):
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * r + a
    return acc


def _fl_strip(c, allowed):
    """Divide out allowed monic factors; True iff a constant remains."""
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    for a in allowed:
        while len(c) >= len(a):
            # long division by monic a
            q = list(c)
            quot = [Fraction(0)] * (len(c) - len(a) + 1)
            for i in range(len(c) - len(a), -1, -1):
                t = q[i + len(a) - 1]
                quot[i] = t
                for j, aj in enumerate(a):
                    q[i + j] -= t * aj
            if any(q[: len(a) - 1]):
                break
            c = quot
    return len(c) == 1


def _fl_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pair_candidates(arg_polys, zero_polys, max_deg=MAX_DEN_DEGREE):
    """h = lam*N/D with N, D coprime products of log arguments and 1 - h supported
    on log arguments and residue zeros."""
    args = [_flist(p) for p in arg_polys]
    allowed = args + [_flist(z) for z in zero_polys]
    roots = [-a[0] for a in allowed if len(a) == 2]
    prods = []
    for exps in _den_products(arg_polys, max_deg):
        c = [Fraction(1)]
        for a, e in zip(args, exps):
            for _ in range(e):
                c = _fl_mul(c, a)
        prods.append((exps, c))
    for en, n in prods:
        for ed, d in prods:
            if any(a and b for a, b in zip(en, ed)) or (len(n) == 1 and len(d) == 1):
                continue
            lams = set()
            for r in roots:
                nv = _fl_eval(n, r)
                dv = _fl_eval(d, r)
                if nv and dv:
                    lams.add(dv / nv)
            if len(n) == len(d):
                lams.add(d[-1] / n[-1])
            for lam in lams:
                m = [a - lam * b for a, b in zip(d + [Fraction(0)] * (len(n) - len(d)), n + [Fraction(0)] * (len(d) - len(n)))]
                if any(m) and _fl_strip(m, allowed):
                    yield lam, n, d


def _den_products(arg_polys, max_deg):
    degs = [p.degree() for p in arg_polys]
    ranges = [range(max_deg // d + 1) for d in degs]
    for exps in product(*ranges):
        if sum(e * d for e, d in zip(exps, degs)) <= max_deg:
            yield exps


def _orbit(tower, h):
    one = tower.field.one
    return [h, one - h, one / h, one / (one - h), h / (h - one), (h - one) / h]


def _complexity(tower, h):
    num, den = split(tower, h)
    return (num.degree() + den.degree(), len(str(h)), str(h))


def dilog_candidates(tower, f, limit=MAX_CANDIDATES, tiers=False, with_pairs=False):
    """Candidate arguments h (elements of the base-level tower) for f.

    Tier 0 holds orbits of hits for a nontrivial zero class, tier 1 hits
    where 1 - h has no zeros, tier 2 orbits of bare log arguments and tier 3
    (only with ``with_pairs``) the exhaustive quotient search.  With
    ``tiers`` the result is a list of (tier, h).
    """
    syms = [s for s in f.syms() if not s.is_constant]
    arg_polys = []
    for s in syms:
        num, den = split(tower, s.arg_in(tower))
        if den.degree() == 0:
            arg_polys.append(num.monic())
    if not arg_polys:
        return []
    x = arg_polys[0].gen
    one = Poly(1, x, domain=QQ)
    arg_set = set(arg_polys)
    zs = _zero_classes(tower, f, arg_set) + [one]
    found = {}

    def accept(h, tier):
        if tower.level_of(h) < 0:
            return
        for g in _orbit(tower, h):
            key = str(g)
            if key not in found or found[key][0] > tier:
                found[key] = (tier, g)

    for p in arg_polys:
        accept(from_upoly(tower, p), 2)
    if with_pairs:
        zero_polys = sorted(_zero_factors(tower, f, arg_set), key=str)
        xs = from_upoly(tower, Poly(x, x, domain=QQ))
        for lam, n, d in _pair_candidates(arg_polys, zero_polys):
            num = sum((tower.constant(c) * xs**i for i, c in enumerate(n)), tower.field.zero)
            den = sum((tower.constant(c) * xs**i for i, c in enumerate(d)), tower.field.zero)
            accept(num * tower.constant(lam) / den, 3)
    for z in zs:
        tier = 1 if z.degree() == 0 else 0
        max_deg = max(MAX_DEN_DEGREE, z.degree())
        for exps in _den_products(arg_polys, max_deg):
            d = one
            for p, e in zip(arg_polys, exps):
                d = d * p**e
            cs = set()
            for p, e in zip(arg_polys, exps):
                if e == 0:
                    r = (d * z.invert(p)).rem(p) if z.rem(p) != 0 else None
                    if r is not None and r.degree() <= 0 and not r.is_zero:
                        cs.add(to_fraction(QQ.convert(r.LC())))
            if d.degree() == z.degree():
                cs.add(to_fraction(QQ.convert(d.LC())) / to_fraction(QQ.convert(z.LC())))
            for c in cs:
                n = d - z * QQ(c.numerator, c.denominator)
                if n.is_zero or n.degree() <= 0 and d.degree() == 0:
                    continue
                if n.degree() > 0:
                    _, nf = n.factor_list()
                    if any(q.monic() not in arg_set for q, _ in nf):
                        continue
                accept(from_upoly(tower, n) / from_upoly(tower, d), tier)
    ranked = sorted(found.values(), key=lambda th: (th[0],) + _complexity(tower, th[1]))
    ranked = ranked[:limit]
    return ranked if tiers else [h for _, h in ranked]


def integrate_dilog(tower, f):
    """IntegralExpr with dilog terms for f, verified, or a Failure."""
    f = as_logpoly(tower, f)
    flat = flatten(tower, f)
    if flat is None or flat[0].level != 0:
        res = integrate_elementary(tower, f)
        if res:
            return res
        return Failure(f"no integral found under heuristic H1 ({res.reason})", f)
    base, g = flat

    def lift(res):
        out = res.to_tower(tower) if base is not tower else res
        return out if verify(out, f) else None

    res = ansatz_integrate(base, g)
    if res and verify(res, g):
        out = lift(res)
        if out is not None:
            return out
    ranked = dilog_candidates(base, g, tiers=True)
    ks = range(1, max(1, g.degree()) + 1)
    tried = 0
    for stage in (0, 1, 2, 3):
        if stage == 3:
            ranked = dilog_candidates(base, g, tiers=True, with_pairs=True)
        hs = [h for t, h in ranked if t <= stage]
        if len(hs) == tried:
            continue
        tried = len(hs)
        res = ansatz_integrate(base, g, [(h, k) for k in ks for h in hs])
        if res and verify(res, g):
            out = lift(res)
            if out is not None:
                return out
    return Failure("no integral found under heuristic H1", f)


__all__ = ["integrate_dilog", "dilog_candidates", "to_upoly"]
