"""Integration of polynomials in logarithms over Q(x) by undetermined coefficients.

For an integrand f = sum f_a L^a (L the log symbols, a multi-indices) we
look for E = sum s_a L^a plus constant multiples d_c of candidate dilog
terms.  Working from the top degree down, each coefficient s_a must be the
integral of

    f_a - sum_c d_c T_c[a] - sum_j (a_j + 1) s_(a + e_j) D(L_j)

inside Q(x).  Hermite reduction turns that requirement into linear
equations on the unknown constants: top-degree coefficients b, integration
constants kappa and dilog multipliers d.  Degree zero is integrated
outright, so new logarithms and root sums may appear only there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from sympy import QQ, Poly

from ..linalg import solve_affine, to_fraction
from ..logsym import LogPoly, log_of
from .rational import from_upoly, hermite, integrate_rational, split
from .terms import DilogTerm, IntegralExpr, d_dilog_term


@dataclass
class Failure:
    """An integration attempt that found nothing; never a proof of nonexistence."""

    reason: str
    residual: object = None

    def __bool__(self):
        return False


def _vectors(n, m):
    out = []
    for combo in combinations_with_replacement(range(n), m):
        v = [0] * n
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return out


def _cancel_equations(tower, parts):
    """Equations forcing sum_p p * parts[p] = 0 (key None is the constant)."""
    if not parts:
        return []
    split_parts = {p: split(tower, v) for p, v in parts.items()}
    common = None
    for _, den in split_parts.values():
        common = den if common is None else common.lcm(den)
    rows = {}
    for p, (num, den) in split_parts.items():
        scaled = num * common.quo(den)
        for (i,), c in scaled.as_dict().items():
            rows.setdefault(i, {})[p] = to_fraction(QQ.convert(c))
    eqs = []
    for row in rows.values():
        const = row.pop(None, Fraction(0))
        eqs.append((row, const))
    return eqs


def _denominator_syms(tower, f):
    """Log symbols of denominator factors of the non-constant-degree coefficients."""
    out = set()
    for m, c in f.terms.items():
        if m and tower.level_of(c.denom) >= 0:
            out |= set(log_of(tower, c.denom).coeffs)
    return {s for s in out if not s.is_constant}


def ansatz_integrate(tower, f: LogPoly, candidates=(), name_start=1):
    """Integrate f (over a base-level tower) with optional dilog candidates.

    ``candidates`` is a sequence of (h, k).  Returns an IntegralExpr (not yet
    verified) or a Failure.
    """
    zero = tower.field.zero
    cands = [(tower(h), k) for h, k in candidates]
    tcs = [d_dilog_term(tower, DilogTerm(Fraction(1), h, k)) for h, k in cands]
    pool = set(f.syms()).union(*[set(t.syms()) for t in tcs])
    pool |= _denominator_syms(tower, f)
    syms = sorted(pool, key=lambda s: s.sort_key)
    n = len(syms)
    dls = [LogPoly.sym(tower, s).derive().field_part() for s in syms]
    top = max([f.degree()] + [k for _, k in cands]) + 1

    def key(v):
        return tuple((syms[i], e) for i, e in enumerate(v) if e)

    def live(v):
        return any(e and dls[i] != 0 for i, e in enumerate(v))

    ncols = 0
    b_idx, k_idx, d_idx = {}, {}, []
    for v in _vectors(n, top):
        if live(v):
            b_idx[v] = ncols
            ncols += 1
    for m in range(top - 1, 0, -1):
        for v in _vectors(n, m):
            if live(v):
                k_idx[v] = ncols
                ncols += 1
    for _ in cands:
        d_idx.append(ncols)
        ncols += 1

    s_pv = {}
    equations = []
    rhs0 = None
    for m in range(top - 1, -1, -1):
        for v in _vectors(n, m):
            kv = key(v)
            rhs = {None: f.terms.get(kv, zero)}
            for ci, t in enumerate(tcs):
                c = t.terms.get(kv)
                if c is not None:
                    rhs[d_idx[ci]] = rhs.get(d_idx[ci], zero) - c
            for j in range(n):
                if dls[j] == 0:
                    continue
                up = v[:j] + (v[j] + 1,) + v[j + 1:]
                coef = dls[j] * (v[j] + 1)
                if m + 1 == top:
                    if up in b_idx:
                        p = b_idx[up]
                        rhs[p] = rhs.get(p, zero) - coef
                else:
                    for p, val in s_pv[up].items():
                        rhs[p] = rhs.get(p, zero) - val * coef
            if m == 0:
                rhs0 = rhs
                continue
            g_pv, h_parts = {}, {}
            for p, val in rhs.items():
                if val == 0:
                    continue
                g, h = hermite(tower, val)
                if g != 0:
                    g_pv[p] = g
                if h != 0:
                    h_parts[p] = h
            if v in k_idx:
                g_pv[k_idx[v]] = tower.field.one
            s_pv[v] = g_pv
            equations.extend(_cancel_equations(tower, h_parts))

    sol = solve_affine(equations, ncols)
    if sol is None:
        return Failure("residues of the log-polynomial coefficients do not cancel", f)

    def value(pv):
        out = pv.get(None, zero)
        for p, val in pv.items():
            if p is not None and sol[p] != 0:
                out += val * tower.constant(sol[p])
        return out

    terms = {}
    for v, p in b_idx.items():
        if sol[p] != 0:
            terms[key(v)] = tower.constant(sol[p])
    for v, pv in s_pv.items():
        val = value(pv)
        if val != 0:
            terms[key(v)] = terms.get(key(v), zero) + val
    elem = LogPoly(tower, terms)
    r0 = value(rhs0)
    ri = integrate_rational(tower, r0, name_start)
    elem = elem + LogPoly.const(tower, ri.rational)
    for c, arg in ri.logs:
        elem = elem + log_of(tower, arg).to_logpoly() * c
    dterms = [DilogTerm(sol[d], h, k) for d, (h, k) in zip(d_idx, cands) if sol[d] != 0]
    return IntegralExpr(tower, elem, dterms, list(ri.rootsums))


__all__ = ["ansatz_integrate", "Failure", "from_upoly"]
