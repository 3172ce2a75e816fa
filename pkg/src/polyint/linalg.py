"""Exact linear algebra over Q and Z on plain Python lists.

Matrices are lists of rows; entries are ``Fraction`` (rational routines) or
``int`` (lattice routines).  Sizes in this package stay in the low hundreds,
so dense Gauss-Jordan elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def to_fraction(c) -> Fraction:
    """Convert ints, Fractions and gmpy2/sympy rationals to ``Fraction``."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    num = getattr(c, "numerator", None)
    den = getattr(c, "denominator", None)
    if num is not None and den is not None:
        if callable(num):
            num, den = num(), den()
        return Fraction(int(num), int(den))
    p, q = getattr(c, "p", None), getattr(c, "q", None)
    if p is not None:
        return Fraction(int(p), int(q))
    raise TypeError(f"not a rational number: {c!r}")


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    m = [[Fraction(c) for c in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(rows, ncols):
    """Basis of {v : A v = 0} as a list of Fraction vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve_affine(equations, nvars):
    """Solve sum(a_j v_j) + c = 0 for every (a, c) in ``equations``.

    ``a`` is a dict {column: coefficient}.  Free variables are set to zero,
    so lower-index columns are preferred as pivots.  Returns a list of values
    or None when the system is inconsistent.
    """
    rows = []
    for coeffs, const in equations:
        row = [Fraction(0)] * (nvars + 1)
        for j, a in coeffs.items():
            row[j] += a
        row[nvars] = -Fraction(const)
        if any(row):
            rows.append(row)
    if not rows:
        return [Fraction(0)] * nvars
    m, pivots = rref(rows, nvars + 1)
    if nvars in pivots:
        return None
    sol = [Fraction(0)] * nvars
    for i, p in enumerate(pivots):
        sol[p] = m[i][nvars]
    return sol


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in m]


def primitive_integer_vector(v):
    """Scale a rational vector to coprime integers with first nonzero > 0."""
    den = 1
    for c in v:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return ints
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    return [-c for c in ints] if first < 0 else ints


def hnf(rows):
    """Row Hermite normal form over Z with a unimodular transform.

    Returns (H, U) with U * A = H.  Nonzero rows of H come first, pivots are
    positive and the entries above each pivot are reduced into [0, pivot).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if all(a[i][c] == 0 for i in range(r, m)):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u
