"""Order and leading-coefficient data attached to a family h_i in F(t).

Given h_i in F(t) and a degree-one place p, the multiplicative group
generated by all h_i and 1 - h_i is written, modulo F, on a free basis psi_j
whose leading coefficients at p equal 1:

    h_i = u_i prod psi_j^m_ij,        1 - h_i = v_i prod psi_j^n_ij.

The map iota sends log psi_j to its vector of orders over the places A
(zeros and poles of all h_i and 1 - h_i).  gamma_jb = -log(lc_b psi_j) and
beta_ab = T_b(delta_a), with T_b extended by zero on the delta's that are
not pivots of the order matrix.  ``PrepExtData.checks`` re-derives every
identity the construction promises.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import chain

from ..errors import DomainError, PreconditionError
from ..linalg import inverse, rref
from ..places import Place, independent_basis, leading_coeff, order_at, rational_place
from ..tensor2 import Delta, Tensor2, VLog, Vec, tenseq_residual

ONE_MINUS = "OneMinus"
NEGATED = "Negated"
U_IS_ONE = "UIsOne"
V_IS_ONE = "VIsOne"


def _scan_constants(limit=50):
    yield from range(0, limit)
    yield from range(-1, -limit, -1)


def default_place(tower, hs, level=None):
    """Smallest t - c (c = 0, 1, 2, ..., then -1, -2, ...) where every h, 1 - h has order 0."""
    lv = tower.level if level is None else level
    fs = list(chain.from_iterable((h, 1 - h) for h in hs))
    for c in _scan_constants():
        p = rational_place(tower, c, lv)
        if all(order_at(tower, f, p) == 0 for f in fs):
            return p
    raise PreconditionError("no integer place with all orders zero")


def vlog(value, coeff=1):
    return Vec({VLog.of(value): coeff})


@dataclass
class PrepExtData:
    tower: object
    level: int
    place: Place
    hs: list
    psi: list
    m: list
    n: list
    u: list
    v: list
    places: list
    ord_h: list
    ord_1h: list
    psi_orders: list
    q: dict
    gamma: dict
    beta: dict
    tags: list
    pivots: list = dc_field(default_factory=list)

    # -- iota ------------------------------------------------------------
    def iota_log_h(self, i):
        return vlog(self.u[i]) + Vec({Delta(a): o for a, o in zip(self.places, self.ord_h[i]) if o})

    def iota_log_1h(self, i):
        return vlog(self.v[i]) + Vec({Delta(a): o for a, o in zip(self.places, self.ord_1h[i]) if o})

    def iota_log_psi(self, j):
        return Vec({Delta(a): o for a, o in zip(self.places, self.psi_orders[j]) if o})

    def beta_sum(self, orders, b):
        out = Vec()
        for a, o in zip(self.places, orders):
            if o:
                out = out + self.beta[(a, b)] * o
        return out

    # -- verification ----------------------------------------------------
    def checks(self):
        """Each identity of the construction, evaluated exactly."""
        t = self.tower
        res = {"E1": True, "E2": True, "E3": True, "E4": True, "E5": True, "tags": True, "gamma": True}
        for i, h in enumerate(self.hs):
            for rows, lhs, const, orders, key in (
                (self.m, h, self.u, self.ord_h, "E1"),
                (self.n, 1 - h, self.v, self.ord_1h, "E2"),
            ):
                g = t(const[i])
                for p, e in zip(self.psi, rows[i]):
                    if e:
                        g *= p**e
                if g != lhs:
                    res[key] = False
                for ai in range(len(self.places)):
                    if sum(rows[i][j] * self.psi_orders[j][ai] for j in range(len(self.psi))) != orders[i][ai]:
                        res[key] = False
            for bi, b in enumerate(self.places):
                lu, lv = vlog(self.u[i]), vlog(self.v[i])
                if self.ord_1h[i][bi] > 0 and not (lu - self.beta_sum(self.ord_h[i], b)).is_zero():
                    res["E3"] = False
                if self.ord_h[i][bi] > 0 and not (lv - self.beta_sum(self.ord_1h[i], b)).is_zero():
                    res["E4"] = False
                if self.ord_h[i][bi] < 0:
                    left = lu - self.beta_sum(self.ord_h[i], b)
                    right = lv - self.beta_sum(self.ord_1h[i], b)
                    if not (left - right).is_zero():
                        res["E5"] = False
            u, v = t(self.u[i]), t(self.v[i])
            holds = {ONE_MINUS: v == 1 - u, NEGATED: v == -u, U_IS_ONE: u == 1, V_IS_ONE: v == 1}
            if not holds[self.tags[i]]:
                res["tags"] = False
        for j in range(len(self.psi)):
            for b in self.places:
                if not (self.gamma[(j, b)] - self.beta_sum(self.psi_orders[j], b)).is_zero():
                    res["gamma"] = False
        return res

    def bridge_residual(self, i):
        """(iota x iota)(log(1-h) x log h - log v x log u) - sum ord(1-h,a) ord(h,b) M_ab."""
        w = {a: Vec.of(Delta(a)) for a in self.places}
        k = {a: o for a, o in zip(self.places, self.ord_1h[i])}
        l = {a: o for a, o in zip(self.places, self.ord_h[i])}
        return tenseq_residual(vlog(self.v[i]), vlog(self.u[i]), w, self.beta, k, l)

    def bridge_direct(self, i):
        """The same tensor assembled from iota images, without the lemma's shortcut."""
        left, right = self.iota_log_1h(i), self.iota_log_h(i)
        out = Tensor2.outer(left, right) - Tensor2.outer(vlog(self.v[i]), vlog(self.u[i]))
        for ai, a in enumerate(self.places):
            for bi, b in enumerate(self.places):
                c = self.ord_1h[i][ai] * self.ord_h[i][bi]
                if c:
                    wa, wb = Vec.of(Delta(a)), Vec.of(Delta(b))
                    m = Tensor2.outer(wa, wb) + Tensor2.outer(wa, self.beta[(b, a)]) + Tensor2.outer(self.beta[(a, b)], wb)
                    out = out - m * c
        return out


def prep_ext(tower, hs, place=None, level=None) -> PrepExtData:
    lv = tower.level if level is None else level
    hs = [tower(h) for h in hs]
    for h in hs:
        if h == 0 or h == 1:
            raise DomainError("h must differ from 0 and 1")
        if tower.level_of(h) < lv:
            raise DomainError(f"{tower.text(h)} does not involve the top generator")
    p = default_place(tower, hs, lv) if place is None else place
    if p.degree != 1:
        raise PreconditionError("the normalization place must have degree one")
    fs = list(chain.from_iterable((h, 1 - h) for h in hs))
    ib = independent_basis(tower, fs, lv)
    psi = []
    for g in ib.psi:
        psi.append(g / tower(leading_coeff(tower, g, p)))
    consts = []
    for f, e in zip(fs, ib.exponents):
        g = f
        for ps, k in zip(psi, e):
            if k:
                g /= ps**k
        consts.append(g)
    A = ib.places
    ord_rows = [[order_at(tower, f, a) for a in A] for f in fs]
    psi_orders = ib.psi_orders
    # T_b extension: solve on pivot columns of the psi order matrix
    _, piv = rref([[Fraction(o) for o in r] for r in psi_orders], len(A)) if psi else (None, [])
    q = {a: [Fraction(0)] * len(psi) for a in A}
    if psi:
        rp = [[Fraction(psi_orders[j][c]) for c in piv] for j in range(len(psi))]
        inv = inverse(rp)
        for r, c in enumerate(piv):
            q[A[c]] = list(inv[r])
    gamma = {}
    for j, g in enumerate(psi):
        for b in A:
            gamma[(j, b)] = vlog(leading_coeff(tower, g, b), -1)
    beta = {}
    for a in A:
        for b in A:
            out = Vec()
            for j, c in enumerate(q[a]):
                if c:
                    out = out + gamma[(j, b)] * c
            beta[(a, b)] = out
    tags = []
    for i, h in enumerate(hs):
        oh = order_at(tower, h, p)
        o1 = order_at(tower, 1 - h, p)
        if oh == 0 and o1 == 0:
            tags.append(ONE_MINUS)
        elif oh < 0:
            tags.append(NEGATED)
        elif oh > 0:
            tags.append(V_IS_ONE)
        else:
            tags.append(U_IS_ONE)
    data = PrepExtData(
        tower=tower,
        level=lv,
        place=p,
        hs=hs,
        psi=psi,
        m=[ib.exponents[2 * i] for i in range(len(hs))],
        n=[ib.exponents[2 * i + 1] for i in range(len(hs))],
        u=[consts[2 * i] for i in range(len(hs))],
        v=[consts[2 * i + 1] for i in range(len(hs))],
        places=A,
        ord_h=[ord_rows[2 * i] for i in range(len(hs))],
        ord_1h=[ord_rows[2 * i + 1] for i in range(len(hs))],
        psi_orders=psi_orders,
        q=q,
        gamma=gamma,
        beta=beta,
        tags=tags,
        pivots=[A[c] for c in piv],
    )
    failed = [k for k, ok in data.checks().items() if not ok]
    if failed:
        raise AssertionError(f"prep_ext identities failed: {', '.join(failed)}")
    return data


def check_log_deriv_membership(tower, a, psi, s, base_level=None):
    """Is sum a_i D(psi_i)/psi_i + D(s) in the base subfield (levels <= base_level)?"""
    lv = tower.level - 1 if base_level is None else base_level
    total = tower.derive(s)
    for ai, p in zip(a, psi):
        p = tower(p)
        if p == 0:
            raise DomainError("psi entries must be nonzero")
        total += tower(ai) * tower.derive(p) / p
    return tower.level_of(total) <= lv


__all__ = [
    "prep_ext",
    "PrepExtData",
    "default_place",
    "check_log_deriv_membership",
    "ONE_MINUS",
    "NEGATED",
    "U_IS_ONE",
    "V_IS_ONE",
]
