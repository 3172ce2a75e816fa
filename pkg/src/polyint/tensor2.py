"""Rank-2 tensors over Q on formal symbols, modulo symmetric tensors.

Symbols are log symbols, basis vectors delta_a indexed by places, formal
vectors of an auxiliary space, and ``VLog`` atoms: logarithms of explicit
constants (rationals, lower-field elements, residue-field elements).  VLog
atoms obey log(ab) = log a + log b and log(root of unity) = 0, so
combinations of them are compared multiplicatively; every other symbol is
compared formally.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .constants import ResidueElement, is_root_of_unity
from .errors import DomainError, PreconditionError
from .linalg import to_fraction
from .logsym import LogPoly, LogSym


@dataclass(frozen=True)
class Delta:
    place: object

    @property
    def sort_key(self):
        return (1,) + tuple(map(str, self.place.sort_key))

    def __repr__(self):
        return f"delta[{'oo' if self.place.is_infinite else self.place.key}]"


@dataclass(frozen=True)
class XSym:
    name: str

    @property
    def sort_key(self):
        return (2, self.name)

    def __repr__(self):
        return self.name


def _value_key(value):
    if isinstance(value, ResidueElement):
        return ("R", tuple(map(str, value.modulus)), tuple(map(str, value.coeffs)))
    return ("F", str(value))


@dataclass(frozen=True)
class VLog:
    """log(value) for an explicit constant of a lower field or residue field."""

    key: tuple
    value: object = dc_field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, value):
        return cls(_value_key(value), value)

    @property
    def sort_key(self):
        return (3,) + tuple(map(str, self.key))

    def __repr__(self):
        return f"log({self.key[-1] if self.key[0] == 'F' else self.value!r})"


def sym_key(s):
    if isinstance(s, LogSym):
        return (0,) + tuple(map(str, s.sort_key))
    return s.sort_key


class Vec:
    """A formal Q-linear combination of symbols."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {s: Fraction(c) for s, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def of(cls, s, c=1):
        return cls({s: c})

    def __add__(self, other):
        d = defaultdict(Fraction, self.coeffs)
        for s, c in other.coeffs.items():
            d[s] += c
        return Vec(d)

    def __neg__(self):
        return Vec({s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = Fraction(q)
        return Vec({s: c * q for s, c in self.coeffs.items()})

    __rmul__ = __mul__

    def formal_zero(self):
        return not self.coeffs

    def is_zero(self):
        """Zero test honouring multiplicative relations among VLog atoms."""
        plain = {s: c for s, c in self.coeffs.items() if not isinstance(s, VLog)}
        if plain:
            return False
        return vlog_vanishes({s: c for s, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, Vec) and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{s!r}" for s, c in sorted(self.coeffs.items(), key=lambda sc: sym_key(sc[0])))


def vlog_vanishes(coeffs):
    """True iff sum c_i log(value_i) = 0, i.e. prod value_i^(N c_i) is a root of unity."""
    if not coeffs:
        return True
    n = 1
    for c in coeffs.values():
        n = lcm(n, c.denominator)
    modulus = next((s.value.modulus for s in coeffs if isinstance(s.value, ResidueElement)), None)
    prod = None
    for s, c in coeffs.items():
        v = s.value
        if modulus is not None and not isinstance(v, ResidueElement):
            if isinstance(modulus[0], Fraction) and hasattr(v, "numer"):
                v = to_fraction(v.numer.LC) / to_fraction(v.denom.LC)
            v = ResidueElement([v], modulus)
        term = v ** int(c * n)
        prod = term if prod is None else prod * term
    return is_root_of_unity(prod)


class Tensor2:
    """Finite map (Sym, Sym) -> Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: Fraction(c) for k, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def outer(cls, a, b):
        a = a if isinstance(a, Vec) else Vec.of(a)
        b = b if isinstance(b, Vec) else Vec.of(b)
        d = defaultdict(Fraction)
        for s, c in a.coeffs.items():
            for t, e in b.coeffs.items():
                d[(s, t)] += c * e
        return cls(d)

    def __add__(self, other):
        d = defaultdict(Fraction, self.coeffs)
        for k, c in other.coeffs.items():
            d[k] += c
        return Tensor2(d)

    def __neg__(self):
        return Tensor2({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = Fraction(q)
        return Tensor2({k: c * q for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Tensor2) and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def formal_zero(self):
        return not self.coeffs

    def is_zero(self):
        """Zero test: formal except that V-atom slots are compared in V."""
        left = defaultdict(dict)   # plain s -> {VLog: c} for VLog (x) s
        right = defaultdict(dict)  # plain s -> {VLog: c} for s (x) VLog
        for (a, b), c in self.coeffs.items():
            av, bv = isinstance(a, VLog), isinstance(b, VLog)
            if av and bv:
                return False
            if not av and not bv:
                return False
            if av:
                left[b][a] = c
            else:
                right[a][b] = c
        return all(vlog_vanishes(v) for v in left.values()) and all(
            vlog_vanishes(v) for v in right.values()
        )

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kc: (sym_key(kc[0][0]), sym_key(kc[0][1])))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{a!r}(x){b!r}" for (a, b), c in self.items())


def transpose(t):
    return Tensor2({(b, a): c for (a, b), c in t.coeffs.items()})


def symmetric_part(t):
    return (t + transpose(t)) * Fraction(1, 2)


def antisymmetric_part(t):
    return (t - transpose(t)) * Fraction(1, 2)


def is_symmetric(t):
    return antisymmetric_part(t).is_zero()


def _sum(vs):
    out = Vec()
    for v in vs:
        out = out + v
    return out


def tenseq_residual(u, v, w, wij, k, l):
    """(sum k_i w_i + u) (x) (sum l_j w_j + v) - sum k_i l_j M_ij - u (x) v.

    ``w`` maps an index to a Vec, ``wij`` maps index pairs to Vecs (missing
    pairs are zero) and ``k``, ``l`` map indices to integers.  The hypotheses
    under which the result is symmetric are checked first.
    """
    idx = sorted(set(w) | set(k) | set(l), key=repr)
    K = {i: k.get(i, 0) for i in idx}
    L = {i: l.get(i, 0) for i in idx}
    W = {i: w.get(i, Vec()) for i in idx}

    def wp(i, j):
        return wij.get((i, j), Vec())

    for i in idx:
        if (K[i] < 0 or L[i] < 0) and K[i] != L[i]:
            raise PreconditionError(f"k_i = l_i fails for negative entries at index {i!r}")
    for j in idx:
        sk = _sum(wp(i, j) * K[i] for i in idx)
        sl = _sum(wp(i, j) * L[i] for i in idx)
        if L[j] > 0 and not (u - sk).is_zero():
            raise PreconditionError(f"u = sum k_i w_ij fails at j = {j!r}")
        if K[j] > 0 and not (v - sl).is_zero():
            raise PreconditionError(f"v = sum l_i w_ij fails at j = {j!r}")
        if K[j] < 0 and not ((v - sl) - (u - sk)).is_zero():
            raise PreconditionError(f"v - sum l_i w_ij = u - sum k_i w_ij fails at j = {j!r}")
    left = _sum(W[i] * K[i] for i in idx) + u
    right = _sum(W[j] * L[j] for j in idx) + v
    res = Tensor2.outer(left, right) - Tensor2.outer(u, v)
    for i in idx:
        if not K[i]:
            continue
        for j in idx:
            if not L[j]:
                continue
            m = Tensor2.outer(W[i], W[j]) + Tensor2.outer(W[i], wp(j, i)) + Tensor2.outer(wp(i, j), W[j])
            res = res - m * (K[i] * L[j])
    return res


def psi(t, tower):
    """Psi(a (x) b) = (D a) b, for tensors whose symbols are LogSyms."""
    out = LogPoly.zero(tower)
    for (a, b), c in t.coeffs.items():
        if not isinstance(a, LogSym) or not isinstance(b, LogSym):
            raise DomainError(f"psi needs log symbols, got {a!r} (x) {b!r}")
        da = LogPoly.sym(tower, a).derive()
        out = out + da * LogPoly.sym(tower, b) * tower.constant(c)
    return out


def tensor_json(t, name_of=repr):
    return [
        {"left": name_of(a), "right": name_of(b), "coeff": str(c)}
        for (a, b), c in t.items()
    ]


__all__ = [
    "Delta",
    "XSym",
    "VLog",
    "Vec",
    "Tensor2",
    "transpose",
    "symmetric_part",
    "antisymmetric_part",
    "is_symmetric",
    "tenseq_residual",
    "psi",
    "tensor_json",
]
