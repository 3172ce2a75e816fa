"""Elements of simple algebraic extensions k[a]/(m(a)).

The coefficient domain ``k`` is either Q (``Fraction``) or a rational
function field (sympy ``FracElement``).  Over Q this is the constant field
Q(a) of the engine; over a function field it is the residue field of a
place of degree > 1.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import totient

from .errors import DomainError


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a, b):
    """Division of coefficient lists (low degree first) over a field."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [b[0] * 0] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for i, bc in enumerate(b):
            a[s + i] = a[s + i] - c * bc
        a.pop()
        a = _trim(a)
    return _trim(q), a


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    z = (a or b)[0] * 0 if (a or b) else 0
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def poly_inverse_mod(a, m):
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = [], [m[-1] ** 0]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    if len(r0) != 1:
        raise DomainError("element is not invertible modulo the minimal polynomial")
    inv = 1 / r0[0]
    return [c * inv for c in s0]


class ResidueElement:
    """An element of k[a]/(modulus) stored as a reduced coefficient tuple."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus):
        modulus = tuple(modulus)
        if modulus[-1] != 1:
            lc = modulus[-1]
            modulus = tuple(c / lc for c in modulus)
        self.modulus = modulus
        _, r = poly_divmod(list(coeffs), list(modulus))
        self.coeffs = tuple(r)

    @property
    def degree(self):
        return len(self.modulus) - 1

    def _wrap(self, c):
        return ResidueElement(c, self.modulus)

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            if other.modulus != self.modulus:
                raise DomainError("elements of different residue fields")
            return other
        return ResidueElement([other], self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.modulus[0] * 0
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(o.coeffs) + [z] * (n - len(o.coeffs))
        return self._wrap([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        return self._wrap(poly_inverse_mod(list(self.coeffs), list(self.modulus)))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self._wrap([self.modulus[0] ** 0])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except DomainError:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        return f"ResidueElement({list(self.coeffs)!r} mod {list(self.modulus)!r})"

    def is_root_of_unity(self):
        return is_root_of_unity(self)


def _unity_orders(degree):
    """Orders n of roots of unity living in an extension of given degree."""
    bound = 2 * degree * degree + 2
    return [n for n in range(1, bound + 1) if int(totient(n)) <= degree]


def is_root_of_unity(c):
    """True iff c^n = 1 for some n >= 1.

    Accepts rationals, function-field elements (where only +-1 qualify) and
    ResidueElements (where the order is bounded by the extension degree).
    """
    if isinstance(c, ResidueElement):
        return any((c ** n).is_one() for n in _unity_orders(c.degree))
    # arithmetic renormalizes sign-flipped denominators such as 1/(-1)
    return (c - 1) == 0 or (c + 1) == 0


class AlgebraicConstant:
    """A named root of a monic irreducible polynomial over Q."""

    __slots__ = ("name", "minpoly")

    def __init__(self, name, minpoly):
        minpoly = [Fraction(c) for c in minpoly]
        lc = minpoly[-1]
        self.name = name
        self.minpoly = tuple(c / lc for c in minpoly)

    @property
    def degree(self):
        return len(self.minpoly) - 1

    def generator(self):
        return ResidueElement([Fraction(0), Fraction(1)], self.minpoly)

    def minpoly_text(self):
        from sympy import Poly, Rational, Symbol

        a = Symbol(self.name)
        expr = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.minpoly)], a)
        return str(expr.as_expr()).replace("**", "^")

    def __eq__(self, other):
        return isinstance(other, AlgebraicConstant) and (self.name, self.minpoly) == (other.name, other.minpoly)

    def __hash__(self):
        return hash((self.name, self.minpoly))

    def __repr__(self):
        return f"AlgebraicConstant({self.name}: {self.minpoly_text()} = 0)"
