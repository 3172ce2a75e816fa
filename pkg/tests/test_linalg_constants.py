from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyint.constants import AlgebraicConstant, ResidueElement, is_root_of_unity
from polyint.errors import DomainError
from polyint.linalg import hnf, inverse, nullspace, primitive_integer_vector, rref, solve_affine

F = Fraction


def test_rref_and_nullspace():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    m, piv = rref(rows, 3)
    assert piv == [0, 1]
    (v,) = nullspace(rows, 3)
    assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)


def test_solve_affine_free_variables_zero():
    # x0 + x1 - 2 = 0  -> x1 free, set to 0
    assert solve_affine([({0: F(1), 1: F(1)}, F(-2))], 2) == [F(2), F(0)]
    assert solve_affine([({0: F(1)}, F(-1)), ({0: F(1)}, F(-2))], 1) is None


def test_inverse():
    a = [[F(2), F(1)], [F(1), F(1)]]
    inv = inverse(a)
    assert inv == [[F(1), F(-1)], [F(-1), F(2)]]


def test_primitive_integer_vector():
    assert primitive_integer_vector([F(0), F(-2, 3), F(4, 3)]) == [0, 1, -2]


small = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_transform(rows):
    H, U = hnf(rows)
    n = len(rows)
    for i in range(n):
        assert [sum(U[i][k] * rows[k][j] for k in range(n)) for j in range(3)] == list(H[i])
    # pivots positive, nonzero rows first
    seen_zero = False
    for r in H:
        if any(r):
            assert not seen_zero
            assert next(c for c in r if c) > 0
        else:
            seen_zero = True


def test_residue_field_arithmetic():
    i = ResidueElement([F(0), F(1)], [F(1), F(0), F(1)])
    assert (i * i + 1).is_zero()
    assert (i ** 4).is_one()
    assert (1 / i) == -i
    assert is_root_of_unity(i)
    assert not is_root_of_unity(i + 1)


def test_root_of_unity_rationals():
    assert is_root_of_unity(F(-1)) and is_root_of_unity(F(1))
    assert not is_root_of_unity(F(2))


def test_algebraic_constant_text():
    a = AlgebraicConstant("a1", [F(1, 4), F(0), F(1)])
    assert a.minpoly_text() == "a1^2 + 1/4"
    assert a.degree == 2


def test_noninvertible_residue():
    m = [F(-1), F(0), F(1)]  # (a-1)(a+1): not a field
    with pytest.raises(DomainError):
        ResidueElement([F(-1), F(1)], m).inverse()
