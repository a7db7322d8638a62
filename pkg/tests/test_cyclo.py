import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biprod.cyclo import CycloNum, cyclotomic_poly, embed_root, mat_inverse, solve_consistent
from oracles import cyclo_to_complex

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 24]


@st.composite
def cyclo(draw, n=None):
    n = n or draw(st.sampled_from(CONDUCTORS))
    rational = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
    terms = draw(st.lists(st.tuples(st.integers(0, 2 * n), rational), max_size=4))
    z = CycloNum.zero(n)
    for k, q in terms:
        z = z + embed_root(n, k) * CycloNum.from_rational(n, q)
    return z


@st.composite
def same_field_pair(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return draw(cyclo(n)), draw(cyclo(n)), draw(cyclo(n))


def close(a, b):
    return abs(a - b) < 1e-8


@pytest.mark.parametrize("n,poly", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)),
                                    (8, (1, 0, 0, 0, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(n, poly):
    assert cyclotomic_poly(n) == poly


@pytest.mark.parametrize("n", CONDUCTORS)
def test_roots_embed_as_complex_roots(n):
    for k in range(2 * n):
        assert close(cyclo_to_complex(embed_root(n, k)), cmath.exp(2j * cmath.pi * k / n))


@settings(max_examples=80, deadline=None)
@given(same_field_pair())
def test_ring_axioms_and_embedding(abc):
    a, b, c = abc
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert close(cyclo_to_complex(a * b), cyclo_to_complex(a) * cyclo_to_complex(b))
    assert close(cyclo_to_complex(a - b), cyclo_to_complex(a) - cyclo_to_complex(b))


@settings(max_examples=60, deadline=None)
@given(cyclo())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == CycloNum.one(a.N)


@settings(max_examples=40, deadline=None)
@given(cyclo(), st.sampled_from([2, 3]))
def test_lift_preserves_value(a, k):
    b = a.lift(a.N * k)
    assert b.N == a.N * k
    assert close(cyclo_to_complex(a), cyclo_to_complex(b))
    assert b == a.lift(a.N * k) and hash(b) == hash(a.lift(a.N * k))


def test_rational_and_comparison_with_int():
    q = CycloNum.from_rational(6, Fraction(3, 4))
    assert q.is_rational() and q.coeffs[0] == Fraction(3, 4)
    assert CycloNum.one(4) == 1
    assert not embed_root(4, 1).is_rational()


def test_lift_rejects_non_multiple():
    with pytest.raises(ValueError):
        embed_root(4, 1).lift(6)


def test_mat_inverse_and_singular():
    i = embed_root(4, 1)
    one, zero = CycloNum.one(4), CycloNum.zero(4)
    M = [[one, i], [i, one]]
    inv = mat_inverse(M, 4)
    prod = [[sum((M[r][k] * inv[k][c] for k in range(2)), zero) for c in range(2)] for r in range(2)]
    assert prod == [[one, zero], [zero, one]]
    with pytest.raises(ZeroDivisionError):
        mat_inverse([[one, i], [i, -one]], 4)


def test_solve_consistent():
    one, zero = CycloNum.one(3), CycloNum.zero(3)
    w = embed_root(3, 1)
    rows = [[one, w], [w, w * w]]
    x = solve_consistent(rows, [one, w], 2, 3)
    assert x is not None
    assert rows[0][0] * x[0] + rows[0][1] * x[1] == one
    assert rows[1][0] * x[0] + rows[1][1] * x[1] == w
    assert solve_consistent(rows, [one, zero], 2, 3) is None
