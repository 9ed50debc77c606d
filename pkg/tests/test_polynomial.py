import random

import pytest
from hypothesis import given, settings

from capelli.polynomial import (
    Polynomial,
    Var,
    det_poly,
    grid_matrix,
    parse_polynomial,
    poly_add,
    poly_diff,
    poly_mul,
    xvar,
    yvar,
)

from helpers import polynomials

x11, x12, x21, x22 = (Polynomial.variable(xvar(i, j)) for i, j in [(1, 1), (1, 2), (2, 1), (2, 2)])


def evaluate(p, point):
    total = 0
    for mono, c in p.terms.items():
        term = c
        for v, e in mono:
            term *= point[v] ** e
        total += term
    return total


def cofactor_det(matrix):
    """Independent oracle: Laplace expansion along the first row."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = Polynomial()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total = total + matrix[0][j] * cofactor_det(minor) * (-1) ** j
    return total


def test_symmetric_var_is_canonical():
    assert Var("x", 2, 1, symmetric=True) == Var("x", 1, 2, symmetric=True)
    assert Var("x", 2, 1) != Var("x", 1, 2)


def test_var_ordering_puts_x_before_y():
    assert xvar(2, 2) < yvar(1, 1)
    assert xvar(1, 2) < xvar(2, 1)


def test_additive_identity_and_cancellation():
    p = x11 * 2 + x12 * x21
    assert poly_add(p, Polynomial()) == p
    assert (x11 + (-x11)).terms == {}


def test_disjoint_supports():
    p = poly_add(x11 * 2, x11 * x12 * 3)
    assert len(p) == 2
    assert p.terms[((xvar(1, 1), 1),)] == 2
    assert p.terms[((xvar(1, 1), 1), (xvar(1, 2), 1))] == 3


def test_product_identities():
    p = x11 * x22 - x12
    assert poly_mul(p, Polynomial.constant(1)) == p
    assert poly_mul(x11 + x12, x11 - x12) == x11 ** 2 - x12 ** 2


def test_det_squared_n2():
    d = det_poly(grid_matrix(2, 2))
    sq = poly_mul(d, d)
    # brute-force distribution of (a - b)^2 with a = x11 x22, b = x12 x21
    a, b = x11 * x22, x12 * x21
    expected = a * a - a * b * 2 + b * b
    assert sq == expected
    assert len(sq) == 3
    rng = random.Random(3)
    for _ in range(20):
        point = {v: rng.randint(-9, 9) for v in (xvar(1, 1), xvar(1, 2), xvar(2, 1), xvar(2, 2))}
        det_val = point[xvar(1, 1)] * point[xvar(2, 2)] - point[xvar(1, 2)] * point[xvar(2, 1)]
        assert evaluate(sq, point) == det_val ** 2


def test_diff_rules():
    assert poly_diff(x11 ** 3, xvar(1, 1)) == x11 ** 2 * 3
    assert poly_diff(x22, xvar(1, 1)).is_zero()
    assert poly_diff(det_poly(grid_matrix(2, 2)), xvar(1, 1)) == x22


def test_det_small_cases():
    assert det_poly([[x12]]) == x12
    assert det_poly(grid_matrix(2, 2)) == x11 * x22 - x12 * x21


def test_det_3x3_matches_cofactor_oracle():
    X = grid_matrix(3, 3)
    d = det_poly(X)
    assert d == cofactor_det(X)
    assert len(d) == 6
    assert d.degree() == 3


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_poly([[x11, x12]])


def test_mixing_grids_rejected():
    sym = Polynomial.variable(xvar(1, 2, symmetric=True))
    with pytest.raises(ValueError):
        x11 + sym
    with pytest.raises(ValueError):
        x11 * sym
    with pytest.raises(ValueError):
        Polynomial({((xvar(1, 1), 1), (xvar(1, 1, True), 1)): 1})


def test_text_format():
    p = x11 ** 2 * x12 * 2 - Polynomial.variable(yvar(2, 2)) * 3
    assert str(p) == "2*x[1,1]^2*x[1,2] - 3*y[2,2]"
    assert str(Polynomial.variable(xvar(2, 1, True))) == "xs[1,2]"
    assert str(Polynomial()) == "0"
    assert str(x11 + 1) == "x[1,1] + 1"


def test_parse_rejects_garbage():
    for bad in ["", "x[1]", "2*q[1,1]", "x[1,1] +", "d[1,1]"]:
        with pytest.raises(ValueError):
            parse_polynomial(bad)


@settings(max_examples=200, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials())
def test_diff_is_a_derivation(p, q):
    for v in (xvar(1, 1), xvar(2, 1)):
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials())
def test_equal_columns_give_zero_det(p, q):
    M = [[p, p, x11], [q, q, x12], [x21, x21, x22]]
    assert det_poly(M).is_zero()


@settings(max_examples=200, deadline=None)
@given(polynomials())
def test_serialization_round_trip(p):
    assert parse_polynomial(str(p)) == p
