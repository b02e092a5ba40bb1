from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kirwan.errors import NotTriangular, SingularDiagonal, ZeroEuler
from kirwan.exactmath import (
    MatrixQ,
    Poly,
    laurent_negative_part,
    mat_vec,
    nullspace,
    poly_mul,
    rat,
    rat_str,
    residue_at_zero,
    rref,
    solve_upper_triangular,
    vstack,
)

from oracles import laurent_residue, laurent_tail

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
small_polys = st.lists(rationals, max_size=6).map(Poly)


# --- rational parsing -------------------------------------------------------


def test_rat_parses_canonical_strings():
    assert rat("3/2") == Fraction(3, 2)
    assert rat("-7") == Fraction(-7)
    assert rat("-6/4") == Fraction(-3, 2)
    assert rat(5) == Fraction(5)


@pytest.mark.parametrize("bad", ["1.5", "1/0", "", "+3", "a/b", "3 / 2", "1e3"])
def test_rat_rejects_non_rational_literals(bad):
    with pytest.raises(ValueError):
        rat(bad)


def test_rat_rejects_bad_types():
    with pytest.raises(TypeError):
        rat(1.5)
    with pytest.raises(TypeError):
        rat(True)


def test_rat_str_is_canonical():
    assert rat_str(Fraction(3, 2)) == "3/2"
    assert rat_str(Fraction(4, 2)) == "2"
    assert rat_str(Fraction(-1, 3)) == "-1/3"


# --- polynomials -------------------------------------------------------------


def test_poly_trims_trailing_zeros():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]) == Poly.zero()
    assert not Poly.zero()
    assert Poly.zero().degree == -1


def test_poly_mul_difference_of_squares():
    x_plus_1 = Poly([1, 1])
    x_minus_1 = Poly([-1, 1])
    assert poly_mul(x_plus_1, x_minus_1) == Poly([-1, 0, 1])


def test_poly_mul_zero_absorbs():
    p = Poly([3, 0, 2])
    assert poly_mul(Poly.zero(), p) == Poly.zero()


def test_poly_mul_square_of_monomial():
    m = Poly.monomial(1, -2)
    assert poly_mul(m, m) == Poly.monomial(2, 4)


@given(small_polys, small_polys)
def test_poly_mul_degree_additive(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree
    else:
        assert not p * q


@given(small_polys, small_polys, rationals)
def test_poly_evaluation_is_ring_hom(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


# --- residues, checked against the brute-force Laurent oracle ---------------


def test_residue_spec_examples():
    assert residue_at_zero(Poly.monomial(1, -2), 2, 2) == Fraction(-1)
    assert residue_at_zero(Poly([1]), -1, 1) == Fraction(-1)
    assert residue_at_zero(Poly.monomial(2, 4), 2, 2) == Fraction(0)
    assert residue_at_zero(Poly([5]), 3, 0) == Fraction(0)


def test_residue_examples_match_oracle():
    assert laurent_residue([0, -2], 2, 2) == Fraction(-1)
    assert laurent_residue([1], -1, 1) == Fraction(-1)
    assert laurent_residue([0, 0, 4], 2, 2) == Fraction(0)


def test_residue_zero_epsilon():
    with pytest.raises(ZeroEuler):
        residue_at_zero(Poly([1]), 0, 1)
    with pytest.raises(ZeroEuler):
        laurent_negative_part(Poly([1]), 0, 1)


def test_laurent_negative_part_spec_examples():
    assert laurent_negative_part(Poly.monomial(2), 1, 2) == [0, 0]
    assert laurent_negative_part(Poly([1]), 1, 2) == [1, 0]
    assert laurent_negative_part(Poly.monomial(1, 3), 3, 2) == [0, 1]


@given(small_polys, rationals, st.integers(min_value=0, max_value=5))
def test_residue_matches_oracle(p, eps, n):
    if eps == 0:
        return
    assert residue_at_zero(p, eps, n) == laurent_residue(p.coeffs, eps, n)
    assert laurent_negative_part(p, eps, n) == laurent_tail(p.coeffs, eps, n)


@given(small_polys, st.integers(min_value=0, max_value=4))
def test_negative_part_vanishes_iff_divisible(p, n):
    tail = laurent_negative_part(p, 1, n)
    divisible = all(p.coeff(k) == 0 for k in range(n))
    assert (not any(tail)) == divisible


@given(small_polys, small_polys, small_polys, rationals, rationals)
def test_residue_bilinear(p1, p2, q, a, b):
    combo = a * p1 + b * p2
    lhs = residue_at_zero(combo * q, 3, 4)
    rhs = a * residue_at_zero(p1 * q, 3, 4) + b * residue_at_zero(p2 * q, 3, 4)
    assert lhs == rhs


# --- matrices ----------------------------------------------------------------


def test_rref_rank_one():
    red, pivots = rref(MatrixQ.from_rows([[2, 4], [1, 2]]))
    assert red == MatrixQ.from_rows([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_identity_fixed():
    eye = MatrixQ.identity(3)
    red, pivots = rref(eye)
    assert red == eye
    assert pivots == (0, 1, 2)


def test_rref_zero_matrix():
    z = MatrixQ.from_rows([[0, 0], [0, 0]])
    red, pivots = rref(z)
    assert red == z
    assert pivots == ()


matrix_strategy = st.integers(min_value=1, max_value=4).flatmap(
    lambda c: st.lists(
        st.lists(rationals, min_size=c, max_size=c), min_size=1, max_size=4
    ).map(lambda rows: MatrixQ.from_rows(rows, cols=c))
)


@given(matrix_strategy)
def test_rref_idempotent(m):
    red, pivots = rref(m)
    again, pivots2 = rref(red)
    assert again == red
    assert pivots2 == pivots


@given(matrix_strategy)
def test_rref_pivots_are_one_and_zero_rows_last(m):
    red, pivots = rref(m)
    for i, c in enumerate(pivots):
        assert red.entry(i, c) == 1
        for r in range(red.rows):
            if r != i:
                assert red.entry(r, c) == 0
    for i in range(len(pivots), red.rows):
        assert all(e == 0 for e in red.row(i))


def test_nullspace_spec_examples():
    assert nullspace(MatrixQ.from_rows([[1, -1]])) == MatrixQ.from_rows([[1, 1]])
    assert nullspace(MatrixQ.identity(2)).rows == 0
    # span{(2, 1)} in canonical form has leading coefficient 1
    ns = nullspace(MatrixQ.from_rows([[Fraction(1, 2), -1]]))
    assert ns == MatrixQ.from_rows([[1, Fraction(1, 2)]])
    canonical, _ = rref(MatrixQ.from_rows([[2, 1]]))
    assert ns == canonical


@given(matrix_strategy)
def test_nullspace_vectors_annihilate_and_rank_nullity(m):
    ns = nullspace(m)
    _, pivots = rref(m)
    assert len(pivots) + ns.rows == m.cols
    for i in range(ns.rows):
        assert all(x == 0 for x in mat_vec(m, list(ns.row(i))))


def test_nullspace_of_empty_constraint_matrix():
    ns = nullspace(MatrixQ(0, 3, ()))
    assert ns == MatrixQ.identity(3)


def test_solve_upper_triangular_examples():
    assert solve_upper_triangular(MatrixQ.from_rows([[1]]), [-1]) == (Fraction(-1),)
    assert solve_upper_triangular(
        MatrixQ.from_rows([[1, 1], [0, -1]]), [0, -1]
    ) == (Fraction(-1), Fraction(1))
    assert solve_upper_triangular(
        MatrixQ.from_rows([[2, 0], [0, 3]]), [4, 6]
    ) == (Fraction(2), Fraction(2))


def test_solve_upper_triangular_errors():
    with pytest.raises(SingularDiagonal):
        solve_upper_triangular(MatrixQ.from_rows([[1, 2], [0, 0]]), [1, 1])
    with pytest.raises(NotTriangular):
        solve_upper_triangular(MatrixQ.from_rows([[1, 0], [2, 1]]), [1, 1])
    with pytest.raises(ValueError):
        solve_upper_triangular(MatrixQ.from_rows([[1, 0]]), [1])


@settings(max_examples=50)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda k: st.tuples(
            st.lists(
                st.lists(rationals, min_size=k, max_size=k), min_size=k, max_size=k
            ),
            st.lists(rationals, min_size=k, max_size=k),
        )
    )
)
def test_solve_upper_triangular_roundtrip(data):
    rows, x = data
    k = len(x)
    tri = [
        [
            Fraction(1) if i == j else (rows[i][j] if j > i else Fraction(0))
            for j in range(k)
        ]
        for i in range(k)
    ]
    m = MatrixQ.from_rows(tri)
    rhs = mat_vec(m, x)
    assert solve_upper_triangular(m, rhs) == tuple(x)


def test_vstack_and_transpose():
    a = MatrixQ.from_rows([[1, 2]])
    b = MatrixQ.from_rows([[3, 4], [5, 6]])
    s = vstack([a, b])
    assert s.to_rows() == [[1, 2], [3, 4], [5, 6]]
    assert s.transpose().to_rows() == [[1, 3, 5], [2, 4, 6]]
