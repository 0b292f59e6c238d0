from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from tenspec.cyclotomic import Cyclotomic
from tenspec.poly import (
    MPoly,
    UPoly,
    format_rational,
    monomials,
    parse_rational,
    to_coeff,
    univariate_interpolate,
    vanishing_order,
)
from tenspec.sampling import make_rng, random_mpoly

x0, x1 = MPoly.variable(2, 0), MPoly.variable(2, 1)


def test_product_of_variables():
    assert x0 * x1 == MPoly.monomial((1, 1))


def test_square_of_sum():
    assert (x0 + x1) * (x0 + x1) == x0 ** 2 + 2 * x0 * x1 + x1 ** 2


def test_evaluate_examples():
    assert (x0 ** 3).evaluate([2, 1]) == 8
    f = MPoly.from_text("x0*x1^2 - x2^3 + x0*x2^2", 3)
    assert f.evaluate([1, 0, 0]) == 0


def test_partial_example():
    assert MPoly.from_text("x0^2*x1", 2).partial(0) == 2 * x0 * x1


def test_monomial_order_is_graded_lex():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials(3, 2)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6))
def test_evaluation_is_a_ring_homomorphism(a, b):
    p = MPoly.from_coefficients(3, 1, a[:3]) ** 2 + MPoly.from_coefficients(3, 1, a[3:])
    q = MPoly.from_coefficients(3, 2, b)
    rng = make_rng(len(a))
    for _ in range(20):
        pt = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 9))) for _ in range(3)]
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
        assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)


def test_partial_matches_central_differences():
    rng = make_rng(3)
    f = random_mpoly(rng, 3, 4, bound=5).to_float()
    h = 1e-5
    for _ in range(10):
        pt = rng.normal(size=3)
        for i in range(3):
            e = np.zeros(3)
            e[i] = h
            fd = (complex(f.evaluate(list(pt + e))) - complex(f.evaluate(list(pt - e)))) / (2 * h)
            exact = complex(f.partial(i).evaluate(list(pt)))
            assert abs(fd - exact) <= 1e-6 * (1 + abs(exact))


def test_text_round_trip():
    f = MPoly.from_text("3/2*x0^2*x1 - x1^3 + 7", 2)
    assert MPoly.from_text(f.to_text(), 2) == f


def test_complex_text_round_trip():
    f = MPoly(2, {(1, 0): 1.5 - 2j, (0, 1): -0.25 + 0j})
    assert MPoly.from_text(f.to_text(), 2) == f


def test_substitute_linear_identity_and_swap():
    f = MPoly.from_text("x0^2*x1 + x1^3", 2)
    assert f.substitute_linear([[1, 0], [0, 1]]) == f
    assert f.substitute_linear([[0, 1], [1, 0]]) == f.permute_variables((1, 0))


def test_cyclotomic_coefficients_mix_with_rationals():
    z = Cyclotomic.root(3)
    f = x0 * z
    assert (f * z * z) == x0
    assert to_coeff(z ** 3) == 1


def test_rational_parsing():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(ValueError):
        parse_rational("1/x")


def test_interpolate_examples():
    assert univariate_interpolate([(0, 0), (1, 1), (2, 4)], 2) == UPoly([0, 0, 1])
    p = univariate_interpolate([(0, 5), (1, 5), (2, 5)], 2)
    assert p.degree == 0 and p(17) == 5


def test_interpolate_rejects_duplicates_and_inconsistent_extras():
    with pytest.raises(ValueError):
        univariate_interpolate([(0, 1), (0, 2)], 1)
    with pytest.raises(ValueError):
        univariate_interpolate([(0, 0), (1, 1), (2, 5)], 1)


def test_vanishing_order_examples():
    assert vanishing_order(UPoly([0, 0, 0, 1, 1])) == 3
    assert vanishing_order(UPoly([2, 1])) == 0


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.integers(1, 3))
def test_squarefree_decomposition_recovers_multiplicities(roots, m):
    p = UPoly([1])
    for r in roots:
        p = p * UPoly([-r, 1]) ** m
    total = sum(f.degree * e for f, e in p.squarefree_decomposition())
    assert total == p.degree
    assert all(e % m == 0 for _, e in p.squarefree_decomposition())


def test_gcd_and_exact_division():
    a = UPoly([-1, 0, 1])  # (x-1)(x+1)
    b = UPoly([-1, 1]) * UPoly([2, 1])
    assert a.gcd(b) == UPoly([-1, 1])
    assert a.exact_div(UPoly([1, 1])) == UPoly([-1, 1])


def test_squarefree_input_is_returned_whole():
    p = UPoly([Fraction(1, 3), -2, 0, 5])
    assert p.squarefree_decomposition() == [(p.monic(), 1)]
    q = UPoly([Fraction(1, 3), -2, 0, 5]) * UPoly([-7, 2]) ** 3
    assert sorted(e for _, e in q.squarefree_decomposition()) == [1, 3]
