from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tenspec.errors import UnsupportedCaseError
from tenspec.fibers import (
    coeffs_from_power_sums,
    domain_dimension,
    exact_directional_derivative,
    fiber_of_charpoly,
    jacobian_matrix,
    jacobian_rank,
    power_sums_from_coeffs,
)
from tenspec.resultant import char_poly
from tenspec.sampling import make_rng, random_form, random_rationals
from tenspec.symmetry import sym_orbit


def coeff_vector(f):
    return np.array([complex(c) for c in f.coefficients()])


def contains(solutions, f, tol=1e-6):
    v = coeff_vector(f)
    return any(np.linalg.norm(coeff_vector(s) - v) <= tol * (1 + np.linalg.norm(v)) for s in solutions)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8))
def test_power_sums_round_trip(c):
    c = [Fraction(x) for x in c]
    assert coeffs_from_power_sums(power_sums_from_coeffs(c)) == c


def test_power_sums_of_known_roots():
    # (x - 1)(x - 2)(x - 3)
    assert power_sums_from_coeffs([-6, 11, -6]) == [6, 14, 36]


def test_cubic_fiber_has_24_points_and_contains_the_orbit():
    f = random_form(make_rng(31), 1, 3)
    res = fiber_of_charpoly(char_poly(f), seed=1)
    assert res.count == 24
    assert res.max_residual < 1e-8
    for g in sym_orbit(f):
        assert contains(res.solutions, g)
    for g in res.solutions:
        phi = char_poly(g)
        assert np.allclose([complex(c) for c in phi.coeffs], [complex(c) for c in char_poly(f).coeffs], rtol=1e-7)


def test_quartic_fiber_contains_the_seed():
    f = random_form(make_rng(32), 1, 4)
    res = fiber_of_charpoly(char_poly(f), seed=2)
    assert res.count == 24
    assert contains(res.solutions, f)


def test_unsupported_cases():
    f = random_form(make_rng(1), 2, 3)
    with pytest.raises(UnsupportedCaseError):
        fiber_of_charpoly(char_poly(f), seed=0)
    with pytest.raises(UnsupportedCaseError):
        fiber_of_charpoly(char_poly(random_form(make_rng(1), 1, 3)), symmetric=False)


@pytest.mark.parametrize("d,rank", [(3, 4), (4, 5), (5, 6)])
def test_symmetric_ranks_are_full(d, rank):
    assert domain_dimension(1, d, True) == d + 1
    assert jacobian_rank(1, d, seed=d) == rank


def test_partially_symmetric_cubic_rank():
    assert domain_dimension(1, 3, False) == 6
    assert jacobian_rank(1, 3, symmetric=False, seed=5) == 4


def test_finite_differences_match_exact_derivative():
    rng = make_rng(8)
    y = random_rationals(rng, 4)
    J = jacobian_matrix(1, 3, y)
    for j in range(4):
        e = [Fraction(int(i == j)) for i in range(4)]
        exact = np.array([complex(c) for c in exact_directional_derivative(1, 3, y, e)])
        assert np.allclose(J[:, j], exact, rtol=1e-7, atol=1e-9)
