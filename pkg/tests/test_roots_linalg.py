from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from tenspec.cyclotomic import Cyclotomic
from tenspec.linalg import det_exact, det_field, det_float, det_symbolic, kernel_exact, rank_exact
from tenspec.poly import MPoly, UPoly
from tenspec.roots import aberth, cluster_roots, univariate_roots


def test_simple_roots():
    got = univariate_roots(UPoly([-1, 0, 1]))
    assert [m for _, m in got] == [1, 1]
    assert sorted(round(z.real) for z, _ in got) == [-1, 1]


def test_triple_root_exact_and_float():
    p = UPoly([-2, 1]) ** 3
    (z, m), = univariate_roots(p)
    assert m == 3 and abs(z - 2) < 1e-12
    (z, m), = univariate_roots(p.to_float())
    assert m == 3 and abs(z - 2) < 1e-4


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_float_cluster_multiplicity(m):
    (z, mult), = univariate_roots((UPoly([-2, 1]) ** m).to_float())
    assert mult == m


def test_constructed_roots_recovered():
    rng = np.random.default_rng(8)
    for _ in range(25):
        roots = rng.normal(size=8) + 1j * rng.normal(size=8)
        coeffs = np.poly(roots)[::-1]
        found = univariate_roots(UPoly(list(coeffs)))
        got = np.array([z for z, m in found for _ in range(m)])
        for r in roots:
            assert np.min(np.abs(got - r)) < 1e-9


def test_zero_roots_are_stripped():
    z = aberth([0, 0, -1, 1])
    assert np.sum(np.abs(z) < 1e-14) == 2


def test_cluster_roots_groups_nearby_points():
    out = cluster_roots(np.array([1.0, 1.0 + 1e-12, 3.0]))
    assert sorted(m for _, m in out) == [1, 2]


@given(st.lists(rationals, min_size=9, max_size=9))
def test_exact_det_agrees_with_float(vals):
    M = [vals[0:3], vals[3:6], vals[6:9]]
    exact = det_exact(M)
    approx = np.linalg.det(np.array(M, dtype=float))
    assert abs(float(exact) - approx) <= 1e-9 * (1 + abs(approx))


def test_det_symbolic_matches_exact_at_points():
    lam = MPoly.variable(1, 0)
    M = [[lam + 1, 2 * lam], [MPoly.constant(1, 3), lam * lam]]
    d = det_symbolic(M)
    for v in range(-3, 4):
        Mv = [[e.evaluate([v]) for e in row] for row in M]
        assert d.evaluate([v]) == det_exact(Mv)


def test_det_field_with_cyclotomic_entries():
    z = Cyclotomic.root(3)
    M = [[z, 1], [1, z * z]]
    assert det_field(M) == 0  # z^3 - 1


def test_rank_and_kernel():
    M = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    assert rank_exact(M) == 1
    K = kernel_exact(M)
    assert len(K) == 2
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_det_float_complex():
    assert abs(det_float([[1j, 0], [0, 1j]]) + 1) < 1e-15
