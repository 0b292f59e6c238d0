from fractions import Fraction

import numpy as np
import pytest

from tenspec.errors import NotAnEigenvalueError, UnsupportedCaseError
from tenspec.poly import MPoly
from tenspec.sampling import make_rng, random_form
from tenspec.spectra import (
    CURVE,
    common_zeros_quadrics,
    dedupe_points,
    eigenscheme,
    eigenvalues,
    eigenvectors_for,
    mult_lower_bound_check,
    normalize_projective,
    projective_distance,
)
from tenspec.tensor import PSTensor, SymForm, as_ps, eigencount, unit_tensor


def _diag_cubic(c0, c1):
    return SymForm(1, 3, MPoly(2, {(3, 0): Fraction(c0), (0, 3): Fraction(c1)}))


def _residual(T, lam, w):
    T = as_ps(T).to_float()
    w = normalize_projective(w)
    vals = np.array([complex(f.evaluate(list(w))) for f in T.components])
    return np.linalg.norm(vals - lam * w ** (T.d - 1))


def test_unit_tensor_has_single_eigenvalue():
    for n, d in [(1, 3), (2, 3)]:
        (lam, m), = eigenvalues(unit_tensor(n, d))
        assert abs(lam - 1) < 1e-12 and m == eigencount(n, d)


def test_diagonal_cubic_eigenvalues():
    got = eigenvalues(_diag_cubic(3, -2))
    assert [(round(z.real, 9), m) for z, m in got] == [(-2.0, 2), (3.0, 2)]


def test_random_cubic_multiplicities_sum_to_D():
    rng = make_rng(0)
    for _ in range(10):
        assert sum(m for _, m in eigenvalues(random_form(rng, 1, 3))) == 4


def test_diagonal_cubic_eigenvector_is_coordinate_point():
    pts = eigenvectors_for(_diag_cubic(3, -2), lam=Fraction(3)).points
    assert len(pts) == 1 and projective_distance(pts[0], [1, 0]) < 1e-12


def test_unit_tensor_is_infinite():
    assert eigenvectors_for(unit_tensor(1, 3), lam=1).infinite
    assert eigenscheme(unit_tensor(1, 3)).infinite


def test_cusp_eigenvector():
    f = SymForm.from_text("x0*x1^2 - x2^3", 2, 3)
    pts = eigenvectors_for(f, lam=0).points
    assert len(pts) == 1 and projective_distance(pts[0], [1, 0, 0]) < 1e-8


def test_not_an_eigenvalue():
    with pytest.raises(NotAnEigenvalueError):
        eigenvectors_for(_diag_cubic(3, -2), lam=Fraction(1))


@pytest.mark.parametrize("n,d", [(1, 3), (1, 4), (1, 5), (2, 3)])
def test_eigenpairs_satisfy_residual(n, d):
    rng = make_rng(n * 10 + d)
    for _ in range(3):
        T = random_form(rng, n, d)
        rep = eigenscheme(T, rng=rng)
        scale = as_ps(T).norm()
        for p in rep.pairs:
            assert _residual(T, p.lam, p.w) <= 1e-10 * (1 + scale)


def test_random_quintics_are_reduced():
    rng = make_rng(99)
    for _ in range(10):
        rep = eigenscheme(random_form(rng, 1, 5), rng=rng)
        assert rep.reduced and len(rep.pairs) == 8
        pts = [p.w for p in rep.pairs]
        assert len(dedupe_points(pts)) == 8


def test_random_ternary_cubic_has_twelve_eigenvectors():
    rep = eigenscheme(random_form(make_rng(5), 2, 3))
    assert rep.reduced and len(rep.pairs) == 12


def test_double_eigenvalue_with_two_point_singular_locus():
    # T - 0*u = (q, 2q) with q = x0^2 - x1^2, so Sing(T) = {(1:1), (1:-1)}
    q = MPoly.from_text("x0^2 - x1^2", 2)
    T = PSTensor(1, 3, [q, q * 2])
    evs = eigenvalues(T)
    zero = [m for z, m in evs if abs(z) < 1e-9]
    assert zero and zero[0] >= 2
    pts = eigenvectors_for(T, lam=0).points
    assert len(pts) == 2
    assert {round(float(np.real(p[1] / p[0]))) for p in pts} == {1, -1}
    rep = eigenscheme(T)
    assert not rep.simple_spectrum
    distinct = len(dedupe_points([p.w for p in rep.pairs]))
    assert rep.reduced == (distinct == eigencount(1, 3) and not rep.infinite)


def test_common_zeros_of_coordinate_quadrics():
    x = [MPoly.variable(3, i) for i in range(3)]
    pts = common_zeros_quadrics(x[0] * x[1], x[1] * x[2], x[0] * x[2])
    assert len(pts) == 3
    assert common_zeros_quadrics(x[0] ** 2, x[0] * x[1], x[0] * x[2]) is CURVE


def test_mult_lower_bound_examples():
    f = SymForm.from_text("x0^3", 1, 3)
    alg, hyper = mult_lower_bound_check(f, 0)
    assert alg >= 2 and hyper == 2
    alg, hyper = mult_lower_bound_check(SymForm.from_text("x0^2*x1", 1, 3), 0)
    assert alg >= 1 and hyper == 1
    h = random_form(make_rng(2), 1, 3)
    for lam, m in eigenvalues(h):
        if m == 1:
            alg, hyper = mult_lower_bound_check(h, lam)
            assert alg == 1 and hyper <= 1


def test_unsupported_eigenvector_case():
    with pytest.raises(UnsupportedCaseError):
        eigenscheme(unit_tensor(2, 4))


def test_projective_helpers():
    w = normalize_projective([2j, 0])
    assert abs(w[0] - 1) < 1e-15
    assert projective_distance([1, 1], [-3, -3]) < 1e-12
