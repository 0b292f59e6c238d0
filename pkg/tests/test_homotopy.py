from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from tenspec.homotopy import SquareSystem, dedupe_solutions, solve_total_degree
from tenspec.poly import MPoly
from tenspec.roots import aberth
from tenspec.sampling import make_rng


def coords(sols):
    return sorted((tuple(np.round(s.coords, 8)) for s in sols), key=lambda t: [(z.real, z.imag) for z in t])


def test_univariate_square_roots():
    x = MPoly.variable(1, 0)
    sols = solve_total_degree(SquareSystem([x ** 2 - 1]), seed=1)
    got = sorted(complex(s.coords[0]).real for s in sols)
    assert np.allclose(got, [-1, 1], atol=1e-10)


def test_circle_meets_diagonal():
    x, y = MPoly.variable(2, 0), MPoly.variable(2, 1)
    sols = solve_total_degree(SquareSystem([x ** 2 + y ** 2 - 2, x - y]), seed=2)
    assert len(sols) == 2
    for s in sols:
        assert np.allclose(s.coords[0], s.coords[1]) and abs(abs(s.coords[0]) - 1) < 1e-10


def _random_quadric(rng):
    x, y = MPoly.variable(2, 0).to_float(), MPoly.variable(2, 1).to_float()
    c = rng.normal(size=6) + 1j * rng.normal(size=6)
    return c[0] * x ** 2 + c[1] * x * y + c[2] * y ** 2 + c[3] * x + c[4] * y + c[5]


def _eliminate(p, q):
    """Resultant in y of two quadrics, as numeric coefficients of a quartic in x."""
    def split(f):
        out = [np.zeros(3, dtype=complex) for _ in range(3)]  # coefficients of y^k, by x power
        for (i, j), c in f.terms.items():
            out[j][i] += complex(c)
        return [np.polynomial.Polynomial(v) for v in out]
    a0, a1, a2 = split(p)
    b0, b1, b2 = split(q)
    # Sylvester determinant of a2 y^2 + a1 y + a0 and b2 y^2 + b1 y + b0
    r = (a2 * b0 - a0 * b2) ** 2 - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1)
    return r.coef


def test_random_quadric_pair_matches_elimination():
    rng = make_rng(11)
    for _ in range(5):
        p, q = _random_quadric(rng), _random_quadric(rng)
        sols = solve_total_degree(SquareSystem([p, q]), seed=rng)
        assert len(sols) == 4
        xs = aberth(list(_eliminate(p, q)))
        for s in sols:
            assert np.min(np.abs(np.array(xs) - s.coords[0])) < 1e-7
            assert s.residual < 1e-8


def test_same_seed_same_answer():
    rng = make_rng(3)
    system = SquareSystem([_random_quadric(rng), _random_quadric(rng)])
    a = solve_total_degree(system, seed=99, return_all=True)
    b = solve_total_degree(system, seed=99, return_all=True)
    assert [s.coords.tolist() for s in a] == [s.coords.tolist() for s in b]


def test_concurrent_runs_agree():
    rng = make_rng(4)
    system = SquareSystem([_random_quadric(rng), _random_quadric(rng)])
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda s: solve_total_degree(system, seed=s), [5, 5, 5, 5]))
    assert all(coords(r) == coords(results[0]) for r in results)


def test_dedupe_and_validation():
    x = MPoly.variable(1, 0)
    sols = solve_total_degree(SquareSystem([(x - 1) ** 2]), seed=0, return_all=True)
    assert len(dedupe_solutions([s for s in sols if s.converged], 1e-4)) <= 1
    with pytest.raises(ValueError):
        SquareSystem([x ** 2, x])
