from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, rationals
from tenspec.poly import MPoly
from tenspec.resultant import char_poly
from tenspec.sampling import make_rng, random_form, random_ps
from tenspec.spectra import eigenscheme
from tenspec.symmetry import (
    GroupElement,
    SymGroupElement,
    TorusElement,
    orbit_bound,
    perm_act,
    sym_orbit,
    torus_act,
    transport,
)
from tenspec.tensor import PSTensor, SymForm, unit_tensor


def test_trivial_torus_and_identity_permutation():
    T = random_ps(make_rng(0), 1, 4)
    assert torus_act((1, 1), T) == T
    assert perm_act((0, 1), T) == T


def test_torus_scales_basis_element():
    # v0 (x) x1^2: component 0 is x1^2
    T = PSTensor(1, 3, [MPoly.from_text("x1^2", 2), MPoly.zero(2)])
    a0, a1 = Fraction(3), Fraction(-2, 5)
    out = torus_act((a0, a1), T)
    assert out.components[0] == T.components[0] * (a0 ** 2 * a1 ** -2)


def test_unit_tensor_is_fixed():
    u = unit_tensor(2, 3)
    assert torus_act((2, 3, 5), u) == u
    for p in permutations(range(3)):
        assert perm_act(p, u) == u


@given(st.lists(rationals, min_size=8, max_size=8), nonzero_rationals, nonzero_rationals)
def test_torus_preserves_charpoly(vals, a0, a1):
    T = PSTensor.from_coefficients(1, 4, vals)
    assert char_poly(torus_act((a0, a1), T)) == char_poly(T)


@pytest.mark.parametrize("n,d", [(1, 3), (2, 3)])
def test_permutations_preserve_charpoly(n, d):
    T = random_ps(make_rng(n + d), n, d)
    phi = char_poly(T)
    for p in permutations(range(n + 1)):
        assert char_poly(perm_act(p, T)) == phi


def test_compose_matches_sequential_action():
    rng = make_rng(3)
    T = random_ps(rng, 2, 3)
    g = GroupElement(TorusElement((2, -1, 3)), (1, 2, 0))
    h = GroupElement(TorusElement((Fraction(1, 2), 5, -7)), (2, 1, 0))
    assert g.compose(h).act(T) == g.act(h.act(T))


def test_transport_moves_eigenvectors():
    rng = make_rng(4)
    T = random_ps(rng, 2, 3)
    g = GroupElement(TorusElement((2, -3, Fraction(1, 2))), (2, 0, 1))
    gT = g.act(T).to_float()
    for pair in eigenscheme(T, rng=rng).pairs:
        w = transport(g, pair.w)
        vals = np.array([complex(f.evaluate(list(w))) for f in gT.components])
        assert np.linalg.norm(vals - pair.lam * w ** 2) <= 1e-8 * np.linalg.norm(vals)


def test_sym_group_element_fixes_fermat():
    f = SymForm.from_text("x0^3 + x1^3 + x2^3", 2, 3)
    assert SymGroupElement((0, 1, 2), (2, 0, 1), 3).act(f) == f
    assert len(sym_orbit(f)) == 1


@pytest.mark.parametrize("d,size", [(5, 10), (6, 12)])
def test_generic_orbit_sizes(d, size):
    f = random_form(make_rng(d), 1, d)
    orbit = sym_orbit(f)
    assert len(orbit) == size == orbit_bound(1, d)
    phi = char_poly(f)
    for g in orbit:
        assert char_poly(g) == phi


def test_bad_inputs():
    with pytest.raises(ValueError):
        TorusElement((1, 0))
    with pytest.raises(ValueError):
        perm_act((0, 0), unit_tensor(1, 3))
