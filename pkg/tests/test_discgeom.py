
import numpy as np
import pytest

from tenspec.discgeom import (
    CONTAINED,
    _generic_g,
    bincubic_identities,
    disc_along_line,
    factor_binary,
    form_with_profile,
    hurwitz_sample,
    line_order,
    mult_disc_binary,
    partitions,
    tangent_cone_contains,
    vanishing_order_at,
)
from tenspec.errors import DegenerateInputError
from tenspec.poly import MPoly
from tenspec.resultant import discriminant
from tenspec.sampling import make_rng
from tenspec.tensor import SymForm


x0, x1 = MPoly.variable(2, 0), MPoly.variable(2, 1)


def form(f):
    if isinstance(f, str):
        f = MPoly.from_text(f, 2)
    return SymForm(1, f.degree, f)


def test_factor_examples():
    r = factor_binary(form("x0^2*x1"))
    assert r.roots == [((0, 1), 2), ((1, 0), 1)]
    assert factor_binary(form("x0^3")).roots == [((0, 1), 3)]


def test_factor_recovers_constructed_roots():
    rng = make_rng(6)
    for _ in range(10):
        roots = rng.normal(size=5)
        poly = MPoly.constant(2, 1.0 + 0j)
        for r in roots:
            poly = poly * MPoly(2, {(1, 0): 1.0 + 0j, (0, 1): complex(-r)})
        got = factor_binary(SymForm(1, 5, poly)).roots
        ratios = np.array([complex(p[0]) / complex(p[1]) for p, m in got for _ in range(m)])
        for r in roots:
            assert np.min(np.abs(ratios - r)) < 1e-9


@pytest.mark.parametrize("text,mult", [("x0^2*x1", 1), ("x0^3", 2), ("x0^3*x1^2", 3), (x0 ** 2 * x1 ** 2 * (x0 + x1), 2)])
def test_mult_disc_examples(text, mult):
    assert mult_disc_binary(form(text)) == mult


def test_tangent_cone_examples():
    f = form("x0^3")
    assert tangent_cone_contains(f, form("x0^3 + 5*x0^2*x1 - x0*x1^2"))  # a3 = 0
    assert not tangent_cone_contains(f, form("x1^3 + x0^3"))
    g = form((x0 - 2 * x1) * (x0 ** 2 + x1 ** 2))
    assert tangent_cone_contains(form((x0 - 2 * x1) ** 2 * x1), g)
    with pytest.raises(DegenerateInputError):
        tangent_cone_contains(form("x0^3 + x1^3"), g)


def test_line_order_examples():
    # one double root: smooth point of the discriminant
    f = form("x0^2*x1")
    assert line_order(f, _generic_g(make_rng(1), f)) == 1
    # x0^3 with a3 = 0, a2 != 0
    assert line_order(form("x0^3"), form("2*x0^3 - x0^2*x1 + 3*x0*x1^2")) == 3


def test_line_order_contained_and_proportional():
    f = form("x0^2*x1")
    assert line_order(f, form("x0^2*x0 + x0^2*x1")) is CONTAINED
    with pytest.raises(ValueError):
        line_order(f, f * 3)


def test_disc_along_line_endpoint():
    f, g = form("x0^2*x1"), form("x1^3 + x0*x1^2")
    p = disc_along_line(f, g)
    assert p(0) == discriminant(f) == 0
    assert p(1) == discriminant(SymForm(1, 3, f.form + g.form))


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_generic_lines_have_order_equal_to_multiplicity(d):
    rng = make_rng(d)
    for profile in partitions(d):
        if profile[0] < 2:
            continue
        f, _ = form_with_profile(rng, profile)
        want = mult_disc_binary(f)
        assert want == sum(e - 1 for e in profile)
        for _ in range(5):
            assert line_order(f, _generic_g(rng, f)) == want


def test_partitions():
    assert sorted(partitions(4)) == sorted([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])


def test_vanishing_order_at():
    assert vanishing_order_at(form((x0 - 2 * x1) ** 2 * x0 * x1), x0 - 2 * x1) == 2
    assert vanishing_order_at(form("x0*x1^3"), x1) == 3


@pytest.mark.parametrize("d", [3, 4])
def test_hurwitz_sample_small(d):
    rep = hurwitz_sample(1, d, 60, seed=d)
    assert rep["D"] == 2 * d - 2
    assert rep["max_order_found"] < rep["D"]
    assert rep["contained"] == 0 and rep["hurwitz_empty"]


def test_bincubic_identity_report():
    rep = bincubic_identities()
    first, second, degenerate = rep["identities"]
    assert first["matched"] and first["scalar"] == "-1"
    assert degenerate["matched"]
    # the second displayed identity differs in the sign of its t^2 term; see the ledger
    assert not second["matched"]
    assert second["differing_coefficients"] == [
        {"monomial": "1*a2^2*t^2", "computed": "-1/3", "expected": "1/3"}
    ]
