from fractions import Fraction
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from tenspec.poly import MPoly
from tenspec.sampling import make_rng, random_dense, random_form
from tenspec.tensor import (
    DenseTensor,
    PSTensor,
    SymForm,
    as_ps,
    contract,
    eigencount,
    project_partially_symmetric,
    symmetric_to_ps,
    symmetrize_array,
    tensor_from_json,
    tensor_to_json,
    unit_tensor,
)


@pytest.mark.parametrize("n,d,D", [(1, 3, 4), (2, 3, 12), (1, 7, 12), (1, 2, 2), (3, 2, 4)])
def test_eigencount(n, d, D):
    assert eigencount(n, d) == D


def test_eigencount_binary_formula():
    assert all(eigencount(1, d) == 2 * d - 2 for d in range(2, 10))


def test_unit_tensor_components():
    x = [MPoly.variable(2, i) for i in range(2)]
    assert list(unit_tensor(1, 3).components) == [x[0] ** 2, x[1] ** 2]
    y = [MPoly.variable(3, i) for i in range(3)]
    assert list(unit_tensor(2, 3).components) == [y[0] ** 2, y[1] ** 2, y[2] ** 2]


def test_unit_array_projects_to_unit_tensor():
    A = np.zeros((3, 3, 3), dtype=object)
    for i in range(3):
        A[i, i, i] = 1
    assert project_partially_symmetric(DenseTensor(2, 3, A)) == unit_tensor(2, 3)


def test_symmetric_to_ps_of_diagonal_cubic():
    c0, c1 = Fraction(2), Fraction(-7, 3)
    f = SymForm(1, 3, MPoly(2, {(3, 0): c0, (0, 3): c1}))
    x = [MPoly.variable(2, i) for i in range(2)]
    assert list(symmetric_to_ps(f).components) == [x[0] ** 2 * c0, x[1] ** 2 * c1]


def test_partially_symmetric_array_reproduces_slices():
    rng = make_rng(2)
    A = symmetrize_array(random_dense(rng, 1, 3))
    T = as_ps(A)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                e = [0, 0]
                e[j] += 1
                e[k] += 1
                mult = 1 if j == k else 2
                assert T.components[i].coefficient(tuple(e)) == mult * A.entries[i, j, k]


def test_symmetrization_preserves_contraction():
    rng = make_rng(5)
    for n in (1, 2):
        A = random_dense(rng, n, 3)
        S = symmetrize_array(A)
        for _ in range(20):
            w = [Fraction(int(v), 7) for v in rng.integers(-20, 21, size=n + 1)]
            assert contract(A, w) == contract(S, w)


def test_contract_examples():
    w = [Fraction(3), Fraction(-2)]
    assert contract(unit_tensor(1, 3), w) == [9, 4]
    T = as_ps(random_form(make_rng(1), 1, 4))
    assert contract(T, [0, 0]) == [0, 0]


@given(st.lists(rationals, min_size=6, max_size=6))
def test_json_round_trip_ps(vals):
    T = PSTensor.from_coefficients(1, 3, vals)
    assert tensor_from_json(json.loads(json.dumps(tensor_to_json(T)))) == T


def test_json_round_trip_complex_and_dense():
    f = SymForm.from_coefficients(1, 2, [1 + 2j, 0.5, -1j])
    assert tensor_from_json(tensor_to_json(f)) == f
    A = random_dense(make_rng(0), 1, 2)
    back = tensor_from_json(tensor_to_json(A))
    assert (back.entries == A.entries).all()


@pytest.mark.parametrize("obj,field", [
    ({"n": 1, "d": 3, "kind": "sym"}, "coeffs"),
    ({"n": 1, "d": 3, "kind": "weird", "coeffs": []}, "kind"),
    ({"n": 1, "d": 3, "kind": "sym", "coeffs": ["1", "2", "3"]}, "coeffs"),
    ({"n": 1, "d": 3, "kind": "sym", "coeffs": ["1", "2", "3", "a/b"]}, "coeffs[3]"),
    ({"n": 0, "d": 3, "kind": "sym", "coeffs": []}, "'n'"),
])
def test_malformed_json_names_field(obj, field):
    with pytest.raises(ValueError, match=field.replace("[", r"\[").replace("]", r"\]")):
        tensor_from_json(obj)


def test_ps_arithmetic():
    T = unit_tensor(1, 3)
    assert (T + T) == T * 2
    assert (T - T).is_zero()
