"""Partially symmetric tensors, symmetric forms, dense arrays and the unit tensor."""

from fractions import Fraction
from itertools import permutations, product
import math

import numpy as np

from .errors import UnsupportedCaseError
from .poly import MPoly, format_rational, monomials, parse_rational, to_coeff

__all__ = [
    "PSTensor",
    "SymForm",
    "DenseTensor",
    "as_ps",
    "unit_tensor",
    "eigencount",
    "symmetric_to_ps",
    "project_partially_symmetric",
    "symmetrize_array",
    "contract",
    "tensor_from_json",
    "tensor_to_json",
]


def eigencount(n, d):
    """Generic number of eigenvalues D(n, d) = (n+1)(d-1)^n."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    return (n + 1) * (d - 1) ** n


class PSTensor:
    """A tuple of n+1 forms of degree d-1 in n+1 variables."""

    __slots__ = ("n", "d", "components")

    def __init__(self, n, d, components):
        comps = tuple(components)
        if len(comps) != n + 1:
            raise ValueError("expected %d components, got %d" % (n + 1, len(comps)))
        for f in comps:
            if f.nvars != n + 1:
                raise ValueError("component has %d variables, expected %d" % (f.nvars, n + 1))
            if not f.is_homogeneous(d - 1):
                raise ValueError("component is not homogeneous of degree %d" % (d - 1))
        self.n, self.d, self.components = n, d, comps

    @classmethod
    def from_coefficients(cls, n, d, coeffs):
        """Build from n+1 consecutive graded-lex blocks of coefficients."""
        m = math.comb(n + d - 1, n)
        if len(coeffs) != (n + 1) * m:
            raise ValueError("expected %d coefficients, got %d" % ((n + 1) * m, len(coeffs)))
        return cls(n, d, [MPoly.from_coefficients(n + 1, d - 1, coeffs[i * m:(i + 1) * m]) for i in range(n + 1)])

    def coefficients(self):
        return [c for f in self.components for c in f.coefficients(self.d - 1)]

    @property
    def domain(self):
        doms = {f.domain for f in self.components} - {None}
        return doms.pop() if len(doms) == 1 else ("exact" if not doms else "mixed")

    def __add__(self, other):
        return PSTensor(self.n, self.d, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return PSTensor(self.n, self.d, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return PSTensor(self.n, self.d, [-a for a in self.components])

    def __mul__(self, scalar):
        return PSTensor(self.n, self.d, [a * scalar for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PSTensor) and (self.n, self.d, self.components) == (other.n, other.d, other.components)

    def __hash__(self):
        return hash((self.n, self.d, self.components))

    def is_zero(self):
        return all(f.is_zero() for f in self.components)

    def to_float(self):
        return PSTensor(self.n, self.d, [f.to_float() for f in self.components])

    def norm(self):
        return math.sqrt(sum(abs(complex(c)) ** 2 for f in self.components for c in f.terms.values()))

    def __repr__(self):
        return "PSTensor(n=%d, d=%d, [%s])" % (self.n, self.d, ", ".join(map(str, self.components)))


class SymForm:
    """A homogeneous form of degree d in n+1 variables."""

    __slots__ = ("n", "d", "form")

    def __init__(self, n, d, form):
        if form.nvars != n + 1:
            raise ValueError("form has %d variables, expected %d" % (form.nvars, n + 1))
        if not form.is_homogeneous(d):
            raise ValueError("form is not homogeneous of degree %d" % d)
        self.n, self.d, self.form = n, d, form

    @classmethod
    def from_coefficients(cls, n, d, coeffs):
        return cls(n, d, MPoly.from_coefficients(n + 1, d, coeffs))

    @classmethod
    def from_text(cls, text, n, d):
        return cls(n, d, MPoly.from_text(text, n + 1))

    def coefficients(self):
        return self.form.coefficients(self.d)

    def __add__(self, other):
        return SymForm(self.n, self.d, self.form + other.form)

    def __sub__(self, other):
        return SymForm(self.n, self.d, self.form - other.form)

    def __mul__(self, scalar):
        return SymForm(self.n, self.d, self.form * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymForm) and (self.n, self.d, self.form) == (other.n, other.d, other.form)

    def __hash__(self):
        return hash((self.n, self.d, self.form))

    def is_zero(self):
        return self.form.is_zero()

    def __repr__(self):
        return "SymForm(n=%d, d=%d, %s)" % (self.n, self.d, self.form)


class DenseTensor:
    """Coordinate array of shape (n+1,)*d; only small cases (d <= 4, n <= 3) are supported."""

    __slots__ = ("n", "d", "entries")

    def __init__(self, n, d, entries):
        if d > 4 or n > 3:
            raise UnsupportedCaseError("dense tensors are limited to d <= 4 and n <= 3")
        arr = np.empty((n + 1,) * d, dtype=object)
        src = np.asarray(entries, dtype=object)
        if src.shape != arr.shape:
            src = src.reshape(arr.shape)
        for idx in np.ndindex(arr.shape):
            arr[idx] = to_coeff(src[idx])
        self.n, self.d, self.entries = n, d, arr


def as_ps(T):
    """Coerce a SymForm / DenseTensor / PSTensor to a PSTensor."""
    if isinstance(T, PSTensor):
        return T
    if isinstance(T, SymForm):
        return symmetric_to_ps(T)
    if isinstance(T, DenseTensor):
        return project_partially_symmetric(T)
    raise TypeError("not a tensor: %r" % (T,))


def unit_tensor(n, d):
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    comps = []
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = d - 1
        comps.append(MPoly(n + 1, {tuple(e): 1}))
    return PSTensor(n, d, comps)


def symmetric_to_ps(f):
    """Components f_i = (1/d) df/dx_i, so that sum x_i^d maps to the unit tensor."""
    return PSTensor(f.n, f.d, [f.form.partial(i) / f.d for i in range(f.n + 1)])


def project_partially_symmetric(A):
    """f_i(x) = sum over i2..id of A[i, i2, ..., id] x_i2 ... x_id."""
    n, d = A.n, A.d
    comps = []
    for i in range(n + 1):
        terms = {}
        for rest in product(range(n + 1), repeat=d - 1):
            c = A.entries[(i,) + rest]
            if c != 0:
                e = [0] * (n + 1)
                for j in rest:
                    e[j] += 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + c
        comps.append(MPoly(n + 1, terms))
    return PSTensor(n, d, comps)


def symmetrize_array(A):
    """The array pi_S(A): average of A over all permutations of axes 2..d."""
    perms = list(permutations(range(1, A.d)))
    out = np.empty(A.entries.shape, dtype=object)
    for idx in np.ndindex(A.entries.shape):
        total = Fraction(0) if all(isinstance(x, Fraction) for x in A.entries.flat) else 0j
        for p in perms:
            total = total + A.entries[(idx[0],) + tuple(idx[k] for k in p)]
        out[idx] = total / len(perms)
    return DenseTensor(A.n, A.d, out)


def contract(T, w):
    """T(w^(d-1)) = (f_0(w), ..., f_n(w))."""
    T = as_ps(T)
    if len(w) != T.n + 1:
        raise ValueError("vector has length %d, expected %d" % (len(w), T.n + 1))
    return [f.evaluate(list(w)) for f in T.components]


# JSON format

def _coeff_to_json(c):
    if isinstance(c, Fraction):
        return format_rational(c)
    c = complex(c)
    return [c.real, c.imag]


def _coeff_from_json(v, field):
    if isinstance(v, bool):
        raise ValueError("field %s: booleans are not coefficients" % field)
    if isinstance(v, (int, str)):
        try:
            return parse_rational(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("field %s: bad rational %r" % (field, v)) from exc
    if isinstance(v, float):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise ValueError("field %s: unsupported coefficient %r" % (field, v))


def tensor_from_json(obj):
    """Parse ``{"n", "d", "kind", "coeffs"}``; errors name the offending field."""
    if not isinstance(obj, dict):
        raise ValueError("tensor JSON must be an object")
    for key in ("n", "d", "kind", "coeffs"):
        if key not in obj:
            raise ValueError("missing field %r" % key)
    n, d, kind, coeffs = obj["n"], obj["d"], obj["kind"], obj["coeffs"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("field 'n' must be a positive integer")
    if not isinstance(d, int) or d < 2:
        raise ValueError("field 'd' must be an integer >= 2")
    if kind not in ("sym", "ps", "dense"):
        raise ValueError("field 'kind' must be one of sym, ps, dense")
    if not isinstance(coeffs, list):
        raise ValueError("field 'coeffs' must be a list")
    if kind == "dense":
        coeffs = list(np.asarray(coeffs, dtype=object).reshape(-1))
    vals = [_coeff_from_json(v, "coeffs[%d]" % i) for i, v in enumerate(coeffs)]
    if len({type(v) is complex for v in vals}) > 1:
        vals = [complex(v) for v in vals]
    expected = {
        "sym": math.comb(n + d, n),
        "ps": (n + 1) * math.comb(n + d - 1, n),
        "dense": (n + 1) ** d,
    }[kind]
    if len(vals) != expected:
        raise ValueError("field 'coeffs' has %d entries, expected %d" % (len(vals), expected))
    if kind == "sym":
        return SymForm.from_coefficients(n, d, vals)
    if kind == "ps":
        return PSTensor.from_coefficients(n, d, vals)
    return DenseTensor(n, d, np.array(vals, dtype=object).reshape((n + 1,) * d))


def tensor_to_json(T):
    if isinstance(T, SymForm):
        kind, coeffs = "sym", T.coefficients()
    elif isinstance(T, PSTensor):
        kind, coeffs = "ps", T.coefficients()
    elif isinstance(T, DenseTensor):
        kind, coeffs = "dense", list(T.entries.reshape(-1))
    else:
        raise TypeError("not a tensor: %r" % (T,))
    return {"n": T.n, "d": T.d, "kind": kind, "coeffs": [_coeff_to_json(c) for c in coeffs]}


def ps_monomials(n, d):
    """Index of the flattened PSTensor coefficient vector: (component, exponent) pairs."""
    return [(i, e) for i in range(n + 1) for e in monomials(n + 1, d - 1)]
