"""Resultants of n+1 forms in n+1 variables, discriminants and characteristic polynomials.

Supported cases: binary forms of any degree (Sylvester matrix) and three ternary
quadrics (Macaulay matrix at critical degree 4).

Sign convention: with the monomial orders fixed below, res(u) = +1 for the unit
tensor in every supported case.
"""

from fractions import Fraction

import numpy as np

from .errors import DegenerateInputError, UnsupportedCaseError
from .linalg import det_exact, det_float, rank_exact
from .poly import MPoly, UPoly, format_rational, monomials, to_coeff, univariate_interpolate
from .tensor import SymForm, as_ps, eigencount, symmetric_to_ps, unit_tensor

__all__ = [
    "sylvester_matrix",
    "sylvester_from_coeffs",
    "resultant_binary",
    "macaulay_matrix",
    "resultant_ternary_quadrics",
    "resultant",
    "discriminant",
    "CharPoly",
    "char_poly",
    "interpolation_nodes",
]


def sylvester_from_coeffs(c0, c1):
    """Sylvester matrix of two binary forms of equal degree k = d-1 given by coefficient lists.

    Coefficients are listed x0^k, x0^(k-1) x1, ..., x1^k. Columns are indexed by
    (i, m) with i the form and m a degree-(k-1) monomial, i-major; rows by the
    degree-(2k-1) monomials, all in graded-lex order. Entries may come from any ring.
    """
    k = len(c0) - 1
    if len(c1) != k + 1 or k < 1:
        raise ValueError("forms must share a degree >= 1")
    size = 2 * k
    zero = c0[0] * 0
    M = [[zero] * size for _ in range(size)]
    for i, c in enumerate((c0, c1)):
        for a in range(k):
            for b, v in enumerate(c):
                M[a + b][i * k + a] = v
    return M


def sylvester_matrix(T):
    T = as_ps(T)
    if T.n != 1:
        raise UnsupportedCaseError("Sylvester matrix needs n = 1, got n = %d" % T.n)
    return sylvester_from_coeffs(*(f.coefficients(T.d - 1) for f in T.components))


def _det(M):
    if any(isinstance(x, complex) for row in M for x in row):
        return det_float(M)
    return det_exact(M)


def resultant_binary(T):
    return _det(sylvester_matrix(T))


_DEG4 = monomials(3, 4)
_DEG4_INDEX = {e: i for i, e in enumerate(_DEG4)}
_NONREDUCED = [e for e in _DEG4 if sum(1 for k in e if k >= 2) >= 2]


def _macaulay_rows(forms):
    rows = []
    for e in _DEG4:
        i = next(j for j in range(3) if e[j] >= 2)
        shift = list(e)
        shift[i] -= 2
        row = [0] * 15
        for fe, c in forms[i].terms.items():
            row[_DEG4_INDEX[tuple(a + b for a, b in zip(fe, shift))]] = c
        rows.append(row)
    return rows


def macaulay_matrix(forms):
    """Numerator matrix (15 x 15) and denominator minor (3 x 3) for three ternary quadrics.

    Row for a degree-4 monomial x^a is (x^a / x_i^2) f_i with i the first index
    having a_i >= 2; columns are degree-4 monomials in graded-lex order.
    """
    if len(forms) != 3 or any(f.nvars != 3 or not f.is_homogeneous(2) for f in forms):
        raise ValueError("expected three quadrics in three variables")
    M = _macaulay_rows(forms)
    idx = [_DEG4_INDEX[e] for e in _NONREDUCED]
    minor = [[M[r][c] for c in idx] for r in idx]
    return M, minor


def _resultant_quadrics_direct(forms):
    M, minor = macaulay_matrix(forms)
    den = _det(minor)
    if den == 0:
        return None
    return _det(M) / den


def resultant_ternary_quadrics(f0, f1, f2, rng=None, max_tries=10):
    """Resultant of three ternary quadrics, degree 12 in the joint coefficients.

    When the Macaulay denominator vanishes the forms are replaced by B.(f o A) for
    random small-integer A, B and the factor det(A)^8 det(B)^4 is divided back out.
    """
    forms = [f0, f1, f2]
    exact = all(f.domain != "float" for f in forms)
    if exact:
        coeffs = [f.coefficients(2) for f in forms]
        if rank_exact(coeffs) < 3:
            return Fraction(0)
    val = _resultant_quadrics_direct(forms)
    if val is not None:
        return val
    if not exact and _det(macaulay_matrix(forms)[0]) == 0:
        return 0j
    rng = rng if rng is not None else np.random.default_rng(12345)
    for _ in range(max_tries):
        A = rng.integers(-3, 4, size=(3, 3)).tolist()
        B = rng.integers(-3, 4, size=(3, 3)).tolist()
        dA, dB = det_exact(A), det_exact(B)
        if dA == 0 or dB == 0:
            continue
        moved = [f.substitute_linear(A) for f in forms]
        mixed = [sum((moved[j] * B[i][j] for j in range(3)), MPoly.zero(3)) for i in range(3)]
        val = _resultant_quadrics_direct(mixed)
        if val is not None:
            return val / (dA ** 8 * dB ** 4)
    raise DegenerateInputError("Macaulay denominator vanished after %d random substitutions" % max_tries)


def resultant(T):
    """res of a PSTensor in the supported cases (n = 1, or (n, d) = (2, 3))."""
    T = as_ps(T)
    if T.n == 1:
        return resultant_binary(T)
    if (T.n, T.d) == (2, 3):
        return resultant_ternary_quadrics(*T.components)
    raise UnsupportedCaseError("resultant not implemented for (n, d) = (%d, %d)" % (T.n, T.d))


def discriminant(f):
    """disc(f) = res of the components of symmetric_to_ps(f)."""
    if not isinstance(f, SymForm):
        raise TypeError("discriminant expects a SymForm")
    if not (f.n == 1 or (f.n, f.d) == (2, 3)):
        raise UnsupportedCaseError("discriminant needs n = 1, or n = 2 with d = 3")
    return resultant(symmetric_to_ps(f))


def interpolation_nodes(count):
    """0, 1, -1, 2, -2, ... (``count`` nodes)."""
    nodes = [0]
    k = 1
    while len(nodes) < count:
        nodes.append(k)
        if len(nodes) < count:
            nodes.append(-k)
        k += 1
    return [Fraction(x) for x in nodes]


class CharPoly:
    """Monic characteristic polynomial lambda^D + c_1 lambda^(D-1) + ... + c_D."""

    __slots__ = ("n", "d", "coeffs")

    def __init__(self, n, d, coeffs):
        D = eigencount(n, d)
        if len(coeffs) != D:
            raise ValueError("expected %d coefficients, got %d" % (D, len(coeffs)))
        self.n, self.d, self.coeffs = n, d, tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs)

    @property
    def domain(self):
        return "float" if any(isinstance(c, complex) for c in self.coeffs) else "exact"

    def as_upoly(self):
        """Coefficients low -> high: (c_D, ..., c_1, 1)."""
        one = 1 + 0j if self.domain == "float" else 1
        return UPoly(list(reversed(self.coeffs)) + [one])

    def __call__(self, lam):
        return self.as_upoly()(lam)

    def to_float(self):
        return CharPoly(self.n, self.d, [complex(c) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, CharPoly) and (self.n, self.d, self.coeffs) == (other.n, other.d, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.d, self.coeffs))

    def to_json(self):
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                out.append(format_rational(c))
            else:
                c = complex(c)
                out.append([c.real, c.imag])
        return out

    def __repr__(self):
        return "CharPoly(n=%d, d=%d, %r)" % (self.n, self.d, self.to_json())


def _is_float(T):
    return any(f.domain == "float" for f in T.components)


def char_poly(T, t=None, nodes=None):
    """Monic characteristic polynomial of T relative to t (default: the unit tensor).

    res(T - lambda t) is evaluated at D+1 nodes and interpolated. For exact input the
    nodes are 0, 1, -1, 2, -2, ... unless ``nodes`` is given, and the result is exact.
    For floating input the nodes are the (D+1)-th roots of unity and the
    interpolation is a discrete Fourier transform.
    """
    T = as_ps(T)
    t = unit_tensor(T.n, T.d) if t is None else as_ps(t)
    if (T.n, T.d) != (t.n, t.d):
        raise ValueError("T and t have different shapes")
    D = eigencount(T.n, T.d)
    if _is_float(T) or _is_float(t):
        T, t = T.to_float(), t.to_float()
        rt = resultant(t)
        if abs(rt) == 0:
            raise DegenerateInputError("res(t) = 0")
        N = D + 1
        lams = np.exp(2j * np.pi * np.arange(N) / N)
        vals = np.array([resultant(T - t * complex(l)) for l in lams])
        c = np.fft.fft(vals) / N
        lead = (-1) ** D * rt
        monic = c / lead
        return CharPoly(T.n, T.d, [complex(x) for x in monic[:D][::-1]])
    rt = resultant(t)
    if rt == 0:
        raise DegenerateInputError("res(t) = 0")
    nodes = interpolation_nodes(D + 1) if nodes is None else [Fraction(x) for x in nodes]
    samples = [(lam, resultant(T - t * lam)) for lam in nodes]
    p = univariate_interpolate(samples, D)
    lead = (-1) ** D * rt
    coeffs = list(p.coeffs) + [Fraction(0)] * (D + 1 - len(p.coeffs))
    if coeffs[D] != lead:
        raise ArithmeticError("interpolated leading coefficient disagrees with (-1)^D res(t)")
    return CharPoly(T.n, T.d, [to_coeff(coeffs[D - i] / lead) for i in range(1, D + 1)])
