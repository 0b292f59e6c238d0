"""Seeded random generators for rationals, forms, tensors and group elements.

Rationals have numerator and denominator drawn uniformly from [-100, 100], with the
denominator made positive and nonzero.
"""

from fractions import Fraction
import math

import numpy as np

from .linalg import det_exact
from .poly import MPoly, monomials
from .tensor import DenseTensor, PSTensor, SymForm

__all__ = [
    "make_rng",
    "random_rational",
    "random_rationals",
    "random_form",
    "random_ps",
    "random_dense",
    "random_gl",
    "random_torus",
    "random_perm",
]


def make_rng(seed=None):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_rational(rng, bound=100):
    num = int(rng.integers(-bound, bound + 1))
    den = 0
    while den == 0:
        den = int(rng.integers(-bound, bound + 1))
    return Fraction(num, den)


def random_rationals(rng, count, nonzero=False, bound=100):
    out = []
    while len(out) < count:
        q = random_rational(rng, bound)
        if nonzero and q == 0:
            continue
        out.append(q)
    return out


def random_form(rng, n, d, bound=100):
    return SymForm.from_coefficients(n, d, random_rationals(rng, math.comb(n + d, n), bound=bound))


def random_ps(rng, n, d, bound=100):
    m = math.comb(n + d - 1, n)
    return PSTensor.from_coefficients(n, d, random_rationals(rng, (n + 1) * m, bound=bound))


def random_dense(rng, n, d, bound=100):
    vals = random_rationals(rng, (n + 1) ** d, bound=bound)
    return DenseTensor(n, d, np.array(vals, dtype=object).reshape((n + 1,) * d))


def random_gl(rng, size, bound=3):
    """Invertible integer matrix with entries in [-bound, bound]."""
    while True:
        A = rng.integers(-bound, bound + 1, size=(size, size)).tolist()
        if det_exact(A) != 0:
            return [[Fraction(int(x)) for x in row] for row in A]


def random_torus(rng, size, bound=100):
    return tuple(random_rationals(rng, size, nonzero=True, bound=bound))


def random_perm(rng, size):
    return tuple(int(x) for x in rng.permutation(size))


def random_linear_form(rng, nvars, bound=100):
    while True:
        c = random_rationals(rng, nvars, bound=bound)
        if any(c):
            return MPoly.from_coefficients(nvars, 1, c)


def random_mpoly(rng, nvars, degree, bound=100):
    return MPoly.from_coefficients(nvars, degree, random_rationals(rng, len(monomials(nvars, degree)), bound=bound))
