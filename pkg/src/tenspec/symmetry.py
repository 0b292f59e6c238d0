"""Torus and permutation actions preserving characteristic polynomials, and symmetric orbits.

A torus element a acts on a partially symmetric tensor by
f_i -> a_i^(d-1) f_i(a^-1 x) and on vectors by w -> (a_j w_j). A permutation
sigma sends the component f_i to slot sigma(i) after renaming x_k -> x_sigma(k),
and sends w to the vector with (sigma w)_sigma(j) = w_j. Both fix the unit tensor.
"""

from dataclasses import dataclass
from itertools import permutations, product
import math

import numpy as np

from .cyclotomic import Cyclotomic
from .poly import MPoly, to_coeff
from .tensor import PSTensor, SymForm, as_ps

__all__ = [
    "TorusElement",
    "GroupElement",
    "SymGroupElement",
    "torus_act",
    "perm_act",
    "sym_orbit",
    "transport",
]


@dataclass(frozen=True)
class TorusElement:
    a: tuple

    def __post_init__(self):
        a = tuple(to_coeff(x) for x in self.a)
        if any(x == 0 for x in a):
            raise ValueError("torus entries must be nonzero")
        object.__setattr__(self, "a", a)

    def inverse(self):
        return TorusElement(tuple(1 / x for x in self.a))


def _check_perm(perm, size):
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(size)):
        raise ValueError("not a permutation of 0..%d: %r" % (size - 1, perm))
    return perm


def torus_act(a, T):
    T = as_ps(T)
    a = a if isinstance(a, TorusElement) else TorusElement(tuple(a))
    if len(a.a) != T.n + 1:
        raise ValueError("torus element has %d entries, expected %d" % (len(a.a), T.n + 1))
    inv = [1 / x for x in a.a]
    comps = [f.scale_variables(inv) * (a.a[i] ** (T.d - 1)) for i, f in enumerate(T.components)]
    return PSTensor(T.n, T.d, comps)


def perm_act(sigma, T):
    T = as_ps(T)
    sigma = _check_perm(sigma, T.n + 1)
    comps = [None] * (T.n + 1)
    for i, f in enumerate(T.components):
        comps[sigma[i]] = f.permute_variables(sigma)
    return PSTensor(T.n, T.d, comps)


@dataclass(frozen=True)
class GroupElement:
    """g = sigma . a in the torus-permutation group; acts as T -> sigma.(a.T)."""

    torus: TorusElement
    perm: tuple

    def act(self, T):
        return perm_act(self.perm, torus_act(self.torus, T))

    def transport(self, w):
        return transport(self, w)

    def compose(self, other):
        """self * other, i.e. first other then self."""
        # sigma a sigma' a' = (sigma sigma') (sigma'^-1 a sigma') a'
        n1 = len(self.perm)
        inv_other = [0] * n1
        for i, p in enumerate(other.perm):
            inv_other[p] = i
        conj = [self.torus.a[other.perm[j]] for j in range(n1)]
        a = tuple(x * y for x, y in zip(conj, other.torus.a))
        perm = tuple(self.perm[other.perm[j]] for j in range(n1))
        return GroupElement(TorusElement(a), perm)


def transport(g, w):
    """Image of a vector w in W under g (torus scaling, then permutation)."""
    w = np.asarray(w, dtype=complex)
    scaled = np.array([complex(a) for a in g.torus.a]) * w
    out = np.empty_like(scaled)
    for j, p in enumerate(g.perm):
        out[p] = scaled[j]
    return out


@dataclass(frozen=True)
class SymGroupElement:
    """(zeta^k_0, ..., zeta^k_n) with zeta = exp(2 pi i / d), followed by a permutation."""

    roots: tuple
    perm: tuple
    d: int

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(int(k) % self.d for k in self.roots))
        object.__setattr__(self, "perm", _check_perm(self.perm, len(self.roots)))

    def act(self, f):
        """Image of the form: f(a^-1 x) with the variables then renamed by the permutation."""
        n1 = len(self.roots)
        out = {}
        for e, c in f.form.terms.items():
            k = -sum(r * x for r, x in zip(self.roots, e)) % self.d
            coeff = c * Cyclotomic.root(self.d, k) if k else c
            g = [0] * n1
            for i, x in enumerate(e):
                g[self.perm[i]] = x
            out[tuple(g)] = coeff
        return SymForm(f.n, f.d, MPoly(n1, out))


def sym_orbit(f):
    """Distinct images of f under the finite group of d-th roots of unity and permutations.

    Global scalings by d-th roots of unity fix f, so the first exponent is held at 0;
    the result has at most d^n (n+1)! members, in enumeration order.
    """
    if not isinstance(f, SymForm):
        raise TypeError("sym_orbit expects a SymForm")
    if f.n > 2:
        raise ValueError("orbits are supported for n <= 2")
    n1 = f.n + 1
    seen = set()
    out = []
    for perm in permutations(range(n1)):
        for ks in product(range(f.d), repeat=f.n):
            img = SymGroupElement((0,) + ks, perm, f.d).act(f)
            if img.form not in seen:
                seen.add(img.form)
                out.append(img)
    return out


def orbit_bound(n, d):
    return d ** n * math.factorial(n + 1)
