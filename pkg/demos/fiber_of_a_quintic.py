"""All binary forms sharing the characteristic polynomial of a random quintic (takes ~10 s)."""

import numpy as np

from tenspec.fibers import fiber_of_charpoly
from tenspec.resultant import char_poly
from tenspec.sampling import make_rng, random_form
from tenspec.symmetry import sym_orbit

f = random_form(make_rng(6), 1, 5, bound=9)
res = fiber_of_charpoly(char_poly(f), seed=7)
print("fiber size %d from %d paths (%d failed)" % (res.count, res.paths, res.failed_paths))

orbit = sym_orbit(f)
vec = lambda g: np.array([complex(c) for c in g.coefficients()])
hits = sum(any(np.allclose(vec(g), vec(s), rtol=1e-6) for s in res.solutions) for g in orbit)
print("orbit members found in the fiber: %d of %d" % (hits, len(orbit)))
