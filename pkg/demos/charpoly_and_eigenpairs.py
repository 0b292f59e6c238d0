"""Characteristic polynomial and eigenpairs of a random binary quartic."""

from tenspec.resultant import char_poly
from tenspec.sampling import make_rng, random_form
from tenspec.spectra import eigenscheme

rng = make_rng(1)
f = random_form(rng, 1, 4, bound=9)
print("f =", f.form.to_text())

phi = char_poly(f)
print("degree of phi:", phi.degree)
print("coefficients:", phi.to_json())

rep = eigenscheme(f, rng=rng)
print("simple spectrum:", rep.simple_spectrum, " reduced:", rep.reduced)
for pair in rep.pairs:
    print("  lambda = %.6f%+.6fj  residual %.1e" % (pair.lam.real, pair.lam.imag, pair.residual))
