"""Classify the eight singular plane cubic orbits after a random change of coordinates."""

from tenspec.cubics import classify_cubic, multiplicity_table, orbit_table
from tenspec.sampling import make_rng, random_gl
from tenspec.tensor import SymForm

rng = make_rng(4)
for orbit in orbit_table():
    moved = SymForm(2, 3, orbit.representative.form.substitute_linear(random_gl(rng, 3)))
    print("%-18s -> %s" % (orbit.label, classify_cubic(moved, rng=rng)))

for row in multiplicity_table(10, seed=5):
    print("%-18s expected %d observed %s" % (row["label"], row["expected"], row["observed"]))
