"""Order of contact between lines and the discriminant at forms with repeated roots."""

from tenspec.discgeom import _generic_g, form_with_profile, hurwitz_sample, line_order, mult_disc_binary
from tenspec.sampling import make_rng

rng = make_rng(2)
for profile in [(2, 1, 1), (3, 1), (2, 2), (4,)]:
    f, _ = form_with_profile(rng, profile)
    orders = {line_order(f, _generic_g(rng, f)) for _ in range(10)}
    print("profile %-12s multiplicity %d, generic line orders %s" % (profile, mult_disc_binary(f), sorted(orders)))

rep = hurwitz_sample(1, 5, 200, seed=3)
print("quintics, lines through the tangent cone: max order %d of %d" % (rep["max_order_found"], rep["D"]))
