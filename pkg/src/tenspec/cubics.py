"""The eight orbit strata of singular plane cubics: representatives, classification, tangent cones."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .discgeom import CONTAINED, factor_binary, line_order
from .errors import TenspecError
from .linalg import kernel_exact, rank_exact
from .poly import MPoly, UPoly
from .resultant import discriminant
from .sampling import make_rng, random_form, random_mpoly, random_rational
from .spectra import CURVE, _eliminate_x2, _split_x2, common_zeros_quadrics
from .tensor import SymForm, symmetric_to_ps

__all__ = [
    "OrbitDescriptor",
    "TCComponent",
    "orbit_table",
    "singular_points_cubic",
    "classify_cubic",
    "tangent_cone_contains_cubic",
    "InconclusiveClassification",
    "SMOOTH",
    "sample_generic_g",
    "sample_tc_g",
    "hurwitz_sample_cubics",
    "multiplicity_table",
]

SMOOTH = "smooth"
HYPERPLANE = "hyperplane-at-point"
CONE = "singular-binary-cubic-cone-over-line"


class InconclusiveClassification(TenspecError, ValueError):
    """The classification tests are not decisive for this input."""


@dataclass(frozen=True)
class TCComponent:
    kind: str
    anchor: tuple  # a point for hyperplanes, the coefficients of a linear form for cones
    multiplicity: int


@dataclass(frozen=True)
class OrbitDescriptor:
    label: str
    representative: SymForm
    multiplicity: int
    tangent_cone: tuple


def _cubic(text):
    return SymForm.from_text(text, 2, 3)


_E = [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0)),
      (Fraction(0), Fraction(0), Fraction(1))]
_X0 = (Fraction(1), Fraction(0), Fraction(0))


def orbit_table():
    """The eight orbits in order of increasing multiplicity."""
    rows = [
        ("nodal", "x0*x1^2 - x2^3 + x0*x2^2", 1, [TCComponent(HYPERPLANE, _E[0], 1)]),
        ("cuspidal", "x0*x1^2 - x2^3", 2, [TCComponent(HYPERPLANE, _E[0], 2)]),
        ("conic+secant", "x0^3 + x0*x1*x2", 2,
         [TCComponent(HYPERPLANE, _E[1], 1), TCComponent(HYPERPLANE, _E[2], 1)]),
        ("conic+tangent", "x0^2*x1 + x0*x2^2", 3, [TCComponent(HYPERPLANE, _E[1], 3)]),
        ("triangle", "x0*x1*x2", 3, [TCComponent(HYPERPLANE, p, 1) for p in _E]),
        ("asterisk", "x0^2*x1 + x0*x1^2", 4, [TCComponent(HYPERPLANE, _E[2], 4)]),
        ("line+double-line", "x0^2*x1", 6,
         [TCComponent(HYPERPLANE, _E[2], 2), TCComponent(CONE, _X0, 1)]),
        ("triple-line", "x0^3", 8, [TCComponent(CONE, _X0, 2)]),
    ]
    return [OrbitDescriptor(label, _cubic(text), mult, tuple(tc)) for label, text, mult, tc in rows]


def _orbit(label):
    return next(o for o in orbit_table() if o.label == label)


def _exact_point(w, quadrics):
    """Rationalize a numeric projective point and confirm it exactly; else return it unchanged."""
    w = np.asarray(w, dtype=complex)
    k = int(np.argmax(np.abs(w)))
    v = w / w[k]
    if np.max(np.abs(v.imag)) > 1e-9:
        return tuple(w)
    q = [Fraction(x.real).limit_denominator(10 ** 6) for x in v]
    if all(f.evaluate(q) == 0 for f in quadrics):
        first = next(x for x in q if x != 0)
        return tuple(x / first for x in q)
    return tuple(w)


def singular_points_cubic(f, rng=None):
    """Singular points of a plane cubic, or CURVE when the singular locus is a curve.

    Exact input yields Fraction coordinates (first nonzero coordinate 1) whenever the
    point is rational.
    """
    if not isinstance(f, SymForm) or (f.n, f.d) != (2, 3):
        raise ValueError("expected a ternary cubic")
    comps = symmetric_to_ps(f).components
    scale = 1.0 + max(abs(complex(c)) for c in f.form.terms.values()) if not f.is_zero() else 1.0
    # exact input polishes to roundoff, so a tight tolerance rejects near-miss stragglers
    tol = 1e-8 if f.form.domain == "float" else 1e-11
    res = common_zeros_quadrics(*comps, tol=tol, scale=scale, rng=rng or np.random.default_rng(0))
    if res is CURVE:
        return CURVE
    if f.form.domain == "float":
        return [tuple(w) for w in res]
    return [_exact_point(w, comps) for w in res]


def _exact_single_point(quadrics, rng, attempts=8):
    """The common zero of three rational ternary quadrics when it is unique, hence rational.

    In a random integer frame, the pairwise eliminants of x2 share exactly the
    projection of that point; x2 then follows from a combination linear in x2.
    """
    for _ in range(attempts):
        A = [[Fraction(int(v)) for v in row] for row in rng.integers(-4, 5, size=(3, 3))]
        if rank_exact(A) < 3:
            continue
        moved = [q.substitute_linear(A) for q in quadrics]
        g = None
        for i in range(3):
            for j in range(i + 1, 3):
                r = UPoly(list(reversed(_eliminate_x2(moved[i], moved[j]))))
                if not r.is_zero():
                    g = r if g is None else g.gcd(r)
        if g is None or g.degree < 1:
            continue
        factors = g.squarefree_decomposition()
        if len(factors) != 1 or factors[0][0].degree != 1:
            continue
        g = factors[0][0]
        x0 = -g.coeffs[0] / g.coeffs[1]
        for h0, h1 in ((moved[0], moved[1]), (moved[0], moved[2]), (moved[1], moved[2])):
            (a0, b0, c0), (a1, b1, c1) = _split_x2(h0), _split_x2(h1)
            lin = a1 * (b0[0] * x0 + b0[1]) - a0 * (b1[0] * x0 + b1[1])
            if lin == 0:
                continue
            const = a1 * (c0[0] * x0 * x0 + c0[1] * x0 + c0[2]) - a0 * (c1[0] * x0 * x0 + c1[1] * x0 + c1[2])
            w = [x0, Fraction(1), -const / lin]
            if all(q.evaluate(w) == 0 for q in moved):
                p = [sum(A[i][k] * w[k] for k in range(3)) for i in range(3)]
                first = next(x for x in p if x != 0)
                return tuple(x / first for x in p)
    return None


def _complete_basis(vectors):
    """Extend independent rational vectors in Q^3 to a basis (columns of the returned matrix)."""
    cols = [list(v) for v in vectors]
    for e in _E:
        if rank_exact(cols + [list(e)]) > len(cols):
            cols.append(list(e))
        if len(cols) == 3:
            break
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _restrict_to_line(f, ell):
    """Binary form f restricted to {ell = 0}, in coordinates of a basis of that line."""
    u, v = kernel_exact([list(ell)])
    A = _complete_basis([u, v])
    moved = f.form.substitute_linear(A)
    return SymForm(1, f.d, MPoly(2, {e[:2]: c for e, c in moved.terms.items() if e[2] == 0}))


def _hessian(f, p):
    return [[f.form.partial(i).partial(j).evaluate(list(p)) for j in range(3)] for i in range(3)]


def _profile_of_cone(f, gradient_rows):
    """Root profile of a cubic that is a cone over a point (partials spanning a 2-space)."""
    vertex = kernel_exact([[gradient_rows[i][k] for i in range(3)] for k in range(len(gradient_rows[0]))])[0]
    A = _complete_basis([vertex])
    # put the vertex last so that the moved form does not involve x2
    A = [[row[1], row[2], row[0]] for row in A]
    moved = f.form.substitute_linear(A)
    if any(e[2] for e in moved.terms):
        raise InconclusiveClassification("cone reduction failed")
    binary = SymForm(1, 3, MPoly(2, {e[:2]: c for e, c in moved.terms.items()}))
    return factor_binary(binary).multiplicities()


def classify_cubic(f, rng=None):
    """Orbit label of a plane cubic, or SMOOTH.

    Exact input only: with floating coefficients the rank and vanishing tests are
    not decisive, so the classification is refused rather than guessed.
    """
    if not isinstance(f, SymForm) or (f.n, f.d) != (2, 3):
        raise ValueError("expected a ternary cubic")
    if f.is_zero():
        raise ValueError("zero form")
    if f.form.domain == "float":
        return _classify_float(f)
    if discriminant(f) != 0:
        return SMOOTH
    grads = [f.form.partial(i).coefficients(2) for i in range(3)]
    r = rank_exact(grads)
    if r == 1:
        return "triple-line"
    if r == 2:
        profile = _profile_of_cone(f, grads)
        if profile == [1, 1, 1]:
            return "asterisk"
        if profile == [2, 1]:
            return "line+double-line"
        raise InconclusiveClassification("unexpected cone profile %r" % profile)
    pts = singular_points_cubic(f, rng)
    if pts is CURVE or not pts:
        raise InconclusiveClassification("singular discriminant but no isolated singular points found")
    if len(pts) == 3:
        return "triangle"
    if len(pts) == 2:
        return "conic+secant"
    if len(pts) > 3:
        raise InconclusiveClassification("%d singular points" % len(pts))
    p = pts[0]
    if not all(isinstance(x, Fraction) for x in p):
        p = _exact_single_point(symmetric_to_ps(f).components, rng or np.random.default_rng(0))
    if p is None:
        raise InconclusiveClassification("the singular point could not be made exact")
    H = _hessian(f, p)
    hr = rank_exact(H)
    if hr == 2:
        return "nodal"
    if hr != 1:
        raise InconclusiveClassification("Hessian rank %d at the singular point" % hr)
    ell = next(row for row in H if any(x != 0 for x in row))
    return "conic+tangent" if _restrict_to_line(f, ell).is_zero() else "cuspidal"


def _classify_float(f, margin=1e-10, gap=1e-6):
    """Numeric screen: only a clearly nonzero discriminant is decided."""
    coeffs = np.array([complex(c) for c in f.coefficients()])
    scale = np.max(np.abs(coeffs))
    disc = discriminant(SymForm(2, 3, f.form.to_float() * (1 / scale)))
    if abs(disc) > gap:
        return SMOOTH
    raise InconclusiveClassification("floating-point input within %.0e of the discriminant" % gap
                                     if abs(disc) > margin else "floating-point input on the discriminant")


def tangent_cone_contains_cubic(descriptor, g):
    """True iff g lies (set-theoretically) on some tangent-cone component of the descriptor."""
    for comp in descriptor.tangent_cone:
        if comp.kind == HYPERPLANE:
            if g.form.evaluate(list(comp.anchor)) == 0:
                return True
        else:
            restricted = _restrict_to_line(g, comp.anchor)
            if restricted.is_zero() or discriminant(restricted) == 0:
                return True
    return False


# samplers

def sample_generic_g(rng, descriptor):
    """Random cubic outside the tangent cone of the representative."""
    while True:
        g = random_form(rng, 2, 3)
        if not tangent_cone_contains_cubic(descriptor, g):
            return g


_LDL_FORMS = ["x1^3", "x2^3", "x2^2*x1 + x2^3", "x1^2*x2", "x1*x2^2"]
_TRIPLE_FORMS = ["x1^3", "x1^2*x2"]


def _cone_sample(rng, forms):
    base = MPoly.from_text(forms[int(rng.integers(len(forms)))], 3)
    scalar = Fraction(0)
    while scalar == 0:
        scalar = random_rational(rng)
    q = random_mpoly(rng, 3, 2)
    return SymForm(2, 3, base * scalar + MPoly.variable(3, 0) * q)


def _hyperplane_sample(rng, points):
    g = random_form(rng, 2, 3)
    # points are coordinate points: vanishing there kills the matching pure cube
    terms = dict(g.form.terms)
    for p in points:
        i = next(k for k, x in enumerate(p) if x != 0)
        e = [0, 0, 0]
        e[i] = 3
        terms.pop(tuple(e), None)
    return SymForm(2, 3, MPoly(3, terms))


def sample_tc_g(rng, descriptor):
    """Random cubic in the tangent cone of the representative with disc(g) != 0.

    Hyperplane components: g vanishes at one or more of the anchor points. Cone
    components: g restricted to x0 = 0 is one of the normal forms of a singular
    binary cubic (the five for line+double-line, two for the triple line) plus x0 q.
    """
    cone_forms = _LDL_FORMS if descriptor.label == "line+double-line" else _TRIPLE_FORMS
    while True:
        comps = descriptor.tangent_cone
        comp = comps[int(rng.integers(len(comps)))]
        if comp.kind == HYPERPLANE:
            hyper = [c.anchor for c in comps if c.kind == HYPERPLANE]
            count = int(rng.integers(1, len(hyper) + 1))
            chosen = [hyper[i] for i in rng.permutation(len(hyper))[:count]]
            g = _hyperplane_sample(rng, chosen)
        else:
            g = _cone_sample(rng, cone_forms)
        if tangent_cone_contains_cubic(descriptor, g) and discriminant(g) != 0:
            return g


def hurwitz_sample_cubics(trials, seed=None, labels=None):
    """Tangent-cone constrained lines through each orbit representative; order must stay below 12."""
    rng = make_rng(seed)
    per_orbit = {}
    overall = 0
    for desc in orbit_table():
        if labels is not None and desc.label not in labels:
            continue
        hist = Counter()
        for _ in range(trials):
            k = line_order(desc.representative, sample_tc_g(rng, desc))
            hist["contained" if k is CONTAINED else k] += 1
        orders = [k for k in hist if k != "contained"]
        top = max(orders) if orders else None
        overall = max(overall, top or 0)
        per_orbit[desc.label] = {
            "max_order_found": top,
            "histogram": {str(k): hist[k] for k in sorted(hist, key=str)},
        }
    return {
        "n": 2,
        "d": 3,
        "D": 12,
        "trials_per_orbit": trials,
        "max_order_found": overall,
        "orbits": per_orbit,
        "hurwitz_empty": overall < 12,
    }


def multiplicity_table(trials, seed=None):
    """Generic-line orders at each representative against the listed multiplicities."""
    rng = make_rng(seed)
    rows = []
    for desc in orbit_table():
        orders = Counter(line_order(desc.representative, sample_generic_g(rng, desc)) for _ in range(trials))
        observed = sorted(orders, key=str)
        rows.append({
            "label": desc.label,
            "expected": desc.multiplicity,
            "observed": {str(k): orders[k] for k in observed},
            "match": set(orders) == {desc.multiplicity},
        })
    return rows
