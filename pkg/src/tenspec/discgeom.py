"""Discriminant geometry of binary forms: root profiles, multiplicities, tangent cones, line orders."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import DegenerateInputError, UnsupportedCaseError
from .linalg import det_symbolic, rank_exact
from .poly import MPoly, UPoly, univariate_interpolate, vanishing_order
from .resultant import discriminant, interpolation_nodes, sylvester_from_coeffs
from .roots import univariate_roots
from .sampling import make_rng, random_form, random_linear_form, random_mpoly
from .tensor import SymForm, eigencount

__all__ = [
    "RootFactorization",
    "factor_binary",
    "mult_disc_binary",
    "tangent_cone_contains",
    "disc_along_line",
    "line_order",
    "CONTAINED",
    "hurwitz_sample",
    "bincubic_identities",
    "form_with_profile",
    "partitions",
]


class _Contained:
    """Marker: the whole line lies in the discriminant hypersurface."""

    def __repr__(self):
        return "CONTAINED"


CONTAINED = _Contained()


@dataclass
class RootFactorization:
    """Roots of a binary form as ((x0, x1), multiplicity) pairs; exact roots are Fractions."""

    roots: list
    exact: bool

    def multiplicities(self):
        return sorted((e for _, e in self.roots), reverse=True)


def _binary_dehomog(f):
    d = f.d
    return [f.form.coefficient((j, d - j)) for j in range(d + 1)]


def factor_binary(f):
    """Roots of a nonzero binary form with multiplicities.

    Exact input: the dehomogenization at x1 = 1 is split by square-free decomposition,
    roots of each factor are computed and rationalized where an exact check confirms
    them; (1:0) has multiplicity d minus the degree of the dehomogenization.
    """
    if not isinstance(f, SymForm) or f.n != 1:
        raise UnsupportedCaseError("factor_binary needs a binary SymForm")
    if f.is_zero():
        raise ValueError("zero form has no factorization")
    d = f.d
    coeffs = _binary_dehomog(f)
    roots = []
    if f.form.domain == "float":
        mags = [abs(c) for c in coeffs]
        cut = 1e-13 * max(mags)
        top = max(j for j, m in enumerate(mags) if m > cut)
        p = UPoly([complex(c) for c in coeffs[: top + 1]])
        if top >= 1:
            roots = [((z, 1.0), m) for z, m in univariate_roots(p)]
        if top < d:
            roots.append(((1.0, 0.0), d - top))
        return RootFactorization(roots, False)
    p = UPoly(coeffs)
    exact = True
    for factor, mult in p.squarefree_decomposition():
        if factor.degree == 1:
            roots.append(((-factor.coeffs[0] / factor.coeffs[1], Fraction(1)), mult))
            continue
        for z, _ in univariate_roots(factor):
            q = Fraction(z.real).limit_denominator(10 ** 9)
            if abs(z.imag) < 1e-9 and factor(q) == 0:
                roots.append(((q, Fraction(1)), mult))
            else:
                roots.append(((z, 1.0), mult))
                exact = False
    if p.degree < d:
        roots.append(((Fraction(1), Fraction(0)), d - p.degree))
    return RootFactorization(roots, exact)


def mult_disc_binary(f):
    """Multiplicity of the discriminant at f: sum of (e_j - 1)."""
    return sum(e - 1 for _, e in factor_binary(f).roots)


def _eval_at(g, point):
    return g.form.evaluate(list(point))


def tangent_cone_contains(f, g, tol=1e-9):
    """True iff g vanishes at some multiple root of f (set-theoretic tangent-cone membership)."""
    fac = factor_binary(f)
    multiple = [(w, e) for w, e in fac.roots if e >= 2]
    if not multiple:
        raise DegenerateInputError("f has distinct roots, so it is a smooth point or off the discriminant")
    gscale = max(abs(complex(c)) for c in g.form.terms.values()) if not g.is_zero() else 1.0
    for w, _ in multiple:
        if isinstance(w[0], Fraction) and isinstance(w[1], Fraction) and g.form.domain != "float":
            if _eval_at(g, w) == 0:
                return True
        else:
            v = np.array([complex(x) for x in w])
            v = v / np.linalg.norm(v)
            if abs(complex(g.form.to_float().evaluate(list(v)))) <= tol * gscale:
                return True
    return False


def disc_along_line(f, g):
    """disc(f + t g) as a polynomial in t, by exact interpolation at D+1 nodes."""
    if (f.n, f.d) != (g.n, g.d):
        raise ValueError("forms have different shapes")
    D = eigencount(f.n, f.d)
    samples = [(t, discriminant(f + g * t)) for t in interpolation_nodes(D + 1)]
    return univariate_interpolate(samples, D)


def line_order(f, g):
    """Order of vanishing of disc(f + t g) at t = 0, or CONTAINED if it vanishes identically."""
    if rank_exact([f.coefficients(), g.coefficients()]) < 2:
        raise ValueError("f and g are proportional, so they do not span a line")
    k = vanishing_order(disc_along_line(f, g))
    return CONTAINED if k == math.inf else k


# sampling

def partitions(d):
    """All partitions of d as non-increasing tuples."""
    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for k in range(min(rem, cap), 0, -1):
            for rest in rec(rem - k, k):
                yield (k,) + rest
    return list(rec(d, d))


def _distinct_lines(rng, count):
    """``count`` pairwise non-proportional rational linear forms in x0, x1."""
    out, seen = [], set()
    while len(out) < count:
        ell = random_linear_form(rng, 2)
        a, b = ell.coefficients(1)
        key = (Fraction(1), b / a) if a != 0 else (Fraction(0), Fraction(1))
        if key not in seen:
            seen.add(key)
            out.append(ell)
    return out


def form_with_profile(rng, profile):
    """Random binary form prod l_j^e_j with distinct rational linear factors; returns (f, lines)."""
    lines = _distinct_lines(rng, len(profile))
    prod = MPoly.constant(2, 1)
    for ell, e in zip(lines, profile):
        prod = prod * ell ** e
    return SymForm(1, sum(profile), prod), lines


def _generic_g(rng, f):
    """Random g not in the tangent cone of f and not proportional to f."""
    while True:
        g = random_form(rng, 1, f.d)
        if rank_exact([f.coefficients(), g.coefficients()]) < 2:
            continue
        try:
            if tangent_cone_contains(f, g):
                continue
        except DegenerateInputError:
            pass
        return g


def vanishing_order_at(g, ell):
    """Multiplicity of the linear factor ell in the binary form g."""
    a, b = ell.coefficients(1)
    p = (-b, a)
    q = (1, 0) if a != 0 else (0, 1)
    vals = [(Fraction(k), g.form([pi + k * qi for pi, qi in zip(p, q)])) for k in range(g.d + 1)]
    return vanishing_order(univariate_interpolate(vals, g.d))


def _tc_g(rng, f, lines, profile):
    """Random g in the tangent cone: divisible by a nonempty set of repeated factors of f.

    Each chosen factor divides g exactly once, since sharing a square would put
    the whole line f + s g inside the discriminant.
    """
    idx = [j for j, e in enumerate(profile) if e >= 2]
    while True:
        chosen = [j for j in idx if rng.random() < 0.5]
        if chosen:
            break
    shared = MPoly.constant(2, 1)
    for j in chosen:
        shared = shared * lines[j]
    while True:
        h = random_mpoly(rng, 2, f.d - len(chosen))
        g = SymForm(1, f.d, shared * h)
        if g.is_zero() or rank_exact([f.coefficients(), g.coefficients()]) < 2:
            continue
        if any(vanishing_order_at(g, lines[j]) >= 2 for j in chosen):
            continue
        return g


def hurwitz_sample(n, d, trials, seed=None, constrained_fraction=0.5):
    """Maximum line order over random lines through random singular forms.

    For n = 1 the profile of f is drawn uniformly from the partitions of d having a
    part >= 2, and g is either unconstrained or forced into the tangent cone by
    sharing a power of a repeated factor. For (n, d) = (2, 3) the trials run over
    the eight orbit representatives with tangent-cone constrained g.
    """
    rng = make_rng(seed)
    D = eigencount(n, d)
    if (n, d) == (2, 3):
        from .cubics import hurwitz_sample_cubics
        return hurwitz_sample_cubics(trials, rng)
    if n != 1:
        raise UnsupportedCaseError("hurwitz_sample supports n = 1 and (n, d) = (2, 3)")
    profiles = [p for p in partitions(d) if p[0] >= 2]
    hist = Counter()
    contained = 0
    for _ in range(trials):
        profile = profiles[int(rng.integers(len(profiles)))]
        f, lines = form_with_profile(rng, profile)
        if rng.random() < constrained_fraction:
            g = _tc_g(rng, f, lines, profile)
        else:
            g = _generic_g(rng, f)
        k = line_order(f, g)
        if k is CONTAINED:
            contained += 1
        else:
            hist[k] += 1
    max_order = max(hist) if hist else None
    return {
        "n": n,
        "d": d,
        "D": D,
        "trials": trials,
        "max_order_found": max_order,
        "contained": contained,
        "histogram": {str(k): hist[k] for k in sorted(hist)},
        "hurwitz_empty": max_order is None or max_order < D,
    }


# symbolic binary cubic identities

def _symbolic_disc_binary_cubic(coeffs, nvars):
    """Discriminant of sum c_j x0^(3-j) x1^j (coefficients in an MPoly ring) via the Sylvester matrix."""
    c0, c1, c2, c3 = coeffs
    # (1/3) of the two partial derivatives, as coefficient lists of quadrics
    p0 = [c0, c1 * Fraction(2, 3), c2 * Fraction(1, 3)]
    p1 = [c1 * Fraction(1, 3), c2 * Fraction(2, 3), c3]
    return det_symbolic(sylvester_from_coeffs(p0, p1))


def _symbols():
    a0, a1, a2, t = (MPoly.variable(4, i) for i in range(4))
    return a0, a1, a2, t


def _match_scalar(residual, expected):
    """Find s with residual == s * expected; returns (s, differing terms)."""
    if expected.is_zero():
        return (None if not residual.is_zero() else Fraction(1)), []
    # fit s on the term with the highest power of t, then compare all terms
    lead = max(expected.terms, key=lambda e: (e[3], e))
    s = residual.coefficient(lead) / expected.terms[lead]
    diff = residual - expected * s if s != 0 else residual
    differing = []
    for e in sorted(set(residual.terms) | set(expected.terms), key=lambda e: (-e[3], e)):
        have = residual.coefficient(e)
        want = expected.coefficient(e) * s
        if have != want:
            differing.append({"monomial": _rename(MPoly(4, {e: 1})), "computed": str(have), "expected": str(want)})
    if s == 0 or not diff.is_zero():
        return (s if s != 0 else None), differing
    return s, []


def _rename(p):
    return p.to_text().replace("x0", "a0").replace("x1", "a1").replace("x2", "a2").replace("x3", "t")


def bincubic_identities():
    """Check the closed forms of disc(f + t g) for f = x0^3 and f = x0^2 x1, with a3 = 0.

    g = a0 x0^3 + 3 a1 x0^2 x1 + 3 a2 x0 x1^2. For each identity
    disc(f_t) = disc(g) t^4 + R(t) the module's discriminant is expanded exactly and
    the remainder is compared with s times the closed-form remainder; s absorbs the
    normalization of disc. The scalar and any differing coefficients are reported.
    """
    a0, a1, a2, t = _symbols()
    zero = MPoly.zero(4)
    one = MPoly.constant(4, 1)
    g = [a0, a1 * 3, a2 * 3, zero]
    disc_g = _symbolic_disc_binary_cubic(g, 4)
    cases = [
        ("x0^3", [one, zero, zero, zero], (a2 ** 3) * (t ** 3) * (-4)),
        ("x0^2*x1", [zero, one, zero, zero],
         a1 * (a2 ** 2) * (t ** 3) * 2 + (a2 ** 2) * (t ** 2) * Fraction(-1, 3)),
    ]
    records = []
    for label, fc, expected_rest in cases:
        ft = [fi + gi * t for fi, gi in zip(fc, g)]
        disc_ft = _symbolic_disc_binary_cubic(ft, 4)
        rest = disc_ft - disc_g * (t ** 4)
        s, differing = _match_scalar(rest, expected_rest)
        records.append({
            "f": label,
            "disc_f_t": _rename(disc_ft),
            "disc_g": _rename(disc_g),
            "expected_remainder": _rename(expected_rest),
            "scalar": str(s) if s is not None else None,
            "matched": not differing and s is not None,
            "differing_coefficients": differing,
        })
    # a2 = 0 in the first identity: disc(f_t) collapses to disc(g) t^4 and g = x0^2 (a0 x0 + 3 a1 x1)
    sub = lambda p: MPoly(4, {e: c for e, c in p.terms.items() if e[2] == 0})
    ft0 = _symbolic_disc_binary_cubic([one + a0 * t, a1 * 3 * t, zero, zero], 4)
    g0 = sub(disc_g)
    records.append({
        "f": "x0^3 with a2 = 0",
        "disc_f_t": _rename(ft0),
        "disc_g": _rename(g0),
        "matched": (ft0 - g0 * t ** 4).is_zero() and g0.is_zero(),
        "scalar": None,
        "differing_coefficients": [],
    })
    return {"identities": records, "all_matched": all(r["matched"] for r in records)}
