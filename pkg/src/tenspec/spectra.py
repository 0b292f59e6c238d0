"""Eigenvalues with multiplicities, eigenvectors and the eigenscheme of T relative to t."""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from .errors import NotAnEigenvalueError, UnsupportedCaseError
from .linalg import det_exact
from .poly import MPoly, UPoly
from .resultant import char_poly
from .roots import aberth, cluster_roots, univariate_roots
from .tensor import PSTensor, SymForm, as_ps, eigencount, unit_tensor

__all__ = [
    "Tolerances",
    "EigenPair",
    "EigenvectorSet",
    "EigenschemeReport",
    "eigenvalues",
    "eigenvectors_for",
    "eigenscheme",
    "mult_lower_bound_check",
    "common_zeros_quadrics",
    "normalize_projective",
    "projective_distance",
    "dedupe_points",
    "CURVE",
]


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-8
    dedup: float = 1e-6
    cluster: float = 1e-8
    charpoly: float = 1e-8


DEFAULT_TOL = Tolerances()


class _Curve:
    """Marker for a positive-dimensional common zero locus."""

    def __repr__(self):
        return "CURVE"


CURVE = _Curve()


def normalize_projective(w):
    """Unit norm, first nonzero coordinate real positive."""
    w = np.asarray(w, dtype=complex)
    nrm = np.linalg.norm(w)
    if nrm == 0:
        raise ValueError("zero vector is not a projective point")
    w = w / nrm
    big = np.abs(w) > 1e-10
    k = int(np.argmax(big))
    return w * (abs(w[k]) / w[k])


def projective_distance(u, v):
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    c = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.sqrt(max(0.0, 1.0 - min(1.0, c) ** 2))


def dedupe_points(points, tol=1e-6):
    out = []
    for p in points:
        if all(projective_distance(p, q) > tol for q in out):
            out.append(p)
    return out


def _sort_points(points):
    return sorted(points, key=lambda w: tuple((round(x.real, 8), round(x.imag, 8)) for x in w))


@dataclass
class EigenPair:
    lam: complex
    w: np.ndarray
    algebraic_multiplicity: int
    residual: float = 0.0

    def to_json(self):
        return {
            "lambda": [self.lam.real, self.lam.imag],
            "w": [[x.real, x.imag] for x in self.w],
            "algebraic_multiplicity": self.algebraic_multiplicity,
            "residual": self.residual,
        }


@dataclass
class EigenvectorSet:
    points: list
    infinite: bool = False


@dataclass
class EigenschemeReport:
    pairs: list
    reduced: bool
    infinite: bool
    simple_spectrum: bool = True
    eigenvalues: list = field(default_factory=list)

    def to_json(self):
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "eigenvalues": [{"lambda": [l.real, l.imag], "multiplicity": m} for l, m in self.eigenvalues],
            "reduced": self.reduced,
            "infinite": self.infinite,
            "simple_spectrum": self.simple_spectrum,
        }


def eigenvalues(T, t=None, cluster_tol=1e-8):
    """Roots of the characteristic polynomial as sorted (lambda, multiplicity) pairs."""
    return univariate_roots(char_poly(T, t).as_upoly(), cluster_tol=cluster_tol)


def _residual(S, w, scale):
    w = normalize_projective(w)
    vals = np.array([complex(f.evaluate(list(w))) for f in S.components])
    return float(np.linalg.norm(vals)) / scale


def _float_coeffs(f, k):
    return np.array([complex(c) for c in f.coefficients(k)])


def _binary_common_roots(S, tol, scale, rng):
    """Common projective zeros of two binary forms of degree k (complex coefficients)."""
    k = S.d - 1
    c0, c1 = (_float_coeffs(f, k) for f in S.components)
    Q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    alpha = rng.normal() + 1j * rng.normal()
    p = S.components[0].to_float() + S.components[1].to_float() * alpha
    q = p.substitute_linear(Q.tolist())
    # dehomogenize at z1 = 1: coefficient of z0^j is that of z0^j z1^(k-j)
    coeffs = [complex(q.coefficient((j, k - j))) for j in range(k + 1)]
    roots = aberth(coeffs) if any(abs(c) > 0 for c in coeffs[1:]) else []
    cands = [Q @ np.array([r, 1.0]) for r in roots]
    if len(roots) < k:
        cands.append(Q @ np.array([1.0, 0.0]))
    out = []
    for w in cands:
        w = _gauss_newton(S, w)
        if _residual(S, w, scale) <= tol:
            out.append(normalize_projective(w))
    return out


def _exact_binary_common_roots(S):
    """Common zeros of two exact binary forms via a polynomial gcd."""
    k = S.d - 1
    h0, h1 = S.components
    pts = []
    deh = [UPoly([f.coefficient((j, k - j)) for j in range(k + 1)]) for f in (h0, h1)]
    g = deh[0].gcd(deh[1]) if not deh[1].is_zero() else deh[0].monic()
    if g.degree >= 1:
        pts.extend(np.array([z, 1.0]) for z, _ in univariate_roots(g))
    if h0.coefficient((k, 0)) == 0 and h1.coefficient((k, 0)) == 0:
        pts.append(np.array([1.0, 0.0]))
    return [normalize_projective(w) for w in pts]


def _gauss_newton(S, w, iters=8):
    """Polish an approximate common zero of the components of S in the chart <w0, w> = 1."""
    w = np.asarray(w, dtype=complex)
    w = w / np.linalg.norm(w)
    anchor = w.conj()
    comps = [f.to_float() for f in S.components]
    grads = [[f.partial(i) for i in range(S.n + 1)] for f in comps]
    best, best_res = w, None
    for _ in range(iters):
        F = np.array([complex(f.evaluate(list(w))) for f in comps] + [np.dot(anchor, w) - 1])
        res = np.linalg.norm(F[:-1])
        if best_res is None or res < best_res:
            best, best_res = w, res
        if res < 1e-15:
            break
        J = np.array([[complex(g.evaluate(list(w))) for g in row] for row in grads] + [list(anchor)])
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        w = w + step
    F = np.array([complex(f.evaluate(list(w))) for f in comps])
    if np.linalg.norm(F) < best_res:
        best = w
    return best


def _split_x2(h):
    """h = a x2^2 + b(x0, x1) x2 + c(x0, x1), returned as (a, [b0, b1], [c00, c01, c11])."""
    a = h.coefficient((0, 0, 2))
    b = [h.coefficient((1, 0, 1)), h.coefficient((0, 1, 1))]
    c = [h.coefficient((2, 0, 0)), h.coefficient((1, 1, 0)), h.coefficient((0, 2, 0))]
    return a, b, c


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return [x - y for x, y in zip(p, q)]


def _eliminate_x2(h0, h1):
    """Res_{x2}(h0, h1) as a binary quartic, coefficients of x0^4, x0^3 x1, ..., x1^4."""
    a, b, c = _split_x2(h0)
    a2, b2, c2 = _split_x2(h1)
    # coefficient lists are in graded-lex order, i.e. descending powers of x0
    ac = _poly_sub([a * x for x in c2], [a2 * x for x in c])
    ab = _poly_sub([a * x for x in b2], [a2 * x for x in b])
    bc = _poly_sub(_poly_mul(b, c2), _poly_mul(b2, c))
    return _poly_sub(_poly_mul(ac, ac), _poly_mul(ab, bc))


def _random_frame(rng, exact):
    while True:
        if exact:
            A = rng.integers(-4, 5, size=(3, 3)).tolist()
            if det_exact(A) != 0:
                return A
        else:
            Q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
            return Q.tolist()


def _random_combo(forms, rng, exact):
    if exact:
        w = [Fraction(int(x)) for x in rng.integers(-9, 10, size=3)]
    else:
        w = list(rng.normal(size=3) + 1j * rng.normal(size=3))
    return sum((f * c for f, c in zip(forms, w)), MPoly.zero(3) if exact else MPoly.zero(3).to_float())


def _quartic_is_zero(quartic, forms, exact):
    if exact:
        return all(c == 0 for c in quartic)
    scale = max(max(abs(complex(c)) for f in forms for c in f.terms.values()) if any(not f.is_zero() for f in forms) else 1.0, 1e-300)
    return max(abs(complex(c)) for c in quartic) <= 1e-10 * scale ** 4


def _solve_in_frame(forms, rng, exact, tol, scale, S_frame):
    """Isolated common zeros of three quadrics in the current frame; None if elimination vanishes."""
    for _ in range(5):
        h0 = _random_combo(forms, rng, exact)
        h1 = _random_combo(forms, rng, exact)
        if h0.coefficient((0, 0, 2)) != 0 or h1.coefficient((0, 0, 2)) != 0:
            break
    quartic = _eliminate_x2(h0, h1)
    if _quartic_is_zero(quartic, forms, exact):
        return None
    # dehomogenize at x1 = 1: power of x0 is 4 - position
    up = UPoly(list(reversed(quartic)))
    base = []
    if up.degree >= 1:
        if exact:
            base = [z for z, _ in univariate_roots(up)]
        else:
            base = [z for z, _ in cluster_roots(aberth([complex(c) for c in up.coeffs]), 1e-6)]
    base_pts = [(z, 1.0) for z in base]
    if up.degree < 4:
        base_pts.append((1.0, 0.0))
    cands = []
    for x0, x1 in base_pts:
        for h in (h0, h1):
            a, b, c = (complex(v) if not isinstance(v, list) else [complex(u) for u in v] for v in _split_x2(h))
            bb = b[0] * x0 + b[1] * x1
            cc = c[0] * x0 * x0 + c[1] * x0 * x1 + c[2] * x1 * x1
            if abs(a) > 1e-12:
                disc = np.sqrt(bb * bb - 4 * a * cc + 0j)
                xs = [(-bb + disc) / (2 * a), (-bb - disc) / (2 * a)]
            elif abs(bb) > 1e-12:
                xs = [-cc / bb]
            else:
                xs = []
            cands.extend(np.array([x0, x1, x2], dtype=complex) for x2 in xs)
        # a1 h0 - a0 h1 is linear in x2, which stays accurate when x2 is a double root of both
        (a0, b0, c0), (a1, b1, c1) = [[complex(v) if not isinstance(v, list) else [complex(u) for u in v]
                                        for v in _split_x2(h)] for h in (h0, h1)]
        lin = a1 * (b0[0] * x0 + b0[1] * x1) - a0 * (b1[0] * x0 + b1[1] * x1)
        const = a1 * (c0[0] * x0 * x0 + c0[1] * x0 * x1 + c0[2] * x1 * x1) \
            - a0 * (c1[0] * x0 * x0 + c1[1] * x0 * x1 + c1[2] * x1 * x1)
        if abs(lin) > 1e-12:
            cands.append(np.array([x0, x1, -const / lin], dtype=complex))
        if x1 == 0.0:
            cands.append(np.array([0.0, 0.0, 1.0], dtype=complex))
    out = []
    for w in cands:
        w = _gauss_newton(S_frame, w)
        r = _residual(S_frame, w, scale)
        if r <= tol:
            out.append((r, normalize_projective(w)))
    return _merge_near_multiple(S_frame, out, tol, scale)


def _merge_near_multiple(S, scored, tol, scale, reach=1e-2):
    """Dedupe zeros, also merging stragglers that Newton left near a multiple zero.

    Two nearby points are the same zero when the residual stays below tol at their
    midpoint; distinct simple zeros fail that test.
    """
    kept = []
    for r, p in sorted(scored, key=lambda t: t[0]):
        same = False
        for q in kept:
            dist = projective_distance(p, q)
            if dist <= 1e-6:
                same = True
            elif dist <= reach:
                phase = np.vdot(q, p)
                mid = q + p * (abs(phase) / phase if phase != 0 else 1)
                same = _residual(S, mid, scale) <= tol
            if same:
                break
        if not same:
            kept.append(p)
    return kept


def common_zeros_quadrics(q0, q1, q2, tol=1e-8, scale=1.0, rng=None):
    """Common projective zeros of three ternary quadrics, or CURVE.

    Works in a random coordinate frame, eliminates x2 from two random combinations
    and back-substitutes. A positive-dimensional locus is declared when the
    elimination vanishes identically in two independent frames.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    forms = [q0, q1, q2]
    exact = all(f.domain != "float" for f in forms)
    if all(f.is_zero() for f in forms):
        return CURVE
    vanished = 0
    for _ in range(6):
        A = _random_frame(rng, exact)
        moved = [f.substitute_linear(A) for f in forms]
        S_frame = PSTensor(2, 3, moved)
        pts = _solve_in_frame(moved, rng, exact, tol, scale, S_frame)
        if pts is None:
            vanished += 1
            if vanished >= 2:
                return CURVE
            continue
        Am = np.array(A, dtype=complex)
        return _sort_points(dedupe_points([normalize_projective(Am @ w) for w in pts], 1e-6))
    return CURVE


def _as_exact_lambda(lam):
    if isinstance(lam, (int, Fraction)):
        return Fraction(lam)
    return None


def _refine_pair(T, t, w, lam, iters=8):
    """Newton on (w, lambda) for T(w) = lambda t(w) in the chart <w0, w> = 1."""
    n1 = T.n + 1
    Tc = [f.to_float() for f in T.components]
    tc = [f.to_float() for f in t.components]
    dT = [[f.partial(j) for j in range(n1)] for f in Tc]
    dt = [[f.partial(j) for j in range(n1)] for f in tc]
    w = np.asarray(w, dtype=complex) / np.linalg.norm(w)
    anchor = w.conj()
    lam = complex(lam)

    def resid(w, lam):
        wl = list(w / np.linalg.norm(w))
        return np.linalg.norm([complex(a.evaluate(wl)) - lam * complex(b.evaluate(wl)) for a, b in zip(Tc, tc)])

    best = (resid(w, lam), w, lam)
    for _ in range(iters):
        wl = list(w)
        tw = np.array([complex(b.evaluate(wl)) for b in tc])
        F = np.array([complex(a.evaluate(wl)) for a in Tc]) - lam * tw
        F = np.append(F, np.dot(anchor, w) - 1)
        J = np.zeros((n1 + 1, n1 + 1), dtype=complex)
        for i in range(n1):
            for j in range(n1):
                J[i, j] = complex(dT[i][j].evaluate(wl)) - lam * complex(dt[i][j].evaluate(wl))
            J[i, n1] = -tw[i]
        J[n1, :n1] = anchor
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        w, lam = w + step[:n1], lam + step[n1]
        r = resid(w, lam)
        if r < best[0]:
            best = (r, w, lam)
        if r < 1e-15:
            break
    r, w, lam = best
    return normalize_projective(w), lam, r


def _eigvecs(T, t, phi, lam, tol, rng):
    """[(w, lambda, residual)] for one eigenvalue, plus the infinite flag."""
    exact_lam = _as_exact_lambda(lam)
    exact = exact_lam is not None and phi.domain == "exact"
    if exact:
        if phi(exact_lam) != 0:
            raise NotAnEigenvalueError("char poly does not vanish at %s" % exact_lam)
    else:
        lam = complex(lam)
        up = phi.as_upoly().to_float()
        val = abs(up(lam))
        size = sum(abs(c) * abs(lam) ** k for k, c in enumerate(up.coeffs))
        if val > tol.charpoly * size:
            raise NotAnEigenvalueError("char poly residual %.3g at %s" % (val / size, lam))
    S = T - t * exact_lam if exact else T.to_float() - t.to_float() * lam
    if S.is_zero():
        return [], True
    scale = 1.0 + T.norm()
    # an inexact eigenvalue moves the common zeros slightly: accept loosely, then refine jointly
    loose = tol.residual if exact else max(tol.residual, 1e-5)
    if T.n == 1:
        if exact:
            if any(f.is_zero() for f in S.components):
                nz = next(f for f in S.components if not f.is_zero())
                pts = _exact_binary_common_roots(PSTensor(1, S.d, [nz, nz]))
            else:
                pts = _exact_binary_common_roots(S)
        else:
            pts = _binary_common_roots(S, loose, scale, rng)
    else:
        pts = common_zeros_quadrics(*S.components, tol=loose, scale=scale, rng=rng)
        if pts is CURVE:
            return [], True
    out = []
    lam_c = complex(exact_lam) if exact else lam
    for w in dedupe_points(pts, tol.dedup):
        if exact:
            r = _residual(S, w, 1.0)
            w2, lam2 = w, lam_c
            if r > tol.residual * scale:
                w2, _, r = _refine_fixed(S, w)
        else:
            w2, lam2, r = _refine_pair(T, t, w, lam_c)
            if abs(lam2 - lam_c) > 1e-6 * (1 + abs(lam_c)):
                continue
        if r <= tol.residual * scale:
            out.append((w2, lam2, r))
    keep = dedupe_points([w for w, _, _ in out], tol.dedup)
    out = [o for o in out if any(o[0] is k for k in keep)]
    return sorted(out, key=lambda o: tuple((round(x.real, 8), round(x.imag, 8)) for x in o[0])), False


def _refine_fixed(S, w):
    w = normalize_projective(_gauss_newton(S, w))
    return w, None, _residual(S, w, 1.0)


def eigenvectors_for(T, t=None, lam=0, tol=DEFAULT_TOL, rng=None):
    """Eigenvectors of T relative to t for the eigenvalue ``lam``.

    Raises NotAnEigenvalueError when the characteristic polynomial does not vanish
    at ``lam`` within ``tol.charpoly`` (relative). Returns an EigenvectorSet whose
    ``infinite`` flag is set when every point is an eigenvector.
    """
    T = as_ps(T)
    t = unit_tensor(T.n, T.d) if t is None else as_ps(t)
    if not (T.n == 1 or (T.n, T.d) == (2, 3)):
        raise UnsupportedCaseError("eigenvectors need n = 1 or (n, d) = (2, 3)")
    rng = rng if rng is not None else np.random.default_rng(0)
    found, infinite = _eigvecs(T, t, char_poly(T, t), lam, tol, rng)
    return EigenvectorSet([w for w, _, _ in found], infinite)


def eigenscheme(T, t=None, tol=DEFAULT_TOL, rng=None):
    """All eigenpairs; ``reduced`` iff D pairwise-distinct eigenvectors and no infinite part."""
    T = as_ps(T)
    t = unit_tensor(T.n, T.d) if t is None else as_ps(t)
    if not (T.n == 1 or (T.n, T.d) == (2, 3)):
        raise UnsupportedCaseError("eigenvectors need n = 1 or (n, d) = (2, 3)")
    D = eigencount(T.n, T.d)
    rng = rng if rng is not None else np.random.default_rng(0)
    phi = char_poly(T, t)
    evs = univariate_roots(phi.as_upoly(), cluster_tol=tol.cluster)
    rational = _rational_roots(phi) if phi.domain == "exact" else {}
    pairs, infinite = [], False
    for lam, m in evs:
        key = _match_rational(lam, rational)
        found, inf = _eigvecs(T, t, phi, key if key is not None else lam, tol, rng)
        infinite = infinite or inf
        for w, lam2, r in found:
            pairs.append(EigenPair(complex(lam2), w, m, r))
    pts = [p.w for p in pairs]
    distinct = len(dedupe_points(pts, tol.dedup)) == len(pts)
    reduced = (not infinite) and distinct and len(pts) == D
    return EigenschemeReport(pairs, reduced, infinite, all(m == 1 for _, m in evs), evs)


def _rational_roots(phi):
    """Rational roots of an exact char poly, found from its linear square-free factors."""
    out = {}
    for factor, _ in phi.as_upoly().squarefree_decomposition():
        for z, _ in univariate_roots(factor):
            q = Fraction(z.real).limit_denominator(10 ** 6)
            if abs(z.imag) < 1e-9 and factor(q) == 0:
                out[q] = complex(q)
    return out


def _match_rational(lam, rational):
    for q, z in rational.items():
        if abs(z - lam) < 1e-9 * (1 + abs(z)):
            return q
    return None


def mult_lower_bound_check(f, lam, g=None):
    """(algebraic multiplicity of lam, multiplicity of Disc at f - lam g) for binary forms.

    ``g`` defaults to sum x_i^d, whose gradient tensor is the unit tensor. The
    lower bound asserts the first entry is at least the second.
    """
    from .discgeom import mult_disc_binary

    if not isinstance(f, SymForm) or f.n != 1:
        raise UnsupportedCaseError("multiplicity check needs a binary SymForm")
    d = f.d
    if g is None:
        g = SymForm(1, d, MPoly(2, {(d, 0): 1, (0, d): 1}))
    if not isinstance(g, SymForm):
        raise UnsupportedCaseError("reference tensor must be a symmetric form")
    phi = char_poly(f, g)
    q = _as_exact_lambda(lam)
    if q is not None and phi.domain == "exact":
        p = phi.as_upoly()
        alg = 0
        while not p.is_zero() and p(q) == 0:
            p = p.exact_div(UPoly([-q, 1]))
            alg += 1
        shifted = f - g * q
    else:
        lam = complex(lam)
        alg = sum(m for z, m in eigenvalues(f, g) if abs(z - lam) < 1e-6 * (1 + abs(lam)))
        shifted = SymForm(1, d, f.form.to_float() - g.form.to_float() * lam)
    hyper = mult_disc_binary(shifted)
    if alg < hyper:
        raise AssertionError("algebraic multiplicity %d below hypersurface multiplicity %d" % (alg, hyper))
    return alg, hyper
