"""Fibers and Jacobian ranks of the characteristic polynomial map for binary forms.

For n = 1 the Sylvester matrix is linear in the tensor, so with y the coefficients of
a symmetric form f and T = symmetric_to_ps(f),

    phi_T(lam) = det(lam I - C(y)),   C(y) = M_t^-1 sum_j y_j A_j,

where A_j is the Sylvester matrix of the j-th basis form. The fiber equations are
imposed through power sums tr C(y)^k = p_k, which have degree k and are a
triangular, invertible recombination of the coefficient equations.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import DegenerateInputError, UnsupportedCaseError
from .homotopy import TrackerSettings, dedupe_solutions, solve_total_degree
from .poly import MPoly, monomials, to_coeff, univariate_interpolate
from .resultant import CharPoly, char_poly, sylvester_matrix
from .roots import aberth
from .sampling import make_rng, random_rationals
from .tensor import PSTensor, SymForm, as_ps, eigencount, symmetric_to_ps, unit_tensor

__all__ = [
    "FIBER_CASES",
    "FiberSystem",
    "FiberResult",
    "fiber_of_charpoly",
    "fiber_count_stable",
    "domain_dimension",
    "jacobian_rank",
    "charpoly_map",
    "exact_directional_derivative",
]

FIBER_CASES = ((1, 3), (1, 4), (1, 5), (1, 6))

# Paths of the squared system crowd together just before s = 1, so the step floor
# sits far below the generic 1e-6. Endpoints are filtered by matching the spectrum
# of C(y) against the roots of the target: spurious endpoints of the square
# subsystem can miss tiny trailing coefficients by only 1e-12 or so, while their
# eigenvalues are off by 1e-3 or more.
FIBER_SETTINGS = TrackerSettings(min_step=1e-13)
FIBER_FILTER_TOL = 1e-6


def power_sums_from_coeffs(c):
    """p_1..p_D of the roots of lam^D + c_1 lam^(D-1) + ... + c_D."""
    p = []
    for k in range(1, len(c) + 1):
        v = -k * c[k - 1]
        for i in range(1, k):
            v -= c[i - 1] * p[k - i - 1]
        p.append(v)
    return p


def coeffs_from_power_sums(p):
    c = []
    for k in range(1, len(p) + 1):
        v = p[k - 1]
        for i in range(1, k):
            v += c[i - 1] * p[k - i - 1]
        c.append(-v / k)
    return c


class FiberSystem:
    """Square system tr C(y)^k = p_k (k = 1..N) in the N coefficients of a binary form."""

    def __init__(self, d, t, target_coeffs):
        self.d = d
        self.nvars = d + 1
        self.D = eigencount(1, d)
        if len(target_coeffs) != self.D:
            raise ValueError("target has %d coefficients, expected %d" % (len(target_coeffs), self.D))
        Mt = np.array(sylvester_matrix(t.to_float()), dtype=complex)
        if abs(np.linalg.det(Mt)) < 1e-12 * max(1.0, np.abs(Mt).max()) ** Mt.shape[0]:
            raise DegenerateInputError("res(t) = 0")
        Mt_inv = np.linalg.inv(Mt)
        B = []
        for e in monomials(2, d):
            f = SymForm(1, d, MPoly.monomial(e))
            A = np.array(sylvester_matrix(symmetric_to_ps(f).to_float()), dtype=complex)
            B.append(Mt_inv @ A)
        self.B = np.array(B)  # (N, D, D)
        D2 = self.D * self.D
        self._B_flat = self.B.reshape(len(B), D2)
        # tr(X B_j) = sum_ab X_ab (B_j)_ba
        self._BT_flat = self.B.transpose(0, 2, 1).reshape(len(B), D2).T.copy()
        self.target = np.asarray(target_coeffs, dtype=complex)
        self.target_p = np.array(power_sums_from_coeffs(list(self.target)), dtype=complex)
        self.degrees = list(range(1, self.nvars + 1))
        self.target_roots = aberth(list(reversed(self.target)) + [1.0])

    def matrices(self, Y):
        return (np.asarray(Y) @ self._B_flat).reshape(len(Y), self.D, self.D)

    def power_sums(self, Y, upto):
        C = self.matrices(np.asarray(Y, dtype=complex))
        P = np.empty((len(C), upto), dtype=complex)
        Ck = C
        for k in range(upto):
            P[:, k] = np.trace(Ck, axis1=1, axis2=2)
            Ck = Ck @ C
        return P

    def evaluate(self, Y):
        Y = np.asarray(Y, dtype=complex)
        N = self.nvars
        C = self.matrices(Y)
        F = np.empty((len(Y), N), dtype=complex)
        J = np.empty((len(Y), N, N), dtype=complex)
        Ck_prev = np.broadcast_to(np.eye(self.D, dtype=complex), C.shape)
        for k in range(1, N + 1):
            # d/dy_j tr C^k = k tr(C^(k-1) B_j)
            J[:, k - 1, :] = k * (Ck_prev.reshape(len(Y), -1) @ self._BT_flat)
            Ck = Ck_prev @ C
            F[:, k - 1] = np.trace(Ck, axis1=1, axis2=2) - self.target_p[k - 1]
            Ck_prev = Ck
        return F, J

    def spectrum_residuals(self, Y):
        """Largest distance in an optimal-greedy matching of eig C(y) with the target roots."""
        out = []
        for C in self.matrices(np.asarray(Y, dtype=complex)):
            cost = np.abs(np.linalg.eigvals(C)[:, None] - self.target_roots[None, :])
            worst = 0.0
            for _ in range(self.D):
                i, j = np.unravel_index(np.argmin(cost), cost.shape)
                worst = max(worst, cost[i, j])
                cost[i, :] = np.inf
                cost[:, j] = np.inf
            out.append(worst)
        return np.array(out)

    def coefficient_residuals(self, Y):
        """Relative residual of all D char-poly coefficients at each row of Y."""
        P = self.power_sums(Y, self.D)
        out = []
        for row in P:
            c = np.array(coeffs_from_power_sums(list(row)))
            out.append(np.max(np.abs(c - self.target) / np.maximum(1.0, np.abs(self.target))))
        return np.array(out)


@dataclass
class FiberResult:
    solutions: list
    count: int
    paths: int
    failed_paths: int
    gamma_runs: int
    max_residual: float

    def to_json(self):
        from .tensor import tensor_to_json

        return {
            "count": self.count,
            "paths": self.paths,
            "failed_paths": self.failed_paths,
            "gamma_runs": self.gamma_runs,
            "max_residual": self.max_residual,
            "solutions": [tensor_to_json(f) for f in self.solutions],
        }


def _scale_of(coeffs):
    s = max((abs(complex(c)) ** (1.0 / k) for k, c in enumerate(coeffs, start=1) if c != 0), default=1.0)
    return s if s > 0 else 1.0


def fiber_of_charpoly(phi, n=1, d=None, t=None, symmetric=True, seed=None, runs=1,
                      settings=FIBER_SETTINGS, filter_tol=FIBER_FILTER_TOL, max_failed_fraction=0.5):
    """All symmetric binary forms of degree d whose characteristic polynomial is phi.

    The square subsystem uses the first N = d + 1 power sums; every endpoint is then
    kept only if the spectrum of C(y) matches all D roots of phi (after rescaling).
    ``runs`` independent gamma draws are merged.
    Returns a FiberResult with SymForm solutions (complex coefficients).
    """
    if isinstance(phi, CharPoly):
        n, d, coeffs = phi.n, phi.d, list(phi.coeffs)
    else:
        coeffs = list(phi)
    if d is None:
        raise ValueError("degree d is required")
    if not symmetric:
        raise UnsupportedCaseError("fibers are computed for symmetric tensors only")
    if (n, d) not in FIBER_CASES:
        raise UnsupportedCaseError("fiber computation supports (n,d) in %s, got (%d,%d)" % (FIBER_CASES, n, d))
    t = unit_tensor(1, d) if t is None else as_ps(t)
    D = eigencount(1, d)
    if len(coeffs) != D:
        raise ValueError("charpoly has %d coefficients, expected %d" % (len(coeffs), D))
    # weighted rescaling y -> y / sigma keeps every power sum of order one
    sigma = _scale_of(coeffs)
    scaled = [complex(c) / sigma ** k for k, c in enumerate(coeffs, start=1)]
    system = FiberSystem(d, t, scaled)
    rng = make_rng(seed)
    found = []
    total_failed = 0
    paths = 0
    for _ in range(max(1, runs)):
        sols = solve_total_degree(system, seed=int(rng.integers(2**63)), settings=settings, return_all=True)
        paths += len(sols)
        total_failed += sum(1 for p in sols if not p.converged and not p.diverged)
        good = [p for p in sols if p.converged]
        if good:
            res = system.spectrum_residuals(np.array([p.coords for p in good]))
            found.extend(p for p, r in zip(good, res) if r < filter_tol)
    if paths and total_failed > max_failed_fraction * paths:
        raise RuntimeError("%d of %d paths failed" % (total_failed, paths))
    uniq = dedupe_solutions(found, settings.dedup)
    forms = []
    for p in uniq:
        form = MPoly.from_coefficients(2, d, [complex(z) * sigma for z in p.coords])
        forms.append(SymForm(1, d, form))
    max_res = max((p.residual for p in uniq), default=0.0)
    return FiberResult(forms, len(forms), paths, total_failed, max(1, runs), float(max_res))


def fiber_count_stable(phi, d, seed=None, draws=3, settings=FIBER_SETTINGS):
    """Fiber sizes from independent gamma draws; stable means all equal."""
    rng = make_rng(seed)
    return [fiber_of_charpoly(phi, 1, d, seed=int(rng.integers(2**63)), settings=settings).count
            for _ in range(draws)]


# --- Jacobian ranks ---------------------------------------------------------


def _domain_to_tensor(n, d, y, symmetric):
    if symmetric:
        return symmetric_to_ps(SymForm.from_coefficients(n, d, y))
    return PSTensor.from_coefficients(n, d, y)


def domain_dimension(n, d, symmetric):
    m = math.comb(n + d - 1, n)
    return math.comb(n + d, n) if symmetric else (n + 1) * m


def charpoly_map(n, d, y, t=None, symmetric=True):
    """Coefficients c_1..c_D of the characteristic polynomial at the domain point y."""
    T = _domain_to_tensor(n, d, y, symmetric)
    return list(char_poly(T, t).coeffs)


def _base_point(rng, n, d, symmetric):
    y = random_rationals(rng, domain_dimension(n, d, symmetric))
    top = max(abs(v) for v in y) or Fraction(1)
    return [v / top for v in y]


def jacobian_matrix(n, d, y, t=None, symmetric=True, step=1e-5):
    """Central finite differences of the coefficient map, evaluated in exact arithmetic."""
    h = Fraction(step).limit_denominator(10**12)
    cols = []
    for j in range(len(y)):
        plus = list(y)
        minus = list(y)
        plus[j] += h
        minus[j] -= h
        cp = charpoly_map(n, d, plus, t, symmetric)
        cm = charpoly_map(n, d, minus, t, symmetric)
        cols.append([complex((a - b) / (2 * h)) for a, b in zip(cp, cm)])
    return np.array(cols, dtype=complex).T


def numeric_rank(J, rel=1e-8):
    J = np.asarray(J, dtype=complex)
    # row equilibration: coefficient c_k is weighted-homogeneous of degree k
    norms = np.max(np.abs(J), axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    sv = np.linalg.svd(J / norms, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rel * sv[0]))


def jacobian_rank(n, d, t=None, symmetric=True, seed=None, y=None, step=1e-5):
    """Numeric rank of the Jacobian of the char-poly coefficient map at a random rational point."""
    if n != 1 and not (n == 2 and d == 3):
        raise UnsupportedCaseError("jacobian_rank supports n = 1 and (2,3)")
    rng = make_rng(seed)
    if y is None:
        y = _base_point(rng, n, d, symmetric)
    J = jacobian_matrix(n, d, [to_coeff(v) for v in y], t, symmetric, step)
    return numeric_rank(J)


def exact_directional_derivative(n, d, y, v, t=None, symmetric=True):
    """d/de c(y + e v) at e = 0, exactly, by interpolating in e (c_k has degree k)."""
    D = eigencount(n, d)
    samples = []
    for e in range(D + 1):
        pt = [to_coeff(a) + e * to_coeff(b) for a, b in zip(y, v)]
        samples.append((Fraction(e), charpoly_map(n, d, pt, t, symmetric)))
    out = []
    for k in range(D):
        p = univariate_interpolate([(e, c[k]) for e, c in samples], D)
        out.append(p.coeffs[1] if len(p.coeffs) > 1 else Fraction(0))
    return out
