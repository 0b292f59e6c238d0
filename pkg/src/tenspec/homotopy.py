"""Total-degree homotopy continuation for square polynomial systems, batched over paths.

Any object with ``nvars``, ``degrees`` and ``evaluate(X) -> (F, J)`` (X of shape
(P, nvars), F of shape (P, nvars), J of shape (P, nvars, nvars)) can be solved.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np


__all__ = ["SquareSystem", "PathSolution", "TrackerSettings", "solve_total_degree", "dedupe_solutions"]


class SquareSystem:
    """n polynomial equations in n unknowns with complex coefficients."""

    def __init__(self, equations, nvars=None):
        eqs = [e.to_float() if e.domain != "float" else e for e in equations]
        self.nvars = nvars if nvars is not None else (eqs[0].nvars if eqs else 0)
        if len(eqs) != self.nvars or any(e.nvars != self.nvars for e in eqs):
            raise ValueError("system must have as many equations as unknowns")
        self.equations = eqs
        self.degrees = [e.degree for e in eqs]
        if any(k < 1 for k in self.degrees):
            raise ValueError("every equation needs degree >= 1")
        self._exps = []
        self._coeffs = []
        for e in eqs:
            items = sorted(e.terms.items())
            self._exps.append(np.array([k for k, _ in items], dtype=int).reshape(-1, self.nvars))
            self._coeffs.append(np.array([c for _, c in items], dtype=complex))

    def evaluate(self, X):
        X = np.asarray(X, dtype=complex)
        P, n = X.shape
        F = np.zeros((P, n), dtype=complex)
        J = np.zeros((P, n, n), dtype=complex)
        for i, (E, c) in enumerate(zip(self._exps, self._coeffs)):
            powers = X[:, None, :] ** E[None, :, :]  # (P, terms, n)
            F[:, i] = (powers.prod(axis=2) * c).sum(axis=1)
            for j in range(n):
                Ej = E[:, j]
                Em = E.copy()
                Em[:, j] = np.maximum(Ej - 1, 0)
                pw = (X[:, None, :] ** Em[None, :, :]).prod(axis=2)
                J[:, i, j] = (pw * (c * Ej)).sum(axis=1)
        return F, J

    def residual(self, X):
        F, _ = self.evaluate(np.atleast_2d(X))
        return np.max(np.abs(F), axis=1)


@dataclass
class PathSolution:
    coords: np.ndarray
    residual: float
    converged: bool
    diverged: bool
    path_index: int = -1
    s_end: float = 1.0

    def to_json(self):
        return {
            "coords": [[complex(z).real, complex(z).imag] for z in self.coords],
            "residual": float(self.residual),
            "converged": bool(self.converged),
            "diverged": bool(self.diverged),
        }


@dataclass(frozen=True)
class TrackerSettings:
    min_step: float = 1e-6
    max_step: float = 0.1
    initial_step: float = 0.02
    corrector_iters: int = 3
    corrector_tol: float = 1e-9
    divergence: float = 1e8
    polish_tol: float = 1e-10
    converged_tol: float = 1e-8
    polish_iters: int = 20
    max_steps: int = 20000
    dedup: float = 1e-6


def _solve_batch(J, R):
    """Solve J x = R per path; singular members fall back to least squares."""
    try:
        return np.linalg.solve(J, R[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.empty_like(R)
        for k in range(len(R)):
            try:
                out[k] = np.linalg.solve(J[k], R[k])
            except np.linalg.LinAlgError:
                out[k] = np.linalg.lstsq(J[k], R[k], rcond=None)[0]
        return out


def _start(degrees, rng):
    r = np.exp(2j * np.pi * rng.random(len(degrees)))
    roots = [r[i] ** (1.0 / d) * np.exp(2j * np.pi * np.arange(d) / d) for i, d in enumerate(degrees)]
    X0 = np.array(list(product(*roots)), dtype=complex)
    return r, X0


def _start_eval(X, r, degrees):
    deg = np.asarray(degrees)
    G = X ** deg - r
    dG = deg * X ** (deg - 1)
    return G, dG


def solve_total_degree(system, seed=None, gamma=None, settings=TrackerSettings(), return_all=False):
    """Track prod(d_i) paths from x_i^d_i = r_i to the target system.

    H(x, s) = (1 - s) gamma G(x) + s F(x) with random unit complex gamma and r_i.
    Returns the deduplicated converged endpoints, or every endpoint with
    ``return_all``. Results depend only on ``seed`` (and ``gamma`` if given).
    """
    rng = np.random.default_rng(seed)
    degrees = list(system.degrees)
    r, X = _start(degrees, rng)
    if gamma is None:
        gamma = np.exp(2j * np.pi * rng.random())
    P, n = X.shape
    s = np.zeros(P)
    h = np.full(P, settings.initial_step)
    streak = np.zeros(P, dtype=int)
    active = np.ones(P, dtype=bool)
    diverged = np.zeros(P, dtype=bool)
    failed = np.zeros(P, dtype=bool)

    def homotopy(Xa, sa):
        F, JF = system.evaluate(Xa)
        G, dG = _start_eval(Xa, r, degrees)
        JG = np.zeros_like(JF)
        idx = np.arange(n)
        JG[:, idx, idx] = dG
        w = sa[:, None]
        H = (1 - w) * gamma * G + w * F
        JH = (1 - w)[..., None] * gamma * JG + w[..., None] * JF
        Hs = F - gamma * G
        return H, JH, Hs

    for _ in range(settings.max_steps):
        ids = np.flatnonzero(active)
        if ids.size == 0:
            break
        Xa, sa, ha = X[ids], s[ids], h[ids]
        ha = np.minimum(ha, 1.0 - sa)
        _, JH, Hs = homotopy(Xa, sa)
        dx = -_solve_batch(JH, Hs)
        s1 = np.where(sa + ha >= 1.0 - 1e-15, 1.0, sa + ha)
        X1 = Xa + ha[:, None] * dx
        ok = np.ones(ids.size, dtype=bool)
        prev = np.full(ids.size, np.inf)
        last = np.zeros(ids.size)
        for _ in range(settings.corrector_iters):
            H, JH1, _ = homotopy(X1, s1)
            step = _solve_batch(JH1, H)
            X1 = X1 - step
            size = np.linalg.norm(step, axis=1)
            tiny = size <= settings.corrector_tol * (1.0 + np.linalg.norm(X1, axis=1))
            ok &= np.isfinite(size) & ((size <= 0.5 * prev) | tiny)
            prev = size
            last = size
        scale = 1.0 + np.linalg.norm(X1, axis=1)
        ok &= last <= settings.corrector_tol * scale
        # accepted steps advance; rejected ones halve
        acc = ids[ok]
        X[acc] = X1[ok]
        s[acc] = s1[ok]
        streak[acc] += 1
        grow = acc[streak[acc] >= 3]
        h[grow] = np.minimum(2 * h[grow], settings.max_step)
        streak[grow] = 0
        rej = ids[~ok]
        h[rej] /= 2
        streak[rej] = 0
        big = np.linalg.norm(X[ids], axis=1) > settings.divergence
        diverged[ids[big]] = True
        failed[rej[h[rej] < settings.min_step]] = True
        done = s[ids] >= 1.0
        active[ids[done | big]] = False
        active[failed] = False
    failed |= active

    # polish endpoints on the target system
    fin = np.flatnonzero(~diverged & ~failed)
    if fin.size:
        Xf = X[fin]
        for _ in range(settings.polish_iters):
            F, JF = system.evaluate(Xf)
            res = np.max(np.abs(F), axis=1)
            todo = res > settings.polish_tol
            if not todo.any():
                break
            Xf[todo] = Xf[todo] - _solve_batch(JF[todo], F[todo])
        X[fin] = Xf
    F, _ = system.evaluate(X)
    resid = np.max(np.abs(F), axis=1)
    resid[~np.isfinite(resid)] = np.inf
    sols = []
    for k in range(P):
        conv = bool(not diverged[k] and not failed[k] and resid[k] < settings.converged_tol)
        sols.append(PathSolution(X[k].copy(), float(resid[k]), conv, bool(diverged[k]), k, float(s[k])))
    if return_all:
        return sols
    return dedupe_solutions([p for p in sols if p.converged], settings.dedup)


def dedupe_solutions(sols, tol=1e-6):
    out = []
    for p in sols:
        if all(np.linalg.norm(p.coords - q.coords) > tol * (1 + np.linalg.norm(q.coords)) for q in out):
            out.append(p)
    return sorted(out, key=lambda p: tuple((round(z.real, 6), round(z.imag, 6)) for z in p.coords))
