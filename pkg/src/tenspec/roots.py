"""Univariate root finding by Aberth iteration with multiplicity clustering."""

import math

import numpy as np

from .errors import ConvergenceError
from .poly import UPoly

__all__ = ["aberth", "univariate_roots", "cluster_roots"]

_EPS = np.finfo(float).eps


def _initial_guesses(c):
    # c: coefficients high -> low, c[0] != 0
    n = len(c) - 1
    mags = np.abs(c)
    # geometric-mean radius of the roots, bounded by the Cauchy bound
    radius = (mags[-1] / mags[0]) ** (1.0 / n) if mags[-1] > 0 else 1.0
    cauchy = 1.0 + np.max(mags[1:] / mags[0])
    radius = min(max(radius, 1e-3), cauchy)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def _rel_residual(c, absc, z):
    return np.abs(np.polyval(c, z)) / np.maximum(np.polyval(absc, np.abs(z)), np.finfo(float).tiny)


def _aberth_step(c, dc, z, frozen):
    pz = np.polyval(c, z)
    dpz = np.polyval(dc, z)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inv = 1.0 / diff
    np.fill_diagonal(inv, 0.0)
    s = inv.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratio = pz / dpz
        step = ratio / (1.0 - ratio * s)
    step = np.where(np.isfinite(step) & ~frozen, step, 0.0)
    return z - step


def aberth(coeffs, tol=1e-12, max_iter=200, polish=3):
    """All roots of the polynomial with coefficients ``coeffs`` (low -> high).

    Iterates until every root has relative residual ``|p(z)| / sum |a_k||z|^k`` below
    ``tol``, then takes up to ``polish`` extra steps that are kept only where they
    lower the residual. Raises :class:`ConvergenceError` carrying the last iterate
    when the tolerance is not reached.
    """
    c = np.asarray(coeffs, dtype=complex)[::-1]
    while len(c) and c[0] == 0:
        c = c[1:]
    n = len(c) - 1
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    # roots at zero are exact; strip them so the iteration sees a nonzero constant term
    nzero = 0
    while c[-1] == 0:
        c = c[:-1]
        nzero += 1
    zeros = np.zeros(nzero, dtype=complex)
    if len(c) == 1:
        return zeros
    dc = np.polyder(c)
    absc = np.abs(c)
    z = _initial_guesses(c)
    for _ in range(max_iter):
        res = _rel_residual(c, absc, z)
        if np.all(res <= tol):
            break
        z = _aberth_step(c, dc, z, res <= tol)
    else:
        if not np.all(_rel_residual(c, absc, z) <= tol):
            raise ConvergenceError("Aberth iteration did not converge in %d steps" % max_iter,
                                   best=np.concatenate([z, zeros]))
    for _ in range(polish):
        res = _rel_residual(c, absc, z)
        trial = _aberth_step(c, dc, z, np.zeros(len(z), dtype=bool))
        better = _rel_residual(c, absc, trial) < res
        z = np.where(better, trial, z)
    return np.concatenate([z, zeros])


def _spread_radius(c, absc, centre, m, backward):
    """Expected spread of an m-fold root under a relative coefficient perturbation ``backward``."""
    dm = np.polyder(c, m) if m < len(c) else np.zeros(1)
    top = abs(np.polyval(dm, centre)) / math.factorial(m)
    if top == 0:
        return np.inf
    return (backward * np.polyval(absc, abs(centre)) / top) ** (1.0 / m)


def cluster_roots(roots, cluster_tol=1e-8, coeffs=None):
    """Group numerically coincident roots; returns sorted [(centroid, multiplicity)].

    Without ``coeffs`` roots merge when closer than ``cluster_tol * (1 + |c|)``.
    With ``coeffs`` (low -> high) a merge into an m-fold cluster is also accepted when
    its members lie within ten times the spread that an m-fold root shows under the
    achieved backward error, since such a root only resolves to about eps^(1/m).
    """
    roots = [complex(r) for r in roots]
    if coeffs is not None:
        c = np.asarray(coeffs, dtype=complex)[::-1]
        while len(c) and c[0] == 0:
            c = c[1:]
        absc = np.abs(c)
        backward = max(float(np.max(_rel_residual(c, absc, np.array(roots)))), _EPS) if roots else _EPS

    def allowed(members):
        centre = complex(np.mean(members))
        radius = cluster_tol * (1 + abs(centre))
        if coeffs is not None and len(members) > 1:
            radius = max(radius, 10 * _spread_radius(c, absc, centre, len(members), backward))
        return max(abs(x - centre) for x in members) <= radius

    clusters = [[r] for r in roots]
    while len(clusters) > 1:
        cents = [np.mean(cl) for cl in clusters]
        pairs = sorted((abs(cents[i] - cents[j]), i, j)
                       for i in range(len(clusters)) for j in range(i + 1, len(clusters)))
        for _, i, j in pairs:
            if allowed(clusters[i] + clusters[j]):
                clusters[i].extend(clusters.pop(j))
                break
        else:
            break
    return _sorted([(complex(np.mean(cl)), len(cl)) for cl in clusters])


def _sorted(pairs):
    return sorted(pairs, key=lambda rm: (round(rm[0].real, 9), round(rm[0].imag, 9)))


def univariate_roots(p, cluster_tol=1e-8, tol=1e-12, max_iter=200):
    """Roots of ``p`` with multiplicities, as a sorted list of (root, multiplicity).

    Exact input is first split by square-free decomposition, so multiplicities are
    exact and each factor is solved as a polynomial with simple roots. Floating
    input is solved directly and multiplicities come from clustering.
    """
    if not isinstance(p, UPoly):
        p = UPoly(p)
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if p.domain == "exact":
        out = []
        for factor, mult in p.squarefree_decomposition():
            if factor.degree == 1:
                out.append((complex(-factor.coeffs[0] / factor.coeffs[1]), mult))
                continue
            for z in aberth([complex(c) for c in factor.coeffs], tol, max_iter):
                out.append((complex(z), mult))
        return _sorted(out)
    z = aberth(list(p.coeffs), tol, max_iter)
    return cluster_roots(z, cluster_tol, coeffs=list(p.coeffs))
