"""Pointwise evaluation of the algebraic approximant.

At a point z the approximant is a root w of ``sum_n P_n(z) w^n = 0``. The
branch is picked by proximity to the seed partial sum at z, which is
reliable inside the disc where that partial sum is accurate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchAmbiguity, DegreeCollapse, NoConvergence
from .hermite_pade import PolynomialSet
from .series import PowerSeries, SeriesLike, as_coeffs

__all__ = ["ApproximantValue", "roots_of_section", "eval_at", "ROOT_TOL"]

ROOT_TOL = 1e-11
COLLAPSE_TOL = 1e-13
TIE_TOL = 1e-9


@dataclass(frozen=True)
class ApproximantValue:
    z: complex
    value: complex
    branch_index: int
    residual: float


def _poly_roots(c: np.ndarray) -> np.ndarray:
    """Roots of ``c[0] + c[1] w + ... + c[N] w^N`` (``c[N] != 0``)."""
    N = c.size - 1
    if N == 1:
        return np.array([-c[0] / c[1]])
    comp = np.zeros((N, N), dtype=complex)
    comp[1:, :-1] = np.eye(N - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    return np.linalg.eigvals(comp)


def _residual(c, w):
    """Residual of root `w` and the coefficient scale it is judged against."""
    res = abs((c * w ** np.arange(c.size)).sum())
    scale = (np.abs(c) * max(1.0, abs(w)) ** np.arange(c.size)).sum()
    return res, scale


def _polish(c, w, steps=3):
    dc = c[1:] * np.arange(1, c.size)
    for _ in range(steps):
        d = np.polyval(dc[::-1], w)
        if d == 0:
            break
        w = w - np.polyval(c[::-1], w) / d
    return w


def roots_of_section(hpp: PolynomialSet, z: complex) -> np.ndarray:
    """All N roots in w of ``sum_n P_n(z) w^n``, with multiplicity."""
    c = np.array([complex(v) for v in hpp.evaluate(complex(z))])
    scale = np.abs(c).max()
    if scale == 0 or abs(c[-1]) <= COLLAPSE_TOL * scale:
        raise DegreeCollapse(f"P_N({z}) vanishes; the section drops degree")
    roots = _poly_roots(c)
    for i, w in enumerate(roots):
        res, scale = _residual(c, w)
        if res > ROOT_TOL * scale:
            w = _polish(c, w)
            res, scale = _residual(c, w)
            if not np.isfinite(w) or res > ROOT_TOL * scale:
                raise NoConvergence(f"root {i} at z={z} has residual {res:.3g}")
            roots[i] = w
    return roots


def eval_at(hpp: PolynomialSet, seed: SeriesLike, z: complex) -> ApproximantValue:
    """Value of the branch closest to the seed partial sum at `z`.

    Only the first M seed coefficients enter the partial sum.
    """
    c = as_coeffs(seed)
    z = complex(z)
    s = complex(PowerSeries(c[: hpp.spec.M]).partial_sum(z))
    roots = roots_of_section(hpp, z)
    dist = np.abs(roots - s)
    order = np.argsort(dist, kind="stable")
    best = int(order[0])
    if roots.size > 1:
        d1, d2 = dist[order[0]], dist[order[1]]
        if d2 - d1 <= TIE_TOL * d2:
            raise BranchAmbiguity(
                f"roots {roots[order[0]]} and {roots[order[1]]} are equally "
                f"close to the partial sum {s} at z={z}"
            )
    pz = np.array([complex(v) for v in hpp.evaluate(z)])
    res, _ = _residual(pz, roots[best])
    return ApproximantValue(z, complex(roots[best]), best, float(res))
