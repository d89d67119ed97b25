"""Recursive prediction of series coefficients from Hermite-Padé polynomials.

Given a frozen polynomial set and the seed coefficients ``a_0..a_{M-1}``,
each further coefficient solves the z^J equation of
``sum_n P_n(z) a(z)^n = 0``. That equation is linear in ``a_J``::

    R_J = D_J + C * a_J,     C = sum_{n>=1} n p_{n,0} a_0^{n-1}

where ``D_J`` is the z^J coefficient of ``sum_{n>=1} P_n(z) s(z)^n`` with
``s`` the partial sum through ``z^{J-1}``. Setting ``R_J = 0`` gives
``a_J = -D_J / C``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import mpmath
import numpy as np

from .errors import CoefficientOverflow, SpecMismatch, ZeroDenominator
from .hermite_pade import DegreeSpec, PolynomialSet, _consumed
from .series import SeriesLike, _powers, as_coeffs

__all__ = [
    "PredictionState",
    "compute_C",
    "compute_DJ",
    "residual_RJ",
    "predict_next",
    "predict_quadratic_fast",
    "predict_k",
    "C_TOL",
]

C_TOL = 1e-13


def compute_C(hpp: PolynomialSet, f0) -> float:
    """Coefficient of ``a_J`` in the order-J equation.

    Raises :class:`ZeroDenominator` when the terms cancel to below
    ``C_TOL`` of their absolute sum.
    """
    terms = [n * hpp.coefficient(n, 0) * f0 ** (n - 1) for n in range(1, hpp.N + 1)]
    C = sum(terms[1:], terms[0])
    scale = sum(abs(t) for t in terms)
    if scale == 0 or abs(C) <= C_TOL * scale:
        raise ZeroDenominator(f"C = {C} vanishes against term scale {scale}")
    return C


@dataclass(frozen=True, eq=False)
class PredictionState:
    """Known and predicted coefficients plus the cached denominator.

    ``coeffs[:M]`` are the seed coefficients; anything past that was either
    predicted or supplied as extra (true) history.
    """

    coeffs: Tuple
    C: object
    hpp: PolynomialSet
    M: int

    @classmethod
    def seed(cls, f: SeriesLike, hpp: PolynomialSet, history: Optional[int] = None):
        """Start from the first ``M`` coefficients of `f`.

        `history` (>= M) seeds more true coefficients, so that the next
        prediction is a one-step-ahead forecast from longer true data.
        """
        M = hpp.spec.M
        n = M if history is None else history
        if n < M:
            raise ValueError(f"history {n} is shorter than M = {M}")
        c = _consumed(f, n)
        return cls(tuple(c), compute_C(hpp, c[0]), hpp, M)

    @property
    def spec(self) -> DegreeSpec:
        return self.hpp.spec

    @property
    def J(self) -> int:
        """Index of the next coefficient to predict."""
        return len(self.coeffs)

    def array(self) -> np.ndarray:
        return as_coeffs(self.coeffs)

    def predicted(self) -> list:
        return list(self.coeffs[self.M:])


def _zj_coefficient(hpp: PolynomialSet, a: np.ndarray, J: int):
    """z^J coefficient of ``sum_{n>=1} P_n(z) (sum_j a_j z^j)^n``."""
    powers = _powers(a, hpp.N, J + 1)
    total = 0
    for n in range(1, hpp.N + 1):
        p = hpp.polys[n]
        k = min(p.size - 1, J)
        total = total + p[:k + 1].dot(powers[n][J - k:J + 1][::-1])
    return total


def compute_DJ(state: PredictionState, J: Optional[int] = None):
    """Part of the z^J residual that does not involve ``a_J``.

    `state` must hold exactly ``a_0..a_{J-1}``. ``P_0`` never enters since
    ``J >= M > p_0``.
    """
    J = state.J if J is None else J
    if J != state.J:
        raise ValueError(f"state holds {state.J} coefficients, asked for D_{J}")
    if J < state.M:
        raise ValueError(f"D_J is only defined for J >= M = {state.M}")
    return _zj_coefficient(state.hpp, state.array(), J)


def residual_RJ(state: PredictionState, J: int):
    """Full z^J coefficient of ``sum_n P_n(z) a(z)^n`` using ``a_0..a_J``.

    Vanishes (to rounding) at every predicted index.
    """
    if len(state.coeffs) <= J:
        raise ValueError(f"state holds {len(state.coeffs)} coefficients, need {J + 1}")
    a = state.array()[:J + 1]
    R = _zj_coefficient(state.hpp, a, J)
    p0 = state.hpp.polys[0]
    if J < p0.size:
        R = R + p0[J]
    return R


def _check_finite(x, J):
    ok = mpmath.isfinite(x) if isinstance(x, mpmath.mpf) else math.isfinite(x)
    if not ok:
        raise CoefficientOverflow(f"predicted a_{J} = {x} is not representable")


def predict_next(state: PredictionState):
    """Return ``(a_J, new_state)`` with ``a_J = -D_J / C``."""
    J = state.J
    a = -compute_DJ(state, J) / state.C
    _check_finite(a, J)
    return a, replace(state, coeffs=state.coeffs + (a,))


def predict_quadratic_fast(state: PredictionState):
    """O(J) closed form of :func:`predict_next` for N=2, degrees (1,1,1)."""
    if state.spec != DegreeSpec(2, (1, 1, 1)):
        raise SpecMismatch(f"closed form needs N=2 degrees (1,1,1), got {state.spec}")
    a, J = state.coeffs, state.J
    p = state.hpp.polys
    p10, p11 = p[1]
    p20, p21 = p[2]
    num = (p11 * a[J - 1]
           + p21 * sum(a[J - k - 1] * a[k] for k in range(J))
           + p20 * sum(a[k] * a[J - k] for k in range(1, J)))
    den = p10 + 2 * p20 * a[0]
    aJ = -num / den
    _check_finite(aJ, J)
    return aJ, replace(state, coeffs=state.coeffs + (aJ,))


def predict_k(f: SeriesLike, spec: DegreeSpec, hpp: PolynomialSet, k: int) -> list:
    """Predict ``a_M, ..., a_{M+k-1}`` from the first M coefficients of `f`."""
    if hpp.spec != spec:
        raise SpecMismatch(f"polynomial set has {hpp.spec}, expected {spec}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    state = PredictionState.seed(f, hpp)
    for _ in range(k):
        _, state = predict_next(state)
    return state.predicted()
