"""Hermite-Padé polynomials from a truncated power series.

For a degree spec ``(N; p_0, ..., p_N)`` we look for polynomials
``P_n`` with ``deg P_n <= p_n`` such that ``sum_n P_n(z) f(z)^n = O(z^M)``
with ``M = N + sum p_n``. Those M conditions are linear in the
``M + 1`` polynomial coefficients; fixing one coefficient to unity leaves a
square system that :func:`dense_solve` handles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .errors import InsufficientCoefficients, SingularSystem
from .series import SeriesLike, _powers, _zeros, as_coeffs

__all__ = [
    "DegreeSpec",
    "PolynomialSet",
    "required_input_length",
    "build_system",
    "dense_solve",
    "solve_hpp",
    "verify_order",
    "PIVOT_TOL",
    "SOLVE_TOL",
]

PIVOT_TOL = 1e-12
SOLVE_TOL = 1e-10


@dataclass(frozen=True)
class DegreeSpec:
    """Degree ``N`` of the algebraic equation and polynomial degrees ``p_n``."""

    N: int
    degrees: Tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(int(p) for p in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if len(degrees) != self.N + 1:
            raise ValueError(
                f"need N+1 = {self.N + 1} degrees, got {len(degrees)}"
            )
        if any(p < 0 for p in degrees):
            raise ValueError("polynomial degrees must be nonnegative")

    @classmethod
    def parse(cls, N: int, degrees: str) -> "DegreeSpec":
        """Build from a comma separated degree list such as ``"1,1,1"``."""
        return cls(N, tuple(int(p) for p in degrees.split(",") if p.strip()))

    @property
    def M(self) -> int:
        return required_input_length(self)

    def unknowns(self) -> Iterator[Tuple[int, int]]:
        """Unknown ``(n, j)`` pairs in column order."""
        for n, p in enumerate(self.degrees):
            for j in range(p + 1):
                yield n, j

    def __str__(self) -> str:
        return f"N={self.N} degrees=({','.join(map(str, self.degrees))})"


def required_input_length(spec: DegreeSpec) -> int:
    """Number of series coefficients (and order equations) for `spec`."""
    return spec.N + sum(spec.degrees)


@dataclass(frozen=True, eq=False)
class PolynomialSet:
    """Coefficients ``polys[n][j]`` of the Hermite-Padé polynomials.

    ``normalization`` is the ``(n, j)`` index whose coefficient is exactly 1.
    """

    polys: Tuple[np.ndarray, ...]
    normalization: Tuple[int, int]

    def __post_init__(self):
        polys = tuple(as_coeffs(p).copy() for p in self.polys)
        for p in polys:
            p.flags.writeable = False
        object.__setattr__(self, "polys", polys)
        n, j = self.normalization
        if polys[n][j] != 1:
            raise ValueError(f"coefficient {self.normalization} is not 1")

    @property
    def N(self) -> int:
        return len(self.polys) - 1

    @property
    def spec(self) -> DegreeSpec:
        return DegreeSpec(self.N, tuple(p.size - 1 for p in self.polys))

    def coefficient(self, n: int, j: int):
        p = self.polys[n]
        return p[j] if j < p.size else 0

    def rescaled(self, n: int, j: int) -> "PolynomialSet":
        """Same polynomials rescaled so that coefficient ``(n, j)`` is 1."""
        scale = self.polys[n][j]
        if scale == 0:
            raise ZeroDivisionError(f"coefficient ({n}, {j}) is zero")
        polys = [p / scale for p in self.polys]
        polys[n] = polys[n].copy()
        polys[n][j] = 1
        return PolynomialSet(tuple(polys), (n, j))

    def evaluate(self, z) -> list:
        """Values ``P_0(z), ..., P_N(z)``."""
        out = []
        for p in self.polys:
            acc = 0 * z
            for c in p[::-1]:
                acc = acc * z + c
            out.append(acc)
        return out


def _consumed(f: SeriesLike, M: int) -> np.ndarray:
    c = as_coeffs(f)
    if c.size < M:
        raise InsufficientCoefficients(
            f"need {M} series coefficients, got {c.size}"
        )
    return c[:M]


def build_system(f: SeriesLike, spec: DegreeSpec) -> np.ndarray:
    """Order-condition matrix of shape ``(M, M + 1)``.

    Row m holds the z^m coefficient of ``sum_n P_n f^n`` as a linear form
    in the unknowns ordered by :meth:`DegreeSpec.unknowns`.
    """
    M = spec.M
    c = _consumed(f, M)
    powers = _powers(c, spec.N, M)
    A = np.empty((M, M + 1), dtype=c.dtype)
    zero = _zeros(1, c)[0]
    for col, (n, j) in enumerate(spec.unknowns()):
        A[:j, col] = zero
        A[j:, col] = powers[n][: M - j]
    return A


def dense_solve(A, b) -> np.ndarray:
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Raises
    ------
    SingularSystem
        If a pivot drops below ``PIVOT_TOL`` times the largest magnitude
        initially present in its column.
    """
    A = np.array(A, dtype=object if np.asarray(A).dtype == object else float)
    b = np.array(b, dtype=A.dtype).ravel()
    n = A.shape[0]
    if A.shape != (n, n) or b.size != n:
        raise ValueError(f"shape mismatch: A {A.shape}, b {b.shape}")
    col_scale = np.abs(A).max(axis=0) if n else np.zeros(0)
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if col_scale[k] == 0 or abs(A[p, k]) < PIVOT_TOL * col_scale[k]:
            raise SingularSystem(f"pivot {k} is numerically zero")
        if p != k:
            A[[k, p]] = A[[p, k]]
            b[[k, p]] = b[[p, k]]
        lam = A[k + 1:, k] / A[k, k]
        A[k + 1:, k:] -= np.outer(lam, A[k, k:])
        b[k + 1:] -= lam * b[k]
    x = b
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - A[k, k + 1:].dot(x[k + 1:])) / A[k, k]
    return x


def _candidate_normalizations(spec: DegreeSpec):
    for j in range(max(spec.degrees) + 1):
        for n, p in enumerate(spec.degrees):
            if j <= p:
                yield n, j


def _split(x: np.ndarray, spec: DegreeSpec) -> Tuple[np.ndarray, ...]:
    polys, k = [], 0
    for p in spec.degrees:
        polys.append(x[k:k + p + 1])
        k += p + 1
    return tuple(polys)


def solve_hpp(
    f: SeriesLike,
    spec: DegreeSpec,
    normalization: Optional[Tuple[int, int]] = None,
) -> PolynomialSet:
    """Hermite-Padé polynomials of `f` for `spec`.

    Only the first ``M`` coefficients of `f` are used. Unless a
    `normalization` is forced, the constant terms ``p_{0,0}, ..., p_{N,0}``
    are tried in turn, then the linear terms and so on, and the first one
    that leaves a nonsingular system is fixed to 1.
    """
    A = build_system(f, spec)
    cols = list(spec.unknowns())
    if normalization is not None:
        candidates: Sequence[Tuple[int, int]] = [tuple(normalization)]
        if candidates[0] not in cols:
            raise ValueError(f"{normalization} is not a coefficient of {spec}")
    else:
        candidates = list(_candidate_normalizations(spec))
    for cand in candidates:
        k = cols.index(cand)
        rhs = -A[:, k]
        try:
            x = dense_solve(np.delete(A, k, axis=1), rhs)
        except SingularSystem:
            continue
        full = np.insert(x.astype(A.dtype), k, 1)
        full[k] = 1
        scale = (np.abs(A) * np.abs(full)).max(axis=1)
        if np.all(np.abs(A.dot(full)) <= SOLVE_TOL * scale):
            return PolynomialSet(_split(full, spec), cand)
    raise SingularSystem(f"no normalization gives a nonsingular system for {spec}")


def verify_order(
    f: SeriesLike, hpp: PolynomialSet, spec: Optional[DegreeSpec] = None
) -> np.ndarray:
    """Coefficients of z^0..z^{M-1} in ``sum_n P_n(z) f(z)^n``."""
    spec = spec or hpp.spec
    M = spec.M
    c = _consumed(f, M)
    powers = _powers(c, spec.N, M)
    total = _zeros(M, c)
    for n, poly in enumerate(hpp.polys):
        total = total + np.convolve(poly, powers[n])[:M]
    return total
