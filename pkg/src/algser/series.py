"""Dense truncated power series.

Coefficients are stored as numpy arrays. Plain floats give ``float64``
arrays; ``mpmath.mpf`` inputs give ``object`` arrays, and every operation
here works unchanged on either, which is how extended precision is
threaded through the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import mpmath
import numpy as np

__all__ = [
    "PowerSeries",
    "as_coeffs",
    "truncate",
    "mul",
    "pow",
    "poly_times_series",
]


def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def as_coeffs(values: Union["PowerSeries", Iterable]) -> np.ndarray:
    """Return `values` as a 1-d coefficient array.

    ``float64`` unless some entry is an mpmath number, in which case the
    array has ``object`` dtype and every entry is converted to ``mpf``.
    """
    if isinstance(values, PowerSeries):
        return values.coeffs
    if isinstance(values, np.ndarray) and values.dtype != object:
        return np.asarray(values, dtype=float).ravel()
    vals = list(np.asarray(values, dtype=object).ravel())
    if any(_is_mp(v) for v in vals):
        return np.array([mpmath.mpf(v) for v in vals], dtype=object)
    return np.asarray(vals, dtype=float)


def _zeros(n: int, like: np.ndarray) -> np.ndarray:
    if like.dtype == object:
        return np.array([mpmath.mpf(0)] * n, dtype=object)
    return np.zeros(n)


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Finite prefix ``f_0, ..., f_{L-1}`` of a formal power series in z."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_coeffs(self.coeffs).copy()
        if c.size < 1:
            raise ValueError("a power series needs at least one coefficient")
        if not all(mpmath.isfinite(x) for x in c):
            raise ValueError("power series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, j):
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coeffs)!r})"

    def partial_sum(self, z):
        """Evaluate the polynomial ``sum_j f_j z^j`` (Horner)."""
        acc = 0 * z
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc


SeriesLike = Union[PowerSeries, Sequence, np.ndarray]


def _fit(c: np.ndarray, L: int) -> np.ndarray:
    if L < 1:
        raise ValueError(f"truncation length must be >= 1, got {L}")
    if c.size >= L:
        return c[:L]
    return np.concatenate([c, _zeros(L - c.size, c)])


def truncate(s: SeriesLike, L: int) -> PowerSeries:
    """First `L` coefficients of `s`, zero padded when `s` is shorter."""
    return PowerSeries(_fit(as_coeffs(s), L))


def _mul(a: np.ndarray, b: np.ndarray, L: int) -> np.ndarray:
    # Shift-and-add: coefficient j is always summed over i = 0..j in order,
    # so results do not depend on L (np.convolve does not guarantee this).
    b = _fit(b, L)
    out = _zeros(L, b) if a.dtype != object else _zeros(L, a)
    for i, ai in enumerate(a[:L]):
        if ai != 0:
            out[i:] += ai * b[: L - i]
    return out


def mul(s: SeriesLike, t: SeriesLike, L: int) -> PowerSeries:
    """Cauchy product of `s` and `t` truncated to `L` coefficients."""
    return PowerSeries(_mul(as_coeffs(s), as_coeffs(t), L))


def _powers(c: np.ndarray, n_max: int, L: int) -> list:
    """``[c^0, c^1, ..., c^n_max]``, each truncated to length `L`."""
    one = _zeros(L, c)
    one[0] += 1
    out = [one]
    base = _fit(c, L)
    for _ in range(n_max):
        out.append(_mul(out[-1], base, L))
    return out


def pow(s: SeriesLike, n: int, L: int) -> PowerSeries:  # noqa: A001
    """n-th power of `s` truncated to `L` coefficients, by repeated products."""
    if n < 0:
        raise ValueError("only nonnegative powers are supported")
    if L < 1:
        raise ValueError(f"truncation length must be >= 1, got {L}")
    return PowerSeries(_powers(as_coeffs(s), n, L)[n])


def poly_times_series(p: SeriesLike, s: SeriesLike, L: int) -> PowerSeries:
    """Product of the polynomial with coefficients `p` and the series `s`."""
    return PowerSeries(_mul(as_coeffs(p), as_coeffs(s), L))
