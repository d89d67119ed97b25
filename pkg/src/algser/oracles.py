"""Taylor coefficients of the benchmark functions and error tables.

The functions are built from a handful of combinators whose coefficients
follow from forward recurrences::

    >>> ex2 = Scale(17, Binomial(1, -2, Fraction(-1, 3))) + Rational(2, -1, 1)
    >>> taylor(ex2, 3)

Every combinator can also be evaluated pointwise, which is what the
approximant tests compare against.
"""

from __future__ import annotations

import ast
import cmath
import operator
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import List, Optional, Sequence, Tuple, Union

import mpmath

from .errors import InvalidSpec, ZeroTruthWarning
from .series import PowerSeries, SeriesLike, as_coeffs

__all__ = [
    "OracleSpec",
    "Binomial",
    "Rational",
    "ExpProduct",
    "Sum",
    "Scale",
    "EXAMPLES",
    "taylor",
    "parse_oracle",
    "PredictionRow",
    "reference_errors",
]

Real = Union[int, float, Fraction]


def _num(x, dps: Optional[int]):
    if dps is None:
        return float(x)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


class OracleSpec:
    """Base class; subclasses implement ``_coeffs`` and ``value``."""

    def coeffs(self, L: int, dps: Optional[int] = None) -> list:
        if L < 1:
            raise ValueError(f"need at least one coefficient, got L={L}")
        if dps is None:
            return self._coeffs(L, None)
        with mpmath.workdps(dps):
            return self._coeffs(L, dps)

    def _coeffs(self, L: int, dps: Optional[int]) -> list:
        raise NotImplementedError

    def value(self, z):
        """Evaluate the function itself at (complex) `z`."""
        raise NotImplementedError

    def __add__(self, other: "OracleSpec") -> "Sum":
        return Sum((self, other))

    def __rmul__(self, factor: Real) -> "Scale":
        return Scale(factor, self)


@dataclass(frozen=True)
class Binomial(OracleSpec):
    """``(a + b z)**alpha``; requires ``a > 0`` unless alpha is an integer."""

    a: Real
    b: Real
    alpha: Real

    def __post_init__(self):
        if self.a == 0:
            raise InvalidSpec("binomial oracle needs a != 0")
        if self.a < 0 and Fraction(self.alpha).denominator != 1:
            raise InvalidSpec("binomial oracle with a < 0 needs integer alpha")

    def _coeffs(self, L, dps):
        a, b, alpha = (_num(x, dps) for x in (self.a, self.b, self.alpha))
        c = [a ** alpha]
        ratio = b / a
        for j in range(L - 1):
            c.append(c[-1] * ratio * (alpha - j) / (j + 1))
        return c

    def value(self, z):
        return (float(self.a) + float(self.b) * z) ** float(self.alpha)


@dataclass(frozen=True)
class Rational(OracleSpec):
    """``z**num_shift / (c + d z)`` with ``num_shift`` in {0, 1}."""

    c: Real
    d: Real
    num_shift: int = 0

    def __post_init__(self):
        if self.c == 0:
            raise InvalidSpec("rational oracle needs c != 0")
        if self.num_shift not in (0, 1):
            raise InvalidSpec("rational oracle numerator is 1 or z")
        object.__setattr__(self, "num_shift", int(self.num_shift))

    def _coeffs(self, L, dps):
        c, d = _num(self.c, dps), _num(self.d, dps)
        zero = _num(0, dps)
        out = [zero] * self.num_shift
        term = 1 / c
        while len(out) < L:
            out.append(term)
            term = term * (-d / c)
        return out

    def value(self, z):
        return z ** self.num_shift / (float(self.c) + float(self.d) * z)


@dataclass(frozen=True)
class ExpProduct(OracleSpec):
    """``exp(z)`` times another oracle."""

    inner: OracleSpec

    def _coeffs(self, L, dps):
        g = self.inner._coeffs(L, dps)
        e = [_num(1, dps)]
        for j in range(1, L):
            e.append(e[-1] / j)
        return [sum(e[i] * g[m - i] for i in range(m + 1)) for m in range(L)]

    def value(self, z):
        return cmath.exp(z) * self.inner.value(z)


@dataclass(frozen=True)
class Sum(OracleSpec):
    """Pointwise sum of oracles."""

    terms: Tuple[OracleSpec, ...]

    def __post_init__(self):
        if not self.terms:
            raise InvalidSpec("empty sum")

    def _coeffs(self, L, dps):
        parts = [t._coeffs(L, dps) for t in self.terms]
        return [sum(col[1:], col[0]) for col in zip(*parts)]

    def value(self, z):
        return sum(t.value(z) for t in self.terms)


@dataclass(frozen=True)
class Scale(OracleSpec):
    """Scalar multiple of an oracle."""

    factor: Real
    inner: OracleSpec

    def _coeffs(self, L, dps):
        k = _num(self.factor, dps)
        return [k * x for x in self.inner._coeffs(L, dps)]

    def value(self, z):
        return float(self.factor) * self.inner.value(z)


EXAMPLES = {
    # (2 - 3z)^(1/2) + 1/(5 - z)
    "ex1": Sum((Binomial(2, -3, Fraction(1, 2)), Rational(5, -1))),
    # 17 (1 - 2z)^(-1/3) + z/(2 - z)
    "ex2": Sum((Scale(17, Binomial(1, -2, Fraction(-1, 3))), Rational(2, -1, 1))),
    # exp(z) (2 - 3z)^(-1/3) + 1/(5 - z)
    "ex3": Sum((ExpProduct(Binomial(2, -3, Fraction(-1, 3))), Rational(5, -1))),
}


def taylor(spec: OracleSpec, L: int, dps: Optional[int] = None) -> PowerSeries:
    """First `L` Taylor coefficients at 0; mpmath at `dps` digits if given."""
    return PowerSeries(as_coeffs(spec.coeffs(L, dps)))


_CALLS = {
    "binomial": Binomial,
    "rational": Rational,
    "exp_product": ExpProduct,
    "scale": Scale,
}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return Fraction(node.value) if isinstance(node.value, int) else node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        if isinstance(v, OracleSpec):
            return Scale(-1, v) if isinstance(node.op, ast.USub) else v
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left, right = _eval(node.left), _eval(node.right)
        lo, ro = isinstance(left, OracleSpec), isinstance(right, OracleSpec)
        if isinstance(node.op, ast.Add) and lo and ro:
            return Sum((left, right))
        if isinstance(node.op, ast.Sub) and lo and ro:
            return Sum((left, Scale(-1, right)))
        if isinstance(node.op, ast.Mult) and lo != ro:
            return Scale(right, left) if lo else Scale(left, right)
        if not lo and not ro:
            return _BINOPS[type(node.op)](left, right)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _CALLS and not node.keywords):
        return _CALLS[node.func.id](*(_eval(a) for a in node.args))
    if isinstance(node, ast.Name) and node.id in EXAMPLES:
        return EXAMPLES[node.id]
    raise InvalidSpec(f"unsupported oracle expression: {ast.dump(node)}")


def parse_oracle(text: str) -> OracleSpec:
    """Parse an example name or a combinator expression.

    ``"ex1"`` and ``"17*binomial(1,-2,-1/3) + rational(2,-1,1)"`` are both
    accepted. Integer literals stay exact so ``1/3`` becomes a Fraction.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidSpec(f"cannot parse oracle expression {text!r}") from exc
    spec = _eval(tree)
    if not isinstance(spec, OracleSpec):
        raise InvalidSpec(f"{text!r} is a number, not a function")
    return spec


@dataclass(frozen=True)
class PredictionRow:
    """One row of a prediction error table.

    ``rel_err_pct`` is None when the true coefficient is zero.
    """

    j: int
    f_j: Number
    a_j: Number
    abs_err: Number
    rel_err_pct: Optional[Number]

    @property
    def zero_truth(self) -> bool:
        return self.rel_err_pct is None

    def as_dict(self) -> dict:
        return {"j": self.j, "f_j": self.f_j, "a_j": self.a_j,
                "abs_err": self.abs_err, "rel_err_pct": self.rel_err_pct}


def reference_errors(
    true_coeffs: SeriesLike, predicted: Sequence, start_index: int
) -> List[PredictionRow]:
    """Absolute and percent relative errors of `predicted` against the truth.

    ``predicted[i]`` is compared with ``true_coeffs[start_index + i]``.
    """
    truth = as_coeffs(true_coeffs)
    if truth.size < start_index + len(predicted):
        raise ValueError(
            f"truth covers indices < {truth.size}, predictions reach "
            f"{start_index + len(predicted) - 1}"
        )
    rows = []
    for i, a in enumerate(predicted):
        j = start_index + i
        f = truth[j]
        err = abs(f - a)
        if f == 0:
            warnings.warn(f"coefficient {j} is zero", ZeroTruthWarning, stacklevel=2)
            rel = None
        else:
            rel = 100 * err / abs(f)
        rows.append(PredictionRow(j, f, a, err, rel))
    return rows
