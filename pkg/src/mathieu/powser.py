"""Truncated formal power series with exact rational coefficients.

Only the handful of constructions needed to audit the Bose kernel
``x / (e^x - 1)`` and its derivatives are provided: exponentials of a
scalar multiple of ``x``, ring operations, reciprocal of a unit series and
differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import PreconditionError

Rational = Fraction

DEFAULT_ORDER = 20


@dataclass(frozen=True)
class RationalSeries:
    """``sum_{k<=K} c_k x^k + O(x^{K+1})``; coefficients past K are unknown."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Fraction | int | str]):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalSeries):
            return self.coefficients == other.coefficients
        if isinstance(other, (list, tuple)):
            return self.coefficients == tuple(Fraction(c) for c in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def truncate(self, K: int) -> RationalSeries:
        if K > self.order:
            raise PreconditionError(f"cannot extend order {self.order} to {K}")
        return RationalSeries(self.coefficients[: K + 1])

    def __add__(self, other: RationalSeries) -> RationalSeries:
        return ps_add(self, other)

    def __sub__(self, other: RationalSeries) -> RationalSeries:
        return ps_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return ps_mul(self, other)
        return ps_scale(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> RationalSeries:
        return ps_scale(self, -1)

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    def evaluate(self, x: float) -> float:
        """Horner evaluation of the truncated polynomial in floating point."""
        acc = 0.0
        for c in reversed(self.as_floats()):
            acc = acc * x + c
        return acc


def _common(a: RationalSeries, b: RationalSeries) -> int:
    return min(a.order, b.order)


def ps_exp_scaled(a: Fraction | int, K: int) -> RationalSeries:
    """Series of ``exp(a x)``: coefficient k is ``a**k / k!``."""
    if K < 0:
        raise PreconditionError("order must be nonnegative")
    a = Fraction(a)
    return RationalSeries(a**k / factorial(k) for k in range(K + 1))


def ps_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    K = _common(a, b)
    return RationalSeries(a[k] + b[k] for k in range(K + 1))


def ps_sub(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    K = _common(a, b)
    return RationalSeries(a[k] - b[k] for k in range(K + 1))


def ps_scale(a: RationalSeries, c: Fraction | int | str) -> RationalSeries:
    if not isinstance(c, (_RationalABC, str)):
        raise TypeError(f"scalar must be an exact rational, got {type(c).__name__}")
    c = Fraction(c)
    return RationalSeries(c * ak for ak in a)


def ps_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Cauchy product truncated to the smaller order."""
    K = _common(a, b)
    return RationalSeries(
        sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(K + 1)
    )


def ps_shift(a: RationalSeries, m: int) -> RationalSeries:
    """Multiply by ``x**m``; the known order grows by m."""
    if m < 0:
        raise PreconditionError("shift must be nonnegative")
    return RationalSeries([Fraction(0)] * m + list(a.coefficients))


def ps_recip_unit(a: RationalSeries) -> RationalSeries:
    """Multiplicative inverse of a series with constant coefficient 1."""
    if a[0] != 1:
        raise PreconditionError(f"constant coefficient must be 1, got {a[0]}")
    inv = [Fraction(1)]
    for k in range(1, a.order + 1):
        inv.append(-sum((a[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0)))
    return RationalSeries(inv)


def ps_derive(a: RationalSeries) -> RationalSeries:
    if a.order < 1:
        raise PreconditionError("differentiation needs order >= 1")
    return RationalSeries((k + 1) * a[k + 1] for k in range(a.order))


def polynomial(coeffs: Sequence[Fraction | int], K: int) -> RationalSeries:
    """A polynomial padded with exact zeros to order K."""
    coeffs = list(coeffs) + [0] * (K + 1 - len(coeffs))
    return RationalSeries(coeffs[: K + 1])


def numerator_eq11(K: int = DEFAULT_ORDER) -> RationalSeries:
    """Series of ``(3 - x) e^{2x} - 4 x e^x - x - 3`` to order K."""
    if K < 5:
        raise PreconditionError("order must be at least 5 to reach the leading term")
    first = ps_mul(polynomial([3, -1], K), ps_exp_scaled(2, K))
    second = ps_scale(ps_shift(ps_exp_scaled(1, K - 1), 1), 4)
    return first - second - polynomial([3, 1], K)


def u_series(K: int = DEFAULT_ORDER) -> RationalSeries:
    """Series of the Bose kernel ``x / (e^x - 1)`` (Bernoulli numbers B_k / k!)."""
    if K < 0:
        raise PreconditionError("order must be nonnegative")
    # (e^x - 1) / x = sum x^k / (k+1)!
    return ps_recip_unit(RationalSeries(Fraction(1, factorial(k + 1)) for k in range(K + 1)))


def u_derivative(n: int, K: int = DEFAULT_ORDER) -> RationalSeries:
    """n-th derivative of the Bose kernel series, known to order K - n."""
    s = u_series(K)
    for _ in range(n):
        s = ps_derive(s)
    return s


def fprime_limit_at_zero() -> Fraction:
    """``lim_{x -> 0} f'(x)`` where ``f = u'``; equals the constant term of u''."""
    return u_derivative(2, 4)[0]


def normalized_bracket(series: RationalSeries) -> tuple[Fraction, int, list[Fraction]]:
    """Write a series as ``lead * x**m * (1 + b_1 x + b_2 x^2 + ...)``.

    Returns ``(lead, m, [1, b_1, b_2, ...])``.
    """
    m = next((k for k, c in enumerate(series) if c != 0), None)
    if m is None:
        raise PreconditionError("series vanishes to its truncation order")
    lead = series[m]
    return lead, m, [c / lead for c in series.coefficients[m:]]
