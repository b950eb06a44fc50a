"""Certified direct summation of Mathieu-type series.

Three series share the summand ``g(n) = n / (n**2 + h)**mu``:

* ``F(h)``, the Mathieu series (``mu = 2``);
* ``S(h)``, its alternating counterpart;
* ``F_mu(h)``, the generalized series for real ``mu > 1``.

Every evaluator returns a :class:`~mathieu.enclosure.SumResult` whose
enclosure bounds the truncation error exactly (integral test, or the
alternating-series remainder) and the floating-point error by a stated
inflation term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain
from typing import Callable, Iterator

import numpy as np

from .enclosure import EPS, Enclosure, SumResult
from .errors import DomainError, PreconditionError, ToleranceUnreachable

TERM_CAP = 10**8
DEFAULT_TOL = 1e-10
_CHUNK = 1 << 18


@dataclass(frozen=True)
class SeriesParams:
    h: float
    mu: float = 2.0
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not (math.isfinite(self.h) and self.h >= 0):
            raise DomainError(f"h must be a finite nonnegative number, got {self.h!r}")
        if not self.mu > 1:
            raise DomainError(f"mu must exceed 1 (series diverges), got {self.mu!r}")
        if not 0 < self.tol <= 1e-2:
            raise ValueError(f"tol must lie in (0, 1e-2], got {self.tol!r}")


def _rounding_factor(mu: float) -> float:
    # per-term relative error grows with the exponent when pow() is used
    return max(16.0, 2.0 * mu + 4.0)


def monotone_threshold(h: float, mu: float = 2.0) -> int:
    """Smallest integer N >= 1 past which the summand is nonincreasing.

    ``d/dx x (x**2 + h)**-mu`` changes sign at ``x = sqrt(h / (2 mu - 1))``.
    """
    return max(1, math.ceil(math.sqrt(h / (2.0 * mu - 1.0))))


def summand(n: np.ndarray | float, h: float, mu: float = 2.0):
    n = np.asarray(n, dtype=float)
    base = n * n + h
    if mu == 2.0:
        return n / (base * base)
    return n * base ** (-mu)


def _tail_integral(x: float, h: float, mu: float) -> float:
    """``integral_x^inf t (t^2 + h)^-mu dt``."""
    return (x * x + h) ** (1.0 - mu) / (2.0 * (mu - 1.0))


def _bracket_width(N: int, h: float, mu: float) -> float:
    # a(N) - a(N+1) without cancellation
    base = N * N + h
    ratio = math.log1p((2 * N + 1) / base)
    return _tail_integral(N, h, mu) * -math.expm1(-(mu - 1.0) * ratio)


def tail_bracket(N: int, params: SeriesParams) -> Enclosure:
    """Integral-test bracket for ``sum_{n > N} n / (n^2 + h)^mu``.

    Valid only when the summand is nonincreasing on ``[N, inf)``.
    """
    h, mu = params.h, params.mu
    if N < 1 or N < monotone_threshold(h, mu):
        raise PreconditionError(
            f"N={N} is below the monotonicity threshold "
            f"{monotone_threshold(h, mu)} for h={h}, mu={mu}"
        )
    return Enclosure(_tail_integral(N + 1, h, mu), _tail_integral(N, h, mu))


def _first_satisfying(start: int, pred: Callable[[int], bool], cap: int) -> int:
    """Least n >= start with pred(n), assuming pred is monotone in n."""
    if pred(start):
        return start
    lo, step = start, 1
    hi = start + step
    while not pred(hi):
        lo = hi
        step *= 2
        hi = start + step
        if hi > 4 * cap:
            return hi
    while hi - lo > 1:
        m = (lo + hi) // 2
        if pred(m):
            hi = m
        else:
            lo = m
    return hi


def _chunks(n_first: int, n_last: int, h: float, mu: float) -> Iterator[np.ndarray]:
    for a in range(n_first, n_last + 1, _CHUNK):
        b = min(a + _CHUNK, n_last + 1)
        yield summand(np.arange(a, b, dtype=float), h, mu)


def _partial_sums(N: int, h: float, mu: float, signed: bool) -> tuple[float, float]:
    """Correctly rounded partial sum of N terms and the sum of their magnitudes."""
    if N == 0:
        return 0.0, 0.0
    if signed:
        def signed_chunks():
            offset = 0
            for c in _chunks(1, N, h, mu):
                s = c.copy()
                # index 0 of the chunk is term offset+1
                s[(offset % 2) ^ 1 :: 2] *= -1.0
                offset += len(c)
                yield s.tolist()

        total = math.fsum(chain.from_iterable(signed_chunks()))
    else:
        total = math.fsum(chain.from_iterable(c.tolist() for c in _chunks(1, N, h, mu)))
        return total, total
    magnitude = math.fsum(chain.from_iterable(c.tolist() for c in _chunks(1, N, h, mu)))
    return total, magnitude


def _check_cap(N: int, term_cap: int, what: str) -> None:
    if N > term_cap:
        raise ToleranceUnreachable(
            f"{what} needs more than {term_cap} terms; tol too small for double precision"
        )


def direct_enclosure(N: int, params: SeriesParams) -> tuple[Enclosure, float]:
    """Enclosure of the (generalized) Mathieu series from N terms.

    Returns the enclosure and the floating-point inflation that was applied.
    """
    h, mu = params.h, params.mu
    tail = tail_bracket(N, params)
    partial, magnitude = _partial_sums(N, h, mu, signed=False)
    slack = _rounding_factor(mu) * EPS * (abs(partial) + magnitude) + 4 * EPS * tail.hi
    return Enclosure(partial + tail.lo - slack, partial + tail.hi + slack), slack


def _eval_positive(params: SeriesParams, term_cap: int, what: str) -> SumResult:
    h, mu, tol = params.h, params.mu, params.tol
    start = monotone_threshold(h, mu)
    N = _first_satisfying(start, lambda n: _bracket_width(n, h, mu) <= tol, term_cap)
    _check_cap(N, term_cap, what)
    enc, slack = direct_enclosure(N, params)
    if enc.width() > 2 * tol:
        # more terms only grow the rounding term
        raise ToleranceUnreachable(
            f"{what}: rounding slack {slack:.3g} alone exceeds tol={tol:g}"
        )
    return SumResult.from_enclosure(enc, N, "direct")


def eval_mathieu_direct(params: SeriesParams, term_cap: int = TERM_CAP) -> SumResult:
    """F(h) = sum n / (n^2 + h)^2 by partial sum plus integral-test tail.

    ``params.mu`` is ignored.
    """
    p = SeriesParams(params.h, 2.0, params.tol)
    return _eval_positive(p, term_cap, "F(h)")


def eval_generalized(params: SeriesParams, term_cap: int = TERM_CAP) -> SumResult:
    """sum n / (n^2 + h)^mu for mu > 1."""
    return _eval_positive(params, term_cap, f"F_mu(h) with mu={params.mu}")


def alternating_enclosure(N: int, params: SeriesParams) -> tuple[Enclosure, float]:
    """Enclosure of S(h) from the first N terms.

    The remainder after N terms has sign (-1)**N and magnitude between
    g(N+1) - g(N+2) and g(N+1), provided g decreases from index N+1 on.
    """
    h = params.h
    if N + 1 < monotone_threshold(h, 2.0) or N < 0:
        raise PreconditionError(
            f"terms must decrease from index N+1={N + 1}; threshold is "
            f"{monotone_threshold(h, 2.0)}"
        )
    partial, magnitude = _partial_sums(N, h, 2.0, signed=True)
    g1, g2 = (float(v) for v in summand(np.array([N + 1.0, N + 2.0]), h))
    sign = -1.0 if N % 2 else 1.0
    r_small, r_big = sign * (g1 - g2), sign * g1
    slack = 16 * EPS * (abs(partial) + magnitude) + 4 * EPS * g1
    lo, hi = min(r_small, r_big), max(r_small, r_big)
    return Enclosure(partial + lo - slack, partial + hi + slack), slack


def eval_alternating(params: SeriesParams, term_cap: int = TERM_CAP) -> SumResult:
    """S(h) = sum (-1)^(n-1) n / (n^2 + h)^2.  ``params.mu`` is ignored."""
    h, tol = params.h, params.tol
    start = max(0, monotone_threshold(h, 2.0) - 1)
    N = _first_satisfying(start, lambda n: float(summand(n + 2, h)) <= tol, term_cap)
    _check_cap(N, term_cap, "S(h)")
    enc, slack = alternating_enclosure(N, params)
    if enc.width() > 2 * tol:
        raise ToleranceUnreachable(
            f"S(h): rounding slack {slack:.3g} alone exceeds tol={tol:g}"
        )
    return SumResult.from_enclosure(enc, N, "direct")


def alternating_partial_sum(N: int, h: float) -> float:
    """Plain partial sum of the first N terms of S(h)."""
    return _partial_sums(N, h, 2.0, signed=True)[0]
