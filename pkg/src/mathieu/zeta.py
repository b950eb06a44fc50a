"""Riemann zeta and Dirichlet eta at integers, and the expansion of the
Mathieu series in powers of h.

Integrating the Bose kernel term by term against the Taylor series of
``sin(sqrt(h) x)`` and using ``int_0^inf x^{s-1}/(e^x-1) dx = Gamma(s) zeta(s)``
gives

    F(h) = sum_{m>=1} (-1)^(m-1) m zeta(2m+1) h^(m-1),      0 <= h < 1,

and the same with eta in place of zeta for the alternating series.  The
coefficients ``(-1)^(m+1) zeta(2m) / (2m-1)!`` that drop the Gamma factor
are available from :func:`expansion_coeff` for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain

import numpy as np

from .enclosure import EPS, Enclosure, SumResult
from .errors import DomainError, ToleranceUnreachable
from .series import TERM_CAP

ZETA_TOL = 5e-13
ZETA_FLOOR = 1e-14
EXPANSION_TERM_CAP = 100_000


@dataclass(frozen=True)
class ZetaValue:
    s: int
    enclosure: Enclosure

    @property
    def value(self) -> float:
        return self.enclosure.mid


@dataclass(frozen=True)
class ExpansionCoeff:
    """Coefficient of ``h^(m-1)`` in the expansion of F(h).

    ``as_printed`` is ``(-1)^(m+1) zeta(2m)/(2m-1)!`` as it appears in the
    expansion statement; ``as_printed_halved`` is the same divided by 2, which
    is what the intermediate ``2F(h) = zeta(2) - ...`` line yields.
    """

    m: int
    corrected: float
    corrected_enclosure: Enclosure
    as_printed: float
    as_printed_halved: float


def _zeta_bracket_width(N: int, s: int) -> float:
    return N ** (1.0 - s) / (s - 1) * -math.expm1(-(s - 1) * math.log1p(1.0 / N))


@lru_cache(maxsize=4096)
def zeta_int(s: int, tol: float = ZETA_TOL) -> ZetaValue:
    """zeta(s) for integer s >= 2: partial sum plus integral-test tail."""
    if int(s) != s or s < 2:
        raise DomainError(f"zeta_int needs an integer s >= 2, got {s!r}")
    s = int(s)
    N = 1
    while _zeta_bracket_width(N, s) > tol:
        N *= 2
    lo = N // 2
    while N - lo > 1:
        mid = (lo + N) // 2
        if _zeta_bracket_width(mid, s) <= tol:
            N = mid
        else:
            lo = mid
    if N > TERM_CAP:
        raise ToleranceUnreachable(f"zeta({s}) at tol={tol:g} needs {N} terms")
    chunks = (
        (np.arange(a, min(a + (1 << 18), N + 1), dtype=float) ** (-s)).tolist()
        for a in range(1, N + 1, 1 << 18)
    )
    partial = math.fsum(chain.from_iterable(chunks))
    tail_lo = (N + 1.0) ** (1.0 - s) / (s - 1)
    tail_hi = float(N) ** (1.0 - s) / (s - 1)
    slack = 16 * EPS * partial + 4 * EPS * tail_hi
    enc = Enclosure(partial + tail_lo - slack, partial + tail_hi + slack)
    if enc.width() > 2 * tol:
        raise ToleranceUnreachable(f"zeta({s}): rounding slack exceeds tol={tol:g}")
    return ZetaValue(s, enc)


def eta_int(s: int, tol: float = ZETA_TOL) -> ZetaValue:
    """Dirichlet eta(s) = (1 - 2^(1-s)) zeta(s)."""
    z = zeta_int(s, tol)
    factor = -math.expm1((1 - s) * math.log(2.0))
    enc = z.enclosure.scale(factor).widen(2 * EPS * z.enclosure.hi)
    return ZetaValue(z.s, enc)


def expansion_coeff(m: int) -> ExpansionCoeff:
    if m < 1:
        raise DomainError("term index m must be positive")
    sign = 1.0 if m % 2 else -1.0
    z = zeta_int(2 * m + 1).enclosure.scale(sign * m)
    printed = sign * zeta_int(2 * m).value / math.factorial(2 * m - 1)
    return ExpansionCoeff(m, z.mid, z, printed, printed / 2)


def _expansion(h: float, tol: float, zeta_like, label: str) -> SumResult:
    if not (math.isfinite(h) and 0 <= h < 1):
        raise DomainError(
            f"the expansion in powers of h converges only for 0 <= h < 1 "
            f"(poles at h = -n^2); got h={h!r}"
        )
    # term magnitudes m zeta(2m+1) h^(m-1) decrease once m >= h / (1 - h)
    decreasing_from = math.ceil(h / (1.0 - h))
    # coefficient uncertainties add up to about width(zeta) / (1 - h)^2
    ztol = min(ZETA_TOL, max(ZETA_FLOOR, 0.25 * tol * (1.0 - h) ** 2))
    parts: list[Enclosure] = []
    m = 1
    while True:
        sign = 1.0 if m % 2 else -1.0
        parts.append(zeta_like(2 * m + 1, ztol).enclosure.scale(sign * m * h ** (m - 1)))
        nxt = m + 1
        omitted = nxt * zeta_like(2 * nxt + 1, ztol).enclosure.hi * h**m
        if nxt >= decreasing_from and omitted <= tol:
            break
        m = nxt
        if m > EXPANSION_TERM_CAP:
            raise ToleranceUnreachable(
                f"{label} at h={h} needs more than {EXPANSION_TERM_CAP} terms for tol={tol:g}"
            )
    lo = math.fsum(p.lo for p in parts)
    hi = math.fsum(p.hi for p in parts)
    slack = 16 * EPS * math.fsum(max(abs(p.lo), abs(p.hi)) for p in parts)
    # the remainder carries the sign of the first omitted term, (-1)^m
    if m % 2:
        lo -= omitted
    else:
        hi += omitted
    enc = Enclosure(lo - slack, hi + slack)
    if enc.width() > 2 * tol:
        raise ToleranceUnreachable(
            f"{label} at h={h}: zeta uncertainty amplified to {enc.width():.3g} > 2*tol"
        )
    return SumResult.from_enclosure(enc, m, "expansion")


def eval_expansion(h: float, tol: float = 1e-10) -> SumResult:
    """F(h) = sum (-1)^(m-1) m zeta(2m+1) h^(m-1), with a certified remainder."""
    return _expansion(h, tol, zeta_int, "expansion of F")


def eval_expansion_alternating(h: float, tol: float = 1e-10) -> SumResult:
    """S(h) = sum (-1)^(m-1) m eta(2m+1) h^(m-1)."""
    return _expansion(h, tol, eta_int, "expansion of S")
