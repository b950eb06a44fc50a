"""Closed-form bounds for the Mathieu series and certified comparison
against direct-sum enclosures."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .enclosure import Enclosure
from .errors import DomainError
from .series import SeriesParams, eval_mathieu_direct

HOLDS, FAILS, UNDECIDED = "holds", "fails", "undecided"
STRICT_UPPER, STRICT_LOWER = "strict-upper", "strict-lower"


def _positive(h: float) -> None:
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"bound needs h > 0, got {h!r}")


def upper_half_inverse(h: float) -> float:
    """F(h) < 1/(2h)."""
    _positive(h)
    return 1.0 / (2.0 * h)


def lower_bound(h: float) -> float:
    """F(h) > 1/(2h) - 1/(6h^2)."""
    _positive(h)
    return 1.0 / (2.0 * h) - 1.0 / (6.0 * h * h)


def schroder_refined(h: float) -> float:
    """1/(1+h)^2 + 2/(4+h)^2 + 1/(2(4+h)), stated for 0 <= h < 2."""
    if not 0 <= h < 2:
        raise DomainError(f"refined bound is stated for 0 <= h < 2, got {h!r}")
    return 1.0 / (1.0 + h) ** 2 + 2.0 / (4.0 + h) ** 2 + 1.0 / (2.0 * (4.0 + h))


def conjecture_as_printed(h: float) -> float:
    """Right-hand side 1/(2h) of ``sum 2n/(n^2+h)^2 < 1/(2h)`` as typeset.

    Mathieu's conjecture proper has 1/h here; the typeset form is false
    for moderate h.
    """
    _positive(h)
    return 1.0 / (2.0 * h)


def conjecture_intended(h: float) -> float:
    """Right-hand side 1/h of ``sum 2n/(n^2+h)^2 < 1/h``."""
    _positive(h)
    return 1.0 / h


# bound id -> (bound function, relation, multiplier applied to F)
BOUNDS = {
    "eq2": (upper_half_inverse, STRICT_UPPER, 1.0),
    "eq3": (schroder_refined, STRICT_UPPER, 1.0),
    "eq13": (lower_bound, STRICT_LOWER, 1.0),
    "eq21": (conjecture_as_printed, STRICT_UPPER, 2.0),
    "eq21-intended": (conjecture_intended, STRICT_UPPER, 2.0),
}


@dataclass(frozen=True)
class BoundCheck:
    h: float
    which: str
    bound_value: float
    series_enclosure: Enclosure
    relation: str
    status: str
    tol: float

    @property
    def margin(self) -> float:
        """Distance from the enclosure to the bound; positive when the bound holds."""
        if self.relation == STRICT_UPPER:
            return self.bound_value - self.series_enclosure.hi
        return self.series_enclosure.lo - self.bound_value


def classify(enc: Enclosure, bound: float, relation: str) -> str:
    if relation == STRICT_UPPER:
        if enc.hi < bound:
            return HOLDS
        if enc.lo > bound:
            return FAILS
        return UNDECIDED
    if enc.lo > bound:
        return HOLDS
    if enc.hi < bound:
        return FAILS
    return UNDECIDED


def check_bound(h: float, which: str = "eq2", tol: float = 1e-10, retries: int = 3) -> BoundCheck:
    """Compare a bound with the certified direct-sum enclosure of F(h).

    An undecided comparison is retried with the tolerance divided by 10, at
    most ``retries`` times.
    """
    try:
        fn, relation, factor = BOUNDS[which]
    except KeyError:
        raise ValueError(f"unknown bound {which!r}; choose from {sorted(BOUNDS)}") from None
    bound = fn(h)
    for attempt in range(retries + 1):
        enc = eval_mathieu_direct(SeriesParams(h, tol=tol)).enclosure.scale(factor)
        status = classify(enc, bound, relation)
        if status != UNDECIDED or attempt == retries:
            break
        tol /= 10
    return BoundCheck(h, which, bound, enc, relation, status, tol)
