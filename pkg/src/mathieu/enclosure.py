from __future__ import annotations

from dataclasses import dataclass

EPS = 2.220446049250313e-16

METHODS = ("direct", "integral", "integral-parts", "expansion")


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] certified to contain a true value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def around(cls, center: float, radius: float) -> Enclosure:
        return cls(center - radius, center + radius)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: Enclosure) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def separation(self, other: Enclosure) -> float:
        """Gap between two disjoint enclosures; zero or negative if they meet."""
        return max(self.lo - other.hi, other.lo - self.hi)

    def __add__(self, other: Enclosure | float) -> Enclosure:
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + other, self.hi + other)

    __radd__ = __add__

    def scale(self, c: float) -> Enclosure:
        a, b = self.lo * c, self.hi * c
        return Enclosure(min(a, b), max(a, b))

    def widen(self, r: float) -> Enclosure:
        return Enclosure(self.lo - r, self.hi + r)


@dataclass(frozen=True)
class SumResult:
    """Value of a series or integral with its certified enclosure."""

    value: float
    enclosure: Enclosure
    terms_used: int
    method: str

    @classmethod
    def from_enclosure(cls, enc: Enclosure, terms_used: int, method: str) -> SumResult:
        if method not in METHODS:
            raise ValueError(f"unknown method tag {method!r}")
        mid = enc.mid
        # midpoint of a tiny interval can round just outside it
        mid = min(max(mid, enc.lo), enc.hi)
        return cls(mid, enc, terms_used, method)

    @property
    def half_width(self) -> float:
        return 0.5 * self.enclosure.width()
