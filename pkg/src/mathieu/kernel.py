"""Bose kernel ``x / (e^x - 1)``, its derivative chain and the two integral
representations of the Mathieu series.

Closed forms are evaluated in terms of ``t = e^{-x}`` so that nothing
overflows on the integration range; near the origin they lose digits to
cancellation, so a Taylor branch with exact coefficients takes over there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre

from .enclosure import EPS, Enclosure, SumResult
from .errors import DomainError, NonConvergence, PreconditionError
from .powser import u_derivative, u_series

KERNEL_CUTOFF = 1e-2
DERIVATIVE_CUTOFF = 1.0
_SERIES_ORDER = 28

ArrayLike = float | np.ndarray


@lru_cache(maxsize=None)
def _taylor(n: int) -> np.ndarray:
    """Float coefficients of the n-th derivative of the kernel, highest first."""
    s = u_series(_SERIES_ORDER) if n == 0 else u_derivative(n, _SERIES_ORDER)
    return np.array(s.as_floats()[::-1])


def _branch(x: ArrayLike, n: int, cutoff: float, closed: Callable[[np.ndarray], np.ndarray]):
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError("kernel functions are defined for x >= 0")
    small = xa < cutoff
    out = np.empty_like(xa)
    if np.any(small):
        out[small] = np.polyval(_taylor(n), xa[small])
    if np.any(~small):
        out[~small] = closed(xa[~small])
    return out if out.ndim else float(out)


def bose_kernel(x: ArrayLike) -> ArrayLike:
    """``x / (e^x - 1)``, equal to 1 at the origin."""
    return _branch(x, 0, KERNEL_CUTOFF, lambda y: y / np.expm1(y))


def _f(y):
    t, d = np.exp(-y), -np.expm1(-y)
    return t / d - y * t / (d * d)


def _fprime(y):
    t, d = np.exp(-y), -np.expm1(-y)
    return 2 * y * t / d**3 - (y + 2) * t / d**2


def _fsecond(y):
    t, d = np.exp(-y), -np.expm1(-y)
    return ((3 - y) * t - 4 * y * t * t - (y + 3) * t**3) / d**4


def f_closed(x: ArrayLike) -> ArrayLike:
    """First derivative of the kernel, ``1/(e^x-1) - x e^x/(e^x-1)^2``."""
    return _branch(x, 1, DERIVATIVE_CUTOFF, _f)


def fprime_closed(x: ArrayLike) -> ArrayLike:
    """Second derivative of the kernel, ``2x e^{2x}/(e^x-1)^3 - (x+2) e^x/(e^x-1)^2``."""
    return _branch(x, 2, DERIVATIVE_CUTOFF, _fprime)


def fsecond_closed(x: ArrayLike) -> ArrayLike:
    """Third derivative of the kernel.

    Equals ``e^x [(3-x) e^{2x} - 4x e^x - x - 3] / (e^x-1)^4``; negative for x > 0.
    """
    return _branch(x, 3, DERIVATIVE_CUTOFF, _fsecond)


# Formulas exactly as typeset in the source document, kept so the discrepancy
# with the derivative chain can be demonstrated. Moderate x only.

def fprime_as_printed(x: ArrayLike) -> ArrayLike:
    e = np.exp(x)
    return 2 * x * e / (e - 1) ** 3 - (x * e + 2 * e) / (e - 1) ** 2


def fsecond_as_printed(x: ArrayLike) -> ArrayLike:
    e = np.exp(x)
    return (
        -6 * x * e**3 / (e - 1) ** 4
        - (6 * x * e**2 + 6 * e**2) / (e - 1) ** 3
        - (x * e + 3 * e) / (e - 1) ** 2
    )


def fsecond_rational_as_printed(x: ArrayLike) -> ArrayLike:
    e = np.exp(x)
    return ((3 - x) * e**2 - 4 * x * e - x - 3) / (e - 1) ** 4


@dataclass(frozen=True)
class QuadConfig:
    """Panel Gauss-Legendre rule on ``[0, truncation]``.

    Panels have length ``min(pi / frequency, max_panel)`` at the first level
    and are halved at each further refinement level.  ``tail_bound`` bounds
    the integral over ``[truncation, inf)``; the default covers integrands
    dominated by ``4 (x + 3) e^{-x}``.
    """

    truncation: float = 50.0
    frequency: float = 0.0
    max_panel: float = 2.0
    nodes_per_panel: int = 20
    refinement_levels: int = 3
    tol: float = 1e-12
    tail_bound: float | None = None

    def __post_init__(self) -> None:
        if self.truncation <= 0 or self.max_panel <= 0:
            raise ValueError("truncation and max_panel must be positive")
        if self.nodes_per_panel < 1 or self.refinement_levels < 1:
            raise ValueError("nodes_per_panel and refinement_levels must be positive")
        if self.frequency < 0:
            raise ValueError("frequency must be nonnegative")

    @property
    def panel_length(self) -> float:
        if self.frequency == 0:
            return self.max_panel
        return min(math.pi / self.frequency, self.max_panel)

    def truncation_error(self) -> float:
        if self.tail_bound is not None:
            return self.tail_bound
        X = self.truncation
        return 4.0 * (X + 4.0) * math.exp(-X)


@lru_cache(maxsize=32)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return legendre.leggauss(n)


def _panel_rule(fn, X: float, L: float, n: int) -> tuple[float, float, int]:
    panels = max(1, math.ceil(X / L))
    edges = np.linspace(0.0, X, panels + 1)
    nodes, weights = _gauss(n)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    xs = (mids[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * weights[None, :]).ravel()
    vals = ws * np.asarray(fn(xs), dtype=float)
    return math.fsum(vals.tolist()), math.fsum(np.abs(vals).tolist()), xs.size


def quad_semiinfinite(integrand: Callable[[np.ndarray], np.ndarray], cfg: QuadConfig) -> SumResult:
    """Integrate a vectorized, exponentially decaying integrand over ``[0, inf)``.

    The error estimate is the change between the last two refinement levels;
    the enclosure is the finest value widened by twice that change, rounding
    slack and the truncation bound.
    """
    L = cfg.panel_length
    prev, _, _ = _panel_rule(integrand, cfg.truncation, L, cfg.nodes_per_panel)
    diff = math.inf
    for _ in range(cfg.refinement_levels):
        L /= 2
        value, magnitude, evals = _panel_rule(integrand, cfg.truncation, L, cfg.nodes_per_panel)
        diff = abs(value - prev)
        prev = value
        if diff <= cfg.tol:
            break
    if diff > 1e6 * cfg.tol:
        raise NonConvergence(f"refinement levels disagree by {diff:.3g} (tol {cfg.tol:g})")
    radius = 2 * diff + 16 * EPS * magnitude + cfg.truncation_error()
    return SumResult.from_enclosure(Enclosure.around(value, radius), evals, "integral")


def _retag(res: SumResult, enc: Enclosure, method: str) -> SumResult:
    return SumResult.from_enclosure(enc, res.terms_used, method)


def _require_positive(h: float) -> None:
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"the integral representations need h > 0, got {h!r}")


def integral_F(h: float, tol: float = 1e-10) -> SumResult:
    """F(h) from ``2 sqrt(h) F(h) = int_0^inf x/(e^x-1) sin(sqrt(h) x) dx``."""
    _require_positive(h)
    w = math.sqrt(h)
    scale = 1.0 / (2.0 * w)
    cfg = QuadConfig(frequency=w, tol=tol / scale)
    res = quad_semiinfinite(lambda x: bose_kernel(x) * np.sin(w * x), cfg)
    return _retag(res, res.enclosure.scale(scale), "integral")


def _fermi_kernel(x):
    # x / (e^x + 1); no cancellation anywhere
    t = np.exp(-x)
    return x * t / (1.0 + t)


def integral_S(h: float, tol: float = 1e-10) -> SumResult:
    """S(h) from the alternating kernel ``x / (e^x + 1)`` in place of the Bose kernel."""
    _require_positive(h)
    w = math.sqrt(h)
    scale = 1.0 / (2.0 * w)
    cfg = QuadConfig(frequency=w, tol=tol / scale)
    res = quad_semiinfinite(lambda x: _fermi_kernel(x) * np.sin(w * x), cfg)
    return _retag(res, res.enclosure.scale(scale), "integral")


def integral_F_parts(h: float, tol: float = 1e-10) -> SumResult:
    """F(h) = 1/(2h) + (1/(2h^2)) int_0^inf f''(x) (1 - cos(sqrt(h) x)) dx."""
    _require_positive(h)
    w = math.sqrt(h)
    scale = 1.0 / (2.0 * h * h)
    cfg = QuadConfig(frequency=w, tol=tol / scale)

    def integrand(x):
        s = np.sin(0.5 * w * x)
        return fsecond_closed(x) * (2.0 * s * s)

    res = quad_semiinfinite(integrand, cfg)
    enc = res.enclosure.scale(scale) + 1.0 / (2.0 * h)
    enc = enc.widen(2 * EPS / h)
    return _retag(res, enc, "integral-parts")


def _central(fn, x: float, order: int, s: float) -> float:
    if order == 1:
        return (fn(x + s) - fn(x - s)) / (2 * s)
    return (fn(x + s) - 2 * fn(x) + fn(x - s)) / (s * s)


def finite_difference_estimate(fn, x: float, order: int = 1, step: float | None = None) -> tuple[float, float]:
    """Richardson-extrapolated central difference and a crude error estimate."""
    if order not in (1, 2):
        raise PreconditionError("order must be 1 or 2")
    if step is None:
        step = 1e-3 if order == 1 else 1e-2
    if step <= 0 or x - order * step <= 0:
        raise PreconditionError(f"need step > 0 and x - order*step > 0 (x={x}, step={step})")
    coarse = _central(fn, x, order, step)
    fine = _central(fn, x, order, step / 2)
    value = (4 * fine - coarse) / 3
    rounding = 64 * EPS * max(abs(fn(x)), 1.0) / step**order
    return value, abs(value - fine) + rounding


def finite_difference(fn, x: float, order: int = 1, step: float | None = None) -> float:
    return finite_difference_estimate(fn, x, order, step)[0]


def finite_difference_enclosure(fn, x: float, order: int = 1, step: float | None = None) -> Enclosure:
    value, err = finite_difference_estimate(fn, x, order, step)
    return Enclosure.around(value, err)
