"""Registry of the assertions made about the Mathieu series and the
recomputation that adjudicates each one.

Nothing here stores an expected outcome: every verdict is derived at run
time from enclosure comparisons or exact rational identities.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bounds, kernel, powser
from .enclosure import Enclosure, SumResult
from .series import SeriesParams, eval_alternating, eval_mathieu_direct
from .zeta import eta_int, eval_expansion, expansion_coeff, zeta_int

VERIFIED = "verified"
REFUTED = "refuted-as-printed"
CORRECTED = "verified-with-correction"
INCONCLUSIVE = "inconclusive"

# the printed Taylor bracket: -x^5/10 [1 + x + 23/126 x^2 + 1/14 x^3 + ...]
PRINTED_LEAD = Fraction(-1, 10)
PRINTED_BRACKET = (Fraction(1), Fraction(1), Fraction(23, 126), Fraction(1, 14))
PRINTED_RANGE_TOP = 0.9015


@dataclass(frozen=True)
class Evidence:
    description: str
    value: float | str | tuple[float, float] | bool | int

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, tuple):
            v = list(v)
        return {"description": self.description, "value": v}


@dataclass
class ClaimVerdict:
    id: str
    paper_ref: str
    claim: str
    status: str
    evidence: list[Evidence] = field(default_factory=list)
    subclaims: list[ClaimVerdict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "claim": self.claim,
            "status": self.status,
            "evidence": [e.to_dict() for e in self.evidence],
            "subclaims": [s.to_dict() for s in self.subclaims],
        }


@dataclass(frozen=True)
class ClaimsConfig:
    tol: float = 1e-10
    workers: int = 1
    bound_grid_points: int = 60
    refined_grid_points: int = 40
    alternating_grid_points: int = 201
    alternating_h_max: float = 50.0


def grid_map(fn: Callable, xs: Sequence[float], workers: int = 1) -> list:
    """Evaluate fn over xs, concurrently if asked; results stay in input order."""
    if workers <= 1:
        return [fn(x) for x in xs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, xs))


def _enc(e: Enclosure) -> tuple[float, float]:
    return (e.lo, e.hi)


def _separation_ratio(a: Enclosure, b: Enclosure) -> float:
    widest = max(a.width(), b.width())
    sep = a.separation(b)
    if sep <= 0:
        return 0.0
    return math.inf if widest == 0 else sep / widest


def _grid_status(statuses: Iterable[str]) -> str:
    statuses = list(statuses)
    if any(s == bounds.FAILS for s in statuses):
        return REFUTED
    if any(s == bounds.UNDECIDED for s in statuses):
        return INCONCLUSIVE
    return VERIFIED


def _bound_claim(cid, ref, text, which, hs, cfg) -> ClaimVerdict:
    checks = grid_map(lambda h: bounds.check_bound(float(h), which, cfg.tol), hs, cfg.workers)
    worst = min(checks, key=lambda c: c.margin)
    status = _grid_status(c.status for c in checks)
    ev = [
        Evidence(f"grid points h in [{hs[0]:.6g}, {hs[-1]:.6g}]", len(checks)),
        Evidence("count holds / fails / undecided", "%d / %d / %d" % tuple(
            sum(c.status == s for c in checks) for s in (bounds.HOLDS, bounds.FAILS, bounds.UNDECIDED))),
        Evidence("smallest certified margin between enclosure and bound", worst.margin),
        Evidence("h at smallest margin", worst.h),
        Evidence(f"bounds.check_bound({worst.h:.17g}, {which!r}) enclosure", _enc(worst.series_enclosure)),
        Evidence("bound value there", worst.bound_value),
    ]
    return ClaimVerdict(cid, ref, text, status, ev)


def _log_grid(cfg: ClaimsConfig) -> list[float]:
    return [float(h) for h in np.logspace(-2, 4, cfg.bound_grid_points)]


def claim_c1(cfg: ClaimsConfig) -> ClaimVerdict:
    v = _bound_claim(
        "C1", "Eq. (2) and Eq. (21)", "F(h) < 1/(2h) for all h > 0 (Schroder; Mathieu's conjecture)",
        "eq2", _log_grid(cfg), cfg,
    )
    intended = _bound_claim(
        "C1.intended", "Eq. (21), read as sum 2n/(n^2+h)^2 < 1/h",
        "Mathieu's conjecture with right-hand side 1/h, equivalent to F(h) < 1/(2h)",
        "eq21-intended", _log_grid(cfg), cfg,
    )
    check = bounds.check_bound(1.0, "eq21", cfg.tol)
    literal_status = {bounds.FAILS: REFUTED, bounds.HOLDS: VERIFIED}.get(check.status, INCONCLUSIVE)
    literal = ClaimVerdict(
        "C1.as-printed", "Eq. (21) as typeset",
        "sum 2n/(n^2+h)^2 < 1/(2h) for all h > 0", literal_status,
        [
            Evidence("bounds.check_bound(1, 'eq21') enclosure of 2F(1)", _enc(check.series_enclosure)),
            Evidence("typeset right-hand side 1/(2h) at h=1", check.bound_value),
            Evidence("separation", check.series_enclosure.separation(Enclosure(check.bound_value, check.bound_value))),
        ],
    )
    v.subclaims = [intended, literal]
    return v


def claim_c2(cfg: ClaimsConfig) -> ClaimVerdict:
    hs = [float(h) for h in np.linspace(0.0, 2.0, cfg.refined_grid_points, endpoint=False)]
    return _bound_claim(
        "C2", "Eq. (3)", "F(h) < 1/(1+h)^2 + 2/(4+h)^2 + 1/(2(4+h)) for 0 <= h < 2",
        "eq3", hs, cfg,
    )


def claim_c3(cfg: ClaimsConfig) -> ClaimVerdict:
    return _bound_claim(
        "C3", "Eq. (13) and Eq. (14)", "1/(2h) - 1/(6h^2) < F(h) for all h > 0",
        "eq13", _log_grid(cfg), cfg,
    )


def _pointwise_refutation(cid, ref, text, printed_fns, reference_fn, order, corrected_fn, xs=(1.0, 2.0)):
    ev: list[Evidence] = []
    ratios = []
    corrected_ok = True
    for x in xs:
        fd = kernel.finite_difference_enclosure(reference_fn, x, order)
        ev.append(Evidence(f"finite difference (order {order}) of {reference_fn.__name__} at x={x:g}", _enc(fd)))
        for name, fn in printed_fns:
            val = float(fn(x))
            ratio = _separation_ratio(fd, Enclosure(val, val))
            ratios.append(ratio)
            ev.append(Evidence(f"{name}({x:g})", val))
            ev.append(Evidence(f"separation / width for {name} at x={x:g}", ratio))
        corr = float(corrected_fn(x))
        corrected_ok &= fd.contains(corr)
        ev.append(Evidence(f"{corrected_fn.__name__}({x:g}) inside finite-difference enclosure", fd.contains(corr)))
    if all(r > 0 for r in ratios):
        status = REFUTED
    elif all(r == 0 for r in ratios) and corrected_ok:
        status = VERIFIED
    else:
        status = INCONCLUSIVE
    return ClaimVerdict(cid, ref, text, status, ev)


def claim_c4(cfg: ClaimsConfig) -> ClaimVerdict:
    return _pointwise_refutation(
        "C4", "Eq. (8), second line",
        "f'(x) = 2x e^x/(e^x-1)^3 - (x e^x + 2 e^x)/(e^x-1)^2",
        [("kernel.fprime_as_printed", kernel.fprime_as_printed)],
        kernel.f_closed, 1, kernel.fprime_closed,
    )


def claim_c5(cfg: ClaimsConfig) -> ClaimVerdict:
    return _pointwise_refutation(
        "C5", "Eq. (8), third line, and Eq. (10)",
        "f''(x) = -6x e^{3x}/(e^x-1)^4 - (6x e^{2x}+6e^{2x})/(e^x-1)^3 - (x e^x+3e^x)/(e^x-1)^2 "
        "= ((3-x)e^{2x} - 4x e^x - x - 3)/(e^x-1)^4",
        [
            ("kernel.fsecond_as_printed", kernel.fsecond_as_printed),
            ("kernel.fsecond_rational_as_printed", kernel.fsecond_rational_as_printed),
        ],
        kernel.f_closed, 2, kernel.fsecond_closed,
    )


def claim_c6(cfg: ClaimsConfig) -> ClaimVerdict:
    num = powser.numerator_eq11(powser.DEFAULT_ORDER)
    lead, m, bracket = powser.normalized_bracket(num)
    status = VERIFIED if (lead == PRINTED_LEAD and m == 5) else REFUTED
    ev = [
        Evidence("powser.numerator_eq11(20) coefficients x^0..x^4", ", ".join(str(c) for c in num.coefficients[:5])),
        Evidence("exact leading coefficient (x^5)", str(lead)),
        Evidence("typeset leading coefficient", str(PRINTED_LEAD)),
        Evidence("exact leading coefficient minus typeset", str(lead - PRINTED_LEAD)),
        Evidence("exact bracket 1, x, x^2, x^3 coefficients", ", ".join(str(b) for b in bracket[:4])),
        Evidence("typeset bracket 1, x, x^2, x^3 coefficients", ", ".join(str(b) for b in PRINTED_BRACKET)),
        Evidence("typeset x^2, x^3 bracket terms equal exact ones divided by", str(bracket[2] / PRINTED_BRACKET[2])),
    ]
    negative = all(c < 0 for c in num.coefficients[5:])
    xs = np.linspace(0.0, 40.0, 4001)[1:]
    worst = float(np.max(kernel.fsecond_closed(xs)))
    sign_status = VERIFIED if (negative and worst < 0) else REFUTED
    sign = ClaimVerdict(
        "C6.sign", "Eq. (12)", "f''(x) < 0 for x > 0", sign_status,
        [
            Evidence("all exact numerator coefficients x^5..x^20 negative", negative),
            Evidence("exact x^1 coefficient of f'' from powser.u_derivative(3)", str(powser.u_derivative(3, 8)[1])),
            Evidence("max of kernel.fsecond_closed on 4000 points of (0, 40]", worst),
        ],
    )
    return ClaimVerdict(
        "C6", "Eq. (11)",
        "(3-x)e^{2x} - 4x e^x - x - 3 = -x^5/10 [1 + x + 23/126 x^2 + 1/14 x^3 + ...]",
        status, ev, [sign],
    )


def claim_c7(cfg: ClaimsConfig) -> ClaimVerdict:
    f0 = eval_mathieu_direct(SeriesParams(0.0, tol=cfg.tol)).enclosure
    c1 = expansion_coeff(1)
    printed = Enclosure(c1.as_printed, c1.as_printed)
    halved = Enclosure(c1.as_printed_halved, c1.as_printed_halved)
    r1, r2 = _separation_ratio(f0, printed), _separation_ratio(f0, halved)
    status = REFUTED if (r1 > 0 and r2 > 0) else INCONCLUSIVE
    ev = [
        Evidence("F(0+) = series.eval_mathieu_direct(h=0) enclosure", _enc(f0)),
        Evidence("typeset first term zeta(2) = pi^2/6", c1.as_printed),
        Evidence("first term zeta(2)/2 implied by the 2F(h) = zeta(2) - ... line", c1.as_printed_halved),
        Evidence("separation / width against zeta(2)", r1),
        Evidence("separation / width against zeta(2)/2", r2),
        Evidence("corrected first coefficient zeta(3)", c1.corrected),
    ]
    hs = [0.01, 0.1, 0.25, 0.5, 0.9]
    rows = grid_map(
        lambda h: (h, eval_expansion(h, 1e-8), eval_mathieu_direct(SeriesParams(h, tol=1e-8))),
        hs, cfg.workers,
    )
    sub_ev = []
    ok = True
    for h, e, d in rows:
        overlap = e.enclosure.overlaps(d.enclosure)
        ok &= overlap
        sub_ev.append(Evidence(f"zeta.eval_expansion({h:g}) enclosure", _enc(e.enclosure)))
        sub_ev.append(Evidence(f"series.eval_mathieu_direct({h:g}) enclosure", _enc(d.enclosure)))
        sub_ev.append(Evidence(f"overlap at h={h:g}", overlap))
    corrected = ClaimVerdict(
        "C7.corrected", "Lemma, each integral of x^(2n)/(e^x-1) evaluated as (2n)! zeta(2n+1)",
        "F(h) = sum (-1)^(m-1) m zeta(2m+1) h^(m-1) for 0 <= h < 1",
        VERIFIED if ok else REFUTED, sub_ev,
    )
    return ClaimVerdict(
        "C7", "Lemma, Eq. (15)-(18)",
        "F(h) = sum (-1)^(n+1) zeta(2n) h^(n-1) / (2n-1)! = pi^2/6 - pi^4/(90 3!) h + ...",
        status, ev, [corrected],
    )


def claim_c8(cfg: ClaimsConfig) -> ClaimVerdict:
    hs = [0.0] + [float(h) for h in np.linspace(0.01, 0.5, 50)]
    encs = grid_map(lambda h: eval_mathieu_direct(SeriesParams(h, tol=cfg.tol)).enclosure, hs, cfg.workers)
    sup = max(e.hi for e in encs)
    widest = max(e.width() for e in encs)
    target = math.pi**2 / 6
    sep = target - sup
    ratio = sep / widest if widest > 0 else math.inf
    status = REFUTED if sep > 0 else (VERIFIED if all(e.lo > target for e in encs[1:]) else INCONCLUSIVE)
    z3 = zeta_int(3).enclosure
    return ClaimVerdict(
        "C8", "Lemma, closing remark", "F(h) > pi^2/6 for small h", status,
        [
            Evidence("grid h = 0 and 50 points of [0.01, 0.5]", len(hs)),
            Evidence("sup over grid of direct-sum enclosure hi", sup),
            Evidence("pi^2/6", target),
            Evidence("pi^2/6 minus sup", sep),
            Evidence("separation / widest enclosure", ratio),
            Evidence("zeta.zeta_int(3) enclosure (F(0+), the supremum of F)", _enc(z3)),
        ],
    )


def claim_c9(cfg: ClaimsConfig) -> ClaimVerdict:
    hs = [float(h) for h in np.linspace(0.0, cfg.alternating_h_max, cfg.alternating_grid_points)]
    res = grid_map(lambda h: eval_alternating(SeriesParams(h, tol=cfg.tol)), hs, cfg.workers)
    summary = monotonicity_summary(hs, res)
    eta3 = eta_int(3).enclosure
    inf_lo = min(r.enclosure.lo for r in res)
    sup_val = max(r.value for r in res)
    sup_hi = max(r.enclosure.hi for r in res)
    widest = max(r.enclosure.width() for r in res)
    range_ok = inf_lo >= 0 - widest and sup_hi <= eta3.hi + widest
    status = VERIFIED if (range_ok and not summary["certified_upward_jump"]) else REFUTED
    return ClaimVerdict(
        "C9", "Concluding remark on the alternating series",
        "S(h) is decreasing with range [0, 0.9015] (grid evidence only, not a proof)", status,
        [
            Evidence(f"grid of h in [0, {cfg.alternating_h_max:g}], tol={cfg.tol:g}", len(hs)),
            Evidence("sup over grid of S", sup_val),
            Evidence("inf over grid of enclosure lo", inf_lo),
            Evidence("zeta.eta_int(3) enclosure (S(0))", _enc(eta3)),
            Evidence("typeset upper end of the range", PRINTED_RANGE_TOP),
            Evidence("sup minus typeset upper end", sup_val - PRINTED_RANGE_TOP),
            Evidence("largest increase between consecutive grid values", summary["max_upward_jump"]),
            Evidence("certified upward jump present", summary["certified_upward_jump"]),
        ],
    )


def claim_c10(cfg: ClaimsConfig) -> ClaimVerdict:
    limit = powser.fprime_limit_at_zero()
    near = float(kernel.fprime_closed(1e-4))
    fd = kernel.finite_difference_enclosure(kernel.f_closed, 1e-2, 1, 1e-3)
    status = VERIFIED if limit == Fraction(1, 6) else REFUTED
    return ClaimVerdict(
        "C10", "Text after Eq. (12)", "lim_{x->0} f'(x) = 1/6", status,
        [
            Evidence("powser.fprime_limit_at_zero() (exact)", str(limit)),
            Evidence("kernel.fprime_closed(1e-4)", near),
            Evidence("finite difference of kernel.f_closed at x=0.01", _enc(fd)),
        ],
    )


REGISTRY: tuple[Callable[[ClaimsConfig], ClaimVerdict], ...] = (
    claim_c1, claim_c2, claim_c3, claim_c4, claim_c5,
    claim_c6, claim_c7, claim_c8, claim_c9, claim_c10,
)


def run_claims(cfg: ClaimsConfig | None = None) -> list[ClaimVerdict]:
    cfg = cfg or ClaimsConfig()
    return [claim(cfg) for claim in REGISTRY]


def monotonicity_summary(hs: Sequence[float], results: Sequence[SumResult]) -> dict:
    """Largest increase between consecutive values and whether any is certified."""
    best = -math.inf
    combined = 0.0
    certified = False
    for a, b in zip(results, results[1:]):
        jump = b.value - a.value
        if jump > best:
            best, combined = jump, a.half_width + b.half_width
        certified |= b.enclosure.lo > a.enclosure.hi
    return {"max_upward_jump": best, "combined_half_width": combined, "certified_upward_jump": certified}


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in x) + "]"
    return str(x)


def _flatten(verdicts: Iterable[ClaimVerdict]) -> list[ClaimVerdict]:
    out = []
    for v in verdicts:
        out.append(v)
        out.extend(_flatten(v.subclaims))
    return out


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def render_json(verdicts: Sequence[ClaimVerdict]) -> str:
    return json.dumps(_json_safe([v.to_dict() for v in verdicts]), indent=2) + "\n"


def render_csv(verdicts: Sequence[ClaimVerdict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "status", "paper_ref", "claim", "evidence"])
    for v in _flatten(verdicts):
        ev = "; ".join(f"{e.description} = {fmt(e.value)}" for e in v.evidence)
        w.writerow([v.id, v.status, v.paper_ref, v.claim, ev])
    return buf.getvalue()


def render_markdown(verdicts: Sequence[ClaimVerdict]) -> str:
    lines = ["| id | status | reference | claim |", "|---|---|---|---|"]
    for v in _flatten(verdicts):
        claim = v.claim.replace("|", "\\|")
        lines.append(f"| {v.id} | {v.status} | {v.paper_ref} | {claim} |")
    lines.append("")
    for v in _flatten(verdicts):
        lines.append(f"### {v.id}: {v.status}")
        lines.append("")
        for e in v.evidence:
            lines.append(f"- {e.description}: `{fmt(e.value)}`")
        lines.append("")
    return "\n".join(lines)


RENDERERS = {"json": render_json, "csv": render_csv, "md": render_markdown}
