"""Certified evaluation of Mathieu's series and a checker for claims about it."""

from .bounds import check_bound, lower_bound, schroder_refined, upper_half_inverse
from .enclosure import Enclosure, SumResult
from .errors import DomainError, MathieuError, NonConvergence, PreconditionError, ToleranceUnreachable
from .kernel import integral_F, integral_F_parts, integral_S
from .series import SeriesParams, eval_alternating, eval_generalized, eval_mathieu_direct, tail_bracket
from .zeta import eta_int, eval_expansion, eval_expansion_alternating, expansion_coeff, zeta_int

__all__ = [
    "DomainError", "Enclosure", "MathieuError", "NonConvergence", "PreconditionError",
    "SeriesParams", "SumResult", "ToleranceUnreachable", "check_bound", "eta_int",
    "eval_alternating", "eval_expansion", "eval_expansion_alternating", "eval_generalized",
    "eval_mathieu_direct", "expansion_coeff", "integral_F", "integral_F_parts", "integral_S",
    "lower_bound", "schroder_refined", "tail_bracket", "upper_half_inverse", "zeta_int",
]
