"""Probabilities of causation for binary cause-effect pairs.

Fits both monotone model variants to the empirical inputs, keeps the one with
the smaller approximation error, and evaluates the classical counterfactual
ratios on the projected distribution. Working on the projection (rather than
the raw empirical marginals) is what keeps the three probabilities inside
[0, 1]: the projection is consistent with some monotone mechanism by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .approximation import (
    ApproximationResult,
    EmpiricalInputs,
    ErrorMode,
    approximate,
)
from .distributions import DiscreteDistribution, marginalize
from .exceptions import NoMonotoneModelError
from .models import CausalModelSpec, ModelVariant

MonotoneKind = Literal["increasing", "decreasing"]


@dataclass(frozen=True)
class CausationReport:
    """Outcome of a monotone fit plus the three causal probabilities.

    ``pn`` and ``ps`` are NaN (with the matching flag cleared) when their
    denominator vanishes on the projection; ``pns`` is always defined.
    ``errors`` holds the approximation errors to the increasing and the
    decreasing variant, in that order.
    """

    direction_assumed: str
    monotone_kind: MonotoneKind
    pn: float
    ps: float
    pns: float
    pn_defined: bool
    ps_defined: bool
    errors: tuple[float, float]
    fit_increasing: ApproximationResult
    fit_decreasing: ApproximationResult


def _binary_summaries(p_tilde: DiscreteDistribution):
    if p_tilde.shape.axis_sizes != (2, 2, 2, 2):
        raise ValueError(
            f"expected a (2, 2, 2, 2) projection, got {p_tilde.shape.axis_sizes}"
        )
    xy = marginalize(p_tilde, (0, 1)).as_array()
    do0 = marginalize(p_tilde, (2,)).mass
    do1 = marginalize(p_tilde, (3,)).mass
    return xy, do0, do1


def _ratio(numerator: float, denominator: float) -> float:
    if denominator == 0.0:
        return math.nan
    return numerator / denominator


def probabilities_increasing(
    p_tilde: DiscreteDistribution,
) -> tuple[float, float, float]:
    """(PN, PS, PNS) of the cause value 1 for the effect value 1, assuming the
    projected distribution is consistent with an increasing monotone
    mechanism."""
    xy, do0, do1 = _binary_summaries(p_tilde)
    p_y1 = float(xy[0, 1] + xy[1, 1])
    pn = _ratio(p_y1 - do0[1], float(xy[1, 1]))
    ps = _ratio(do1[1] - p_y1, float(xy[0, 0]))
    pns = float(do1[1] - do0[1])
    return pn, ps, pns


def probabilities_decreasing(
    p_tilde: DiscreteDistribution,
) -> tuple[float, float, float]:
    """(PN, PS, PNS) of the cause value 0 for the effect value 1, assuming a
    decreasing monotone mechanism."""
    xy, do0, do1 = _binary_summaries(p_tilde)
    p_y0 = float(xy[0, 0] + xy[1, 0])
    pn = _ratio(do1[0] - p_y0, float(xy[0, 1]))
    ps = _ratio(p_y0 - do0[0], float(xy[1, 0]))
    pns = float(do0[1] - do1[1])
    return pn, ps, pns


def calc_causal_probabilities(
    inputs: EmpiricalInputs,
    error_mode: ErrorMode = "local",
    direction_assumed: str = "x->y",
) -> CausationReport:
    """Fit both monotone variants and report PN/PS/PNS from the better one.

    Ties between the two fits resolve toward the increasing variant. Raises
    NoMonotoneModelError when neither variant places any mass on the data.
    """
    if inputs.b_cause != 2 or inputs.b_effect != 2:
        raise ValueError("causal probabilities are defined for binary data only")
    fit_inc = approximate(
        inputs, CausalModelSpec(ModelVariant.X_TO_Y_MONO_INC, 2, 2), error_mode
    )
    fit_dec = approximate(
        inputs, CausalModelSpec(ModelVariant.X_TO_Y_MONO_DEC, 2, 2), error_mode
    )
    if fit_inc.degenerate and fit_dec.degenerate:
        raise NoMonotoneModelError(
            "no monotone model fits: both variants have zero support mass"
        )
    d_i, d_d = fit_inc.error, fit_dec.error
    if d_i <= d_d:
        kind: MonotoneKind = "increasing"
        pn, ps, pns = probabilities_increasing(fit_inc.p_tilde)
    else:
        kind = "decreasing"
        pn, ps, pns = probabilities_decreasing(fit_dec.p_tilde)
    return CausationReport(
        direction_assumed=direction_assumed,
        monotone_kind=kind,
        pn=pn,
        ps=ps,
        pns=pns,
        pn_defined=not math.isnan(pn),
        ps_defined=not math.isnan(ps),
        errors=(d_i, d_d),
        fit_increasing=fit_inc,
        fit_decreasing=fit_dec,
    )
