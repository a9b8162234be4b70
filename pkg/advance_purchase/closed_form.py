# -*- coding: utf-8 -*-
# Closed-form cutoff prices and optimal pricing.
#
# The cutoff advance price is piecewise linear in the committed spot price,
# with one formula family per spot-price region:
#
#     below_l    p2 <= L
#     mid_low    L < p2 <= (lambda_v + 1) L
#     mid_high   (lambda_v + 1) L < p2 <= H
#     above_h    p2 > H

from dataclasses import dataclass
import enum
import logging

import numpy as np
import scipy.optimize

from advance_purchase.errors import BracketError, DomainError
from advance_purchase.helpers import leq
from advance_purchase.model import Committed, Flexible, PriceOffer
from advance_purchase.preferences import RiskAverse
import advance_purchase.settings

logger = logging.getLogger(__name__)


class Region(enum.Enum):
    BELOW_L = "below_l"
    MID_LOW = "mid_low"
    MID_HIGH = "mid_high"
    ABOVE_H = "above_h"


@dataclass(frozen=True)
class CutoffBreakdown:
    p2: float
    pe_bound: float
    preferred_bound: float
    wait_floor: float
    cutoff: float
    region: Region


@dataclass(frozen=True)
class PricingRecommendation:
    regime: object
    p1: float
    expected_profit: float

    @property
    def offer(self):
        return PriceOffer(self.p1, self.regime)

    @property
    def p2_committed(self):
        return self.regime.p2 if isinstance(self.regime, Committed) else None

    @property
    def p2_flexible(self):
        if isinstance(self.regime, Flexible):
            return (self.regime.p2_H, self.regime.p2_L)
        return None


COMMIT = "commit"
INDIFFERENT = "indifferent"
FLEXIBLE = "flexible"


@dataclass(frozen=True)
class CommitmentDecision:
    choice: str
    commit_profit: float
    flexible_profit: float
    gap: float


def _check_p2(p2):
    if not np.isfinite(p2) or p2 < 0:
        raise DomainError("p2 must be finite and non-negative, got %r" % (p2,))


def price_region(p2, params):
    """Region of the committed spot price; boundary prices join the lower region."""
    _check_p2(p2)
    eps = advance_purchase.settings.EPSILON

    if leq(p2, params.L, eps):
        return Region.BELOW_L

    if leq(p2, params.H, eps):
        if leq(p2, (params.lambda_v + 1) * params.L, eps):
            return Region.MID_LOW
        return Region.MID_HIGH

    return Region.ABOVE_H


def credible_prepurchase_bound(p2, params):
    """
    Highest advance price at which planning to pre-purchase is credible.

    Args:
        p2 (float): committed spot price
        params (ModelParams): the environment

    Returns:
        float
    """
    H, L, q = params.H, params.L, params.q
    lv, lm = params.lambda_v, params.lambda_m
    region = price_region(p2, params)

    if region is Region.BELOW_L:
        return p2

    if region is Region.MID_LOW:
        return (lv + 1) * (1 - q) * L + q * p2

    if region is Region.MID_HIGH:
        return ((lv + 1) * (1 - q) * L + (lm + 1) * q * p2) / (lm * q + 1)

    return params.expected_value + lv * q ** 2 * H + lv * (1 - q ** 2) * L


def preferred_prepurchase_bound(p2, params):
    """
    Highest advance price at which pre-purchasing is at least as good at T1
    as the wait plan.
    """
    H, L, q = params.H, params.L, params.q
    lv, lm = params.lambda_v, params.lambda_m
    region = price_region(p2, params)

    if region is Region.BELOW_L:
        return p2

    if region is Region.ABOVE_H:
        return params.expected_value - lv * (1 - q) * q * (H - L)

    return (1 - q) * L + lv * q * (1 - q) * L + q * p2 + lm * (1 - q) * q * p2


def wait_credible_floor(p2, params):
    """
    Lowest advance price at which the wait plan is credible at T1. Below it
    pre-purchase is the only credible plan.
    """
    L, q = params.L, params.q
    lv, lm = params.lambda_v, params.lambda_m
    region = price_region(p2, params)

    if region is Region.BELOW_L:
        return p2

    if region is Region.ABOVE_H:
        return params.expected_value / (1 + lm)

    base = (1 - q) * L * (1 + lv * q)
    floor = (base + q * p2 * (1 + lm * (1 - q))) / (1 + lm * (1 - q))

    if floor <= p2:
        return floor

    return (base + q * p2 + lm * (2 * q - q ** 2) * p2) / (1 + lm)


def cutoff_advance_price(p2, params):
    """
    The cutoff advance price for a committed spot price.

    Pre-purchase is the PPE when it is credible and either beats waiting or
    waiting is not credible, so the cutoff is
    min(pe_bound, max(preferred_bound, wait_floor)). The floor binds only
    above H.

    Args:
        p2 (float): committed spot price, >= 0
        params (ModelParams): the environment

    Returns:
        CutoffBreakdown
    """
    pe = credible_prepurchase_bound(p2, params)
    preferred = preferred_prepurchase_bound(p2, params)
    floor = wait_credible_floor(p2, params)
    return CutoffBreakdown(
        p2=float(p2),
        pe_bound=pe,
        preferred_bound=preferred,
        wait_floor=floor,
        cutoff=min(pe, max(preferred, floor)),
        region=price_region(p2, params))


def distilled_crossing(params):
    """(1-q) lambda_v L / (q lambda_m), or None when lambda_m is 0."""
    if params.lambda_m == 0:
        return None

    return (1 - params.q) * params.lambda_v * params.L / (
        params.q * params.lambda_m)


def bound_crossings(params):
    """
    Spot prices in (L, H] where the preferred bound crosses the credibility
    bound, each solved inside the branch it belongs to.

    Returns:
        sorted list of floats
    """
    H, L, q = params.H, params.L, params.q
    lv, lm = params.lambda_v, params.lambda_m

    if lm == 0:
        return []

    knee = (lv + 1) * L
    crossings = []

    mid_low = distilled_crossing(params)
    if L < mid_low <= min(knee, H):
        crossings.append(mid_low)

    mid_high = L * (lv * (1 - q) - q * lm - lv * lm * q ** 2) / (q ** 2 * lm ** 2)
    if knee < mid_high <= H:
        crossings.append(mid_high)

    return sorted(crossings)


def kink_abscissae(params):
    """
    Spot prices a sweep should sample exactly: L, the branch knee, the bound
    crossings and H.
    """
    H, L = params.H, params.L
    points = {L, H}
    knee = (params.lambda_v + 1) * L

    if knee <= H:
        points.add(knee)

    crossing = distilled_crossing(params)
    if crossing is not None and crossing <= H:
        points.add(crossing)

    points.update(bound_crossings(params))
    return sorted(points)


def expected_kinks(params):
    """Spot prices in (0, H) where the cutoff may change slope."""
    candidates = [params.L, (params.lambda_v + 1) * params.L]
    candidates.extend(bound_crossings(params))
    return sorted({k for k in candidates if 0 < k < params.H})


def optimal_pricing_commit(params):
    """
    Profit-maximizing committed offer: spot price H, advance price at the
    cutoff there.

    With (lambda_v + 1) L <= H the advance price is
    min((E + q lm H + (1-q) lv L)/(1 + q lm), E + lv q(1-q) L + lm q(1-q) H).
    Otherwise H falls in the mid_low branch and that branch's credibility
    bound replaces the first term.
    """
    p1 = cutoff_advance_price(params.H, params).cutoff
    return PricingRecommendation(Committed(params.H), p1, p1)


def optimal_pricing_flexible(params):
    """Profit-maximizing offer when spot prices follow the state."""
    q, H = params.q, params.H
    lm = params.lambda_m
    p1 = (params.expected_value + q * lm * H) / (1 + q * lm)
    return PricingRecommendation(Flexible(params.H, params.L), p1, p1)


def commitment_decision(params):
    """
    Compare the best committed and the best flexible offer.

    Returns:
        CommitmentDecision with choice COMMIT when commitment earns more than
        EPSILON extra, INDIFFERENT otherwise
    """
    commit = optimal_pricing_commit(params).expected_profit
    flexible = optimal_pricing_flexible(params).expected_profit
    gap = commit - flexible
    choice = COMMIT if gap > advance_purchase.settings.EPSILON else INDIFFERENT
    return CommitmentDecision(choice, commit, flexible, gap)


def static_reference_bound(params):
    """Upper bound on the cutoff when the reference stays at the T1 belief."""
    q = params.q
    return params.expected_value - q * (1 - q) * params.lambda_v * (params.H - params.L)


def static_credible_bound(params):
    """
    static_reference_bound, raised to E/(1 + lambda_m) where never purchasing
    stops being credible.
    """
    return max(static_reference_bound(params),
               params.expected_value / (1 + params.lambda_m))


def single_stage_cutoff(params):
    """Cutoff when no spot market follows the advance-purchase stage."""
    q = params.q
    return params.expected_value - (1 - q) * params.lambda_v * q * (params.H - params.L)


def risk_averse_cutoff(params, a):
    """
    Advance price making a CARA consumer indifferent between pre-purchasing
    and never buying at spot price H.

    Args:
        params (ModelParams): the environment; loss coefficients are ignored
        a (float): CARA coefficient, > 0

    Returns:
        float in (L, E)
    """
    pref = RiskAverse(a)
    q = params.q

    def indifference(p1):
        return (q * pref.v(params.H - p1) + (1 - q) * pref.v(params.L - p1)
                - pref.v(0.0))

    try:
        root = scipy.optimize.bisect(
            indifference, 0.0, params.H,
            xtol=advance_purchase.settings.RISK_AVERSE_XTOL)
    except ValueError as err:
        raise BracketError("no sign change on [0, %g] for a=%g: %s"
                           % (params.H, a, err))

    logger.debug("risk-averse cutoff a=%g: %.9f", a, root)
    return float(root)


def risk_averse_commitment(params, a):
    """
    Commitment choice of a seller facing a CARA consumer.

    Committing to H earns the better of an advance sale at the risk-averse
    cutoff and a spot-only sale at H or L; spot prices that follow the state
    extract E.
    """
    commit = max(risk_averse_cutoff(params, a), params.q * params.H, params.L)
    flexible = params.expected_value
    return CommitmentDecision(FLEXIBLE, commit, flexible, commit - flexible)
