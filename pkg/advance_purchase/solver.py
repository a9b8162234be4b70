# -*- coding: utf-8 -*-
# Brute-force equilibrium computation over the consumer's plan space.
#
# The solvers here enumerate plans and compare expected utilities directly;
# they share no algebra with closed_form, which makes them its oracle.

from dataclasses import dataclass
import itertools
import logging
from types import MappingProxyType

import numpy as np
import scipy.optimize

from advance_purchase.errors import DomainError, NoEquilibrium, NotMonotone
from advance_purchase.helpers import leq
from advance_purchase.model import (
    BUY, PREPURCHASE, REJECT, STATES, WAIT, Committed, Flexible, Plan,
    PriceOffer, build_game_tree, decision_nodes, enumerate_degenerate_plans,
    seller_expected_profit, terminal_distribution)
from advance_purchase.preferences import (
    KRInitialBelief, KRRecentBelief, RECENT_BELIEF,
    action_utilities, is_reference_dependent, plan_utility, standard_utility)
import advance_purchase.settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquilibriumResult:
    plan: Plan
    t1_expected_utility: float
    credible_nodes: frozenset
    spot_ppe_actions: MappingProxyType
    seller_expected_profit: float
    assumption: str

    @property
    def prepurchases(self):
        return self.plan.advance_action == 1


def _eps(eps):
    return advance_purchase.settings.EPSILON if eps is None else eps


def _assess(root, node, plan, params, assumption, eps=None):
    """
    Credibility of the plan at node and its expected utility there, from one
    set of action utilities.
    """
    utilities = action_utilities(root, node, plan, params, assumption)
    best = max(utilities.values())
    played = {action: plan.action_probability(node, action)
              for action in node.actions()}
    credible = all(utilities[action] >= best - _eps(eps)
                   for action, prob in played.items() if prob > 0)
    return credible, sum(prob * utilities[action]
                         for action, prob in played.items())


def _credible(root, node, plan, params, assumption, eps=None):
    return _assess(root, node, plan, params, assumption, eps)[0]


def is_credible_at(plan, node, offer, params, assumption, eps=None):
    """
    Whether every action the plan plays at node is optimal there, given the
    reference the plan itself induces.

    Args:
        plan (Plan): the consumer's plan
        node (GameNode): a decision node of the tree for (params, offer)
        offer (PriceOffer): observed prices
        params (ModelParams): the environment
        assumption: RECENT_BELIEF or INITIAL_BELIEF
        eps (float): utility tolerance, settings.EPSILON when omitted

    Returns:
        bool
    """
    root = build_game_tree(params, offer)
    return _credible(root, node, plan, params, assumption, eps)


def spot_ppe_action(state, spot_price, params):
    """Buy at the spot market iff the price does not exceed the realized value."""
    value = params.value(state)

    if leq(spot_price, value, advance_purchase.settings.EPSILON):
        return BUY

    return REJECT


def spot_credible_action_set(state, spot_price, params):
    """
    Spot actions that some credible degenerate sub-plan supports.

    Reject is credible above value/(1+lambda_m); buy is credible up to
    (1+lambda_v)*value. Between the two both are.

    Returns:
        frozenset of action labels
    """
    value = params.value(state)
    actions = set()

    if spot_price <= (1 + params.lambda_v) * value:
        actions.add(BUY)

    if spot_price > value / (1 + params.lambda_m):
        actions.add(REJECT)

    return frozenset(actions)


def spot_credible_interval(state, params):
    """Closed-form (low, high) endpoints of the interval where both spot actions are credible."""
    value = params.value(state)
    return value / (1 + params.lambda_m), (1 + params.lambda_v) * value


def spot_ppe_by_enumeration(state, spot_price, params, eps=None):
    """
    The spot action of the preferred credible degenerate sub-plan, found by
    evaluating both sub-plans against their own references.

    Returns:
        (action, frozenset of credible actions)
    """
    offer = PriceOffer.committed(0.0, spot_price)
    root = build_game_tree(params, offer)
    node = root.child(WAIT).child(state)
    scored = []

    for bit in (1.0, 0.0):
        sub_plan = Plan(0.0, bit, bit)
        credible, eu = _assess(root, node, sub_plan, params, RECENT_BELIEF,
                               eps)

        if credible:
            scored.append((sub_plan, eu))

    credible = frozenset(BUY if plan.spot(state) == 1 else REJECT
                         for plan, _ in scored)
    best = max(eu for _, eu in scored)
    # Buy is listed first, so ties resolve toward purchasing.
    chosen = next(plan for plan, eu in scored
                  if eu >= best - _eps(eps))
    return (BUY if chosen.spot(state) == 1 else REJECT), credible


def _tie_rank(plan):
    """Larger is preferred among equal-utility plans."""
    a, buy_h, buy_l = plan.as_tuple()

    if a == 1:
        tier = 2
    elif buy_h == 1 or buy_l == 1:
        tier = 1
    else:
        tier = 0

    return (tier, plan.as_tuple())


def _select(scored):
    """
    Pick the utility maximizer among (plan, utility) pairs; utilities within
    EPSILON of the best are ties and resolve toward purchasing.
    """
    best = max(eu for _, eu in scored)
    tied = [(plan, eu) for plan, eu in scored
            if eu >= best - advance_purchase.settings.EPSILON]
    return max(tied, key=lambda pair: _tie_rank(pair[0]))


def _spot_plan_bits(params, offer):
    return tuple(1.0 if spot_ppe_action(s, offer.spot_price(s), params) == BUY
                 else 0.0 for s in STATES)


def _select_ppe(params, offer, assumption):
    """The PPE plan and its T1 utility, without building a full result."""
    root = build_game_tree(params, offer)

    if isinstance(assumption, KRRecentBelief):
        buy_h, buy_l = _spot_plan_bits(params, offer)
        scored = []

        for plan in (Plan(1.0, buy_h, buy_l), Plan(0.0, buy_h, buy_l)):
            credible, eu = _assess(root, root, plan, params, assumption)

            if credible:
                scored.append((plan, eu))
    elif isinstance(assumption, KRInitialBelief):
        credible = [plan for plan in enumerate_degenerate_plans()
                    if all(_credible(root, node, plan, params, assumption)
                           for node in decision_nodes(root))]
        scored = [(plan, plan_utility(root, root, plan, params, assumption))
                  for plan in credible]
    else:
        raise DomainError("solve_ppe needs a reference-dependent preference, "
                          "got %s" % (assumption,))

    if not scored:
        raise NoEquilibrium(offer, assumption)

    logger.debug("credible plans at %r: %s", offer, scored)
    plan, eu = _select(scored)
    return root, plan, eu


def solve_ppe(params, offer, assumption):
    """
    Preferred personal equilibrium among degenerate plans.

    Under the recent-belief reference the spot behaviour is fixed first by the
    spot rule, then the advance action is chosen among the credible remaining
    plans. Under the initial-belief reference all 8 degenerate plans are
    screened for credibility at every node against the root reference.

    Args:
        params (ModelParams): the environment
        offer (PriceOffer): observed prices
        assumption: RECENT_BELIEF or INITIAL_BELIEF

    Returns:
        EquilibriumResult

    Raises:
        NoEquilibrium if no degenerate plan is credible everywhere
    """
    root, plan, eu = _select_ppe(params, offer, assumption)
    credible_nodes = frozenset(
        node.id for node in decision_nodes(root)
        if _credible(root, node, plan, params, assumption))

    if isinstance(assumption, KRRecentBelief):
        spot = {s: spot_ppe_action(s, offer.spot_price(s), params)
                for s in STATES}
    else:
        spot = {s: BUY if plan.spot(s) == 1 else REJECT for s in STATES}

    return EquilibriumResult(
        plan=plan,
        t1_expected_utility=eu,
        credible_nodes=credible_nodes,
        spot_ppe_actions=MappingProxyType(spot),
        seller_expected_profit=seller_expected_profit(root, plan),
        assumption=assumption.tag)


def _standard_eu(node, plan, pref, action=None):
    return sum(p * standard_utility(outcome, pref)
               for p, outcome in terminal_distribution(node, plan, action))


def solve_standard(params, offer, pref):
    """
    Backward induction for a reference-free consumer.

    Args:
        params (ModelParams): the environment; loss coefficients are ignored
        offer (PriceOffer): committed or flexible prices
        pref: RISK_NEUTRAL or a RiskAverse instance

    Returns:
        EquilibriumResult
    """
    if is_reference_dependent(pref):
        raise DomainError("solve_standard needs a standard preference, got %s"
                          % (pref,))

    eps = advance_purchase.settings.EPSILON
    root, spot_h, spot_l = decision_nodes(build_game_tree(params, offer))
    # The placeholder plan is never consulted below a spot node's own action.
    placeholder = Plan(0.0, 0.0, 0.0)
    bits = []

    for node in (spot_h, spot_l):
        buy = _standard_eu(node, placeholder, pref, BUY)
        reject = _standard_eu(node, placeholder, pref, REJECT)
        bits.append(1.0 if buy >= reject - eps else 0.0)

    wait_plan = Plan(0.0, *bits)
    prepurchase = _standard_eu(root, wait_plan, pref, PREPURCHASE)
    wait = _standard_eu(root, wait_plan, pref)

    if prepurchase >= wait - eps:
        plan, eu = Plan(1.0, *bits), prepurchase
    else:
        plan, eu = wait_plan, wait

    return EquilibriumResult(
        plan=plan,
        t1_expected_utility=eu,
        credible_nodes=frozenset(node.id for node in (root, spot_h, spot_l)),
        spot_ppe_actions=MappingProxyType(
            {s: BUY if b == 1 else REJECT for s, b in zip(STATES, bits)}),
        seller_expected_profit=seller_expected_profit(root, plan),
        assumption=pref.tag)


def _as_regime(p2_or_regime):
    if isinstance(p2_or_regime, (Committed, Flexible)):
        return p2_or_regime
    return Committed(float(p2_or_regime))


def prescribes_prepurchase(params, offer, model):
    """
    Whether the equilibrium under `model` pre-purchases at the offer. An offer
    with no credible degenerate plan counts as no pre-purchase.
    """
    if not is_reference_dependent(model):
        return solve_standard(params, offer, model).prepurchases

    try:
        _, plan, _ = _select_ppe(params, offer, model)
    except NoEquilibrium as err:
        logger.warning("%s; treated as no pre-purchase", err)
        return False

    return plan.advance_action == 1


def bisect_cutoff_p1(p2_or_regime, params, model):
    """
    Numerically locate the largest advance price at which the consumer still
    pre-purchases.

    A coarse scan of the bracket [0, H*(2+lambda_v+lambda_m)] checks that the
    purchase set is downward closed before bisecting on a +1/-1 purchase
    indicator.

    Args:
        p2_or_regime (float or Committed or Flexible): the spot-price regime;
            a bare number is a committed spot price
        params (ModelParams): the environment
        model: a reference-dependent or standard preference

    Returns:
        float, the cutoff advance price to within settings.CUTOFF_XTOL

    Raises:
        NotMonotone if the scan finds purchase above a non-purchase price
    """
    regime = _as_regime(p2_or_regime)
    upper = params.H * (2 + params.lambda_v + params.lambda_m)

    def buys(p1):
        return prescribes_prepurchase(params, PriceOffer(float(p1), regime), model)

    grid = np.linspace(0.0, upper, advance_purchase.settings.CUTOFF_SCAN_POINTS)
    samples = [(float(p1), buys(p1)) for p1 in grid]
    decisions = [buy for _, buy in samples]

    if any(later and not earlier
           for earlier, later in zip(decisions, decisions[1:])):
        raise NotMonotone(samples)

    if not any(decisions):
        logger.warning("no pre-purchase on [0, %g] for %r under %s",
                       upper, regime, model)
        return 0.0

    if all(decisions):
        logger.warning("pre-purchase everywhere on [0, %g] for %r under %s",
                       upper, regime, model)
        return float(upper)

    last_buy = max(i for i, buy in enumerate(decisions) if buy)
    lo, hi = grid[last_buy], grid[last_buy + 1]

    cutoff = scipy.optimize.bisect(
        lambda p1: 1.0 if buys(p1) else -1.0, lo, hi,
        xtol=advance_purchase.settings.CUTOFF_XTOL,
        maxiter=advance_purchase.settings.CUTOFF_MAXITER)
    logger.debug("cutoff for %r under %s: %.9f", regime, model, cutoff)
    return float(cutoff)


def probability_grid(step):
    """Probabilities 0, step, 2*step, ... 1 (1 always included)."""
    if not 0 < step <= 0.5:
        raise DomainError("grid step must lie in (0, 0.5], got %r" % (step,))

    points = np.arange(0.0, 1.0, step)
    return tuple(float(p) for p in np.unique(np.append(np.round(points, 12), 1.0)))


def _preferred_spot_probabilities(root, node, grid, params):
    """
    Spot sub-plans a recent-belief PPE can contain at node: credible, and
    within EPSILON of the best credible sub-plan, resolved toward buying.
    """
    eps = advance_purchase.settings.EPSILON
    scored = []

    for s in grid:
        credible, eu = _assess(root, node, Plan(0.0, s, s), params,
                               RECENT_BELIEF)

        if credible:
            scored.append((s, eu))

    best = max(eu for _, eu in scored)
    preferred = [s for s, eu in scored if eu >= best - eps]
    return (max(preferred),)


def grid_mixed_plan_check(params, offer, step, assumption):
    """
    Audit the degenerate PPE against plans on a probability grid.

    Args:
        params (ModelParams): the environment
        offer (PriceOffer): observed prices
        step (float): grid spacing in (0, 0.5]
        assumption: RECENT_BELIEF or INITIAL_BELIEF

    Returns:
        bool, False when some grid plan credible at every node beats the
        degenerate PPE's T1 utility by more than EPSILON
    """
    grid = probability_grid(step)
    eps = advance_purchase.settings.EPSILON
    _, _, ppe_eu = _select_ppe(params, offer, assumption)
    root, spot_h, spot_l = decision_nodes(build_game_tree(params, offer))

    if isinstance(assumption, KRRecentBelief):
        spot_h_options = _preferred_spot_probabilities(root, spot_h, grid, params)
        spot_l_options = _preferred_spot_probabilities(root, spot_l, grid, params)
        plans = (Plan(a, h, l) for a, h, l in
                 itertools.product(grid, spot_h_options, spot_l_options))
        nodes = (root,)
    else:
        plans = (Plan(*probs) for probs in itertools.product(grid, repeat=3))
        nodes = (root, spot_h, spot_l)

    for plan in plans:
        if not all(_credible(root, node, plan, params, assumption)
                   for node in nodes):
            continue

        eu = plan_utility(root, root, plan, params, assumption)

        if eu > ppe_eu + eps:
            logger.info("grid plan %r beats the degenerate PPE (%.9f > %.9f)",
                        plan, eu, ppe_eu)
            return False

    return True
