# -*- coding: utf-8 -*-
# Consumer preferences: belief-based loss aversion with narrow bracketing, and
# the standard risk-neutral and risk-averse benchmarks.

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from advance_purchase.errors import DomainError, InvalidAction
from advance_purchase.model import (
    AdvanceStage, SpotStage, build_game_tree, terminal_distribution)
import advance_purchase.settings


@dataclass(frozen=True)
class KRRecentBelief:
    """Reference rebuilt from the belief held at the start of each stage."""

    tag = "kr_recent"

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class KRInitialBelief:
    """Reference fixed at the belief formed at the advance-purchase node."""

    tag = "kr_initial"

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class RiskNeutral:
    tag = "risk_neutral"

    def v(self, x):
        return x

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class RiskAverse:
    """Exponential (CARA) utility over the net material payoff."""

    a: float
    tag = "risk_averse"

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("curvature must be positive, got %r" % (self.a,))

    def v(self, x):
        # Defined on all reals; large losses overflow to -inf.
        with np.errstate(over="ignore"):
            return float(-np.expm1(-self.a * x) / self.a)

    def __str__(self):
        return "%s(a=%g)" % (self.tag, self.a)


RECENT_BELIEF = KRRecentBelief()
INITIAL_BELIEF = KRInitialBelief()
RISK_NEUTRAL = RiskNeutral()

PREFERENCE_TAGS = ("kr_recent", "kr_initial", "risk_neutral", "risk_averse")


def preference_from_tag(tag, curvature=None):
    """
    Resolve a preference tag from a scenario file.

    Args:
        tag (str): one of PREFERENCE_TAGS
        curvature (float): CARA coefficient, required for risk_averse

    Returns:
        a preference model instance
    """
    if tag == "kr_recent":
        return RECENT_BELIEF
    if tag == "kr_initial":
        return INITIAL_BELIEF
    if tag == "risk_neutral":
        return RISK_NEUTRAL
    if tag == "risk_averse":
        if curvature is None:
            raise DomainError("risk_averse preference needs a curvature")
        return RiskAverse(curvature)

    raise DomainError("unknown preference %r" % (tag,))


def is_reference_dependent(model):
    return isinstance(model, (KRRecentBelief, KRInitialBelief))


def _marginal(points):
    """Merge equal support points, drop empty ones, sort by reference point."""
    merged = defaultdict(float)

    for p, point in points:
        if p > 0:
            merged[float(point)] += p

    return tuple(sorted(((p, point) for point, p in merged.items()),
                        key=lambda pair: pair[1]))


@dataclass(frozen=True)
class ReferenceDistribution:
    """Per-dimension marginals of the consumer's belief over material payoffs."""

    value_marginal: tuple
    money_marginal: tuple

    def __post_init__(self):
        for name in ("value_marginal", "money_marginal"):
            marginal = getattr(self, name)
            total = sum(p for p, _ in marginal)

            if any(p < 0 for p, _ in marginal):
                raise DomainError("%s has a negative probability" % name)

            if not np.all(np.isfinite([point for _, point in marginal])):
                raise DomainError("%s has a non-finite support point" % name)

            if abs(total - 1) > advance_purchase.settings.EPSILON:
                raise DomainError("%s sums to %r, not 1" % (name, total))

    @classmethod
    def from_marginals(cls, value_points, money_points):
        return cls(_marginal(value_points), _marginal(money_points))

    @classmethod
    def degenerate(cls, value, money):
        return cls(((1.0, float(value)),), ((1.0, float(money)),))

    @classmethod
    def from_outcomes(cls, distribution):
        """
        Marginals of a distribution over terminal outcomes.

        Args:
            distribution (list): (probability, TerminalOutcome) pairs

        Returns:
            ReferenceDistribution
        """
        return cls.from_marginals(
            [(p, outcome.consumer.value) for p, outcome in distribution],
            [(p, outcome.consumer.money) for p, outcome in distribution])


@dataclass(frozen=True)
class UtilityReport:
    total: float
    value_part: float
    money_part: float
    loss_value: float
    loss_money: float


def _expected_loss(k, marginal):
    return sum(p * max(r - k, 0.0) for p, r in marginal)


def riskless_utility(k, ref, params):
    """
    Utility of a sure payoff against a reference distribution. Only losses
    are felt; gains carry no weight.

    Args:
        k (Payoff2D): the material payoff
        ref (ReferenceDistribution): the reference distribution
        params (ModelParams): supplies the loss coefficients

    Returns:
        UtilityReport
    """
    loss_value = _expected_loss(k.value, ref.value_marginal)
    loss_money = _expected_loss(k.money, ref.money_marginal)
    value_part = k.value - params.lambda_v * loss_value
    money_part = k.money - params.lambda_m * loss_money
    return UtilityReport(value_part + money_part, value_part, money_part,
                         loss_value, loss_money)


def _check_decision_node(node):
    if not isinstance(node.stage, (AdvanceStage, SpotStage)):
        raise InvalidAction("%s is not a consumer decision node" % node.id)


def reference_at(root, node, plan, assumption):
    """
    The reference distribution in force at a decision node.

    Args:
        root (GameNode): the T1 node of the tree containing node
        node (GameNode): the decision node
        plan (Plan): the consumer's plan, also its belief
        assumption: RECENT_BELIEF or INITIAL_BELIEF

    Returns:
        ReferenceDistribution
    """
    _check_decision_node(node)
    anchor = root if isinstance(assumption, KRInitialBelief) else node
    return ReferenceDistribution.from_outcomes(terminal_distribution(anchor, plan))


def reference_from_plan(plan, node, offer, params, assumption):
    root = build_game_tree(params, offer)
    return reference_at(root, node, plan, assumption)


def action_utility(action, node, plan, ref, params):
    """Expected riskless utility of taking `action` at node against ref."""
    if action not in node.children:
        raise InvalidAction("%r is not available at %s (choose from %s)" % (
            action, node.id, ", ".join(node.actions())))

    return sum(p * riskless_utility(outcome.consumer, ref, params).total
               for p, outcome in terminal_distribution(node, plan, action))


def action_utilities(root, node, plan, params, assumption):
    """
    Expected utility of every action at a decision node, sharing one
    reference distribution.

    Returns:
        dict mapping action label to expected utility
    """
    ref = reference_at(root, node, plan, assumption)
    return {action: action_utility(action, node, plan, ref, params)
            for action in node.actions()}


def expected_utility(action, node, plan, offer, params, assumption):
    """
    Reference-dependent expected utility of an action at a decision node.

    Args:
        action (str): the action taken at node
        node (GameNode): a decision node of the tree for (params, offer)
        plan (Plan): governs later decisions and, with the assumption, the
            reference distribution
        offer (PriceOffer): observed prices
        params (ModelParams): the environment
        assumption: RECENT_BELIEF or INITIAL_BELIEF

    Returns:
        float
    """
    _check_decision_node(node)
    ref = reference_from_plan(plan, node, offer, params, assumption)
    return action_utility(action, node, plan, ref, params)


def plan_utility(root, node, plan, params, assumption):
    """Expected utility at node of following the plan there as well."""
    utilities = action_utilities(root, node, plan, params, assumption)
    return sum(plan.action_probability(node, action) * eu
               for action, eu in utilities.items())


def standard_utility(outcome, pref):
    """
    Utility of a terminal outcome for a reference-free consumer.

    Args:
        outcome (TerminalOutcome): the terminal reached
        pref: RISK_NEUTRAL or a RiskAverse instance

    Returns:
        float
    """
    return pref.v(outcome.consumer.value + outcome.consumer.money)
