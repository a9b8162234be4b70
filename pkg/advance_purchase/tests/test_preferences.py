# -*- coding: utf-8 -*-

import math

from hypothesis import given, settings, strategies as st
import pytest

from advance_purchase.errors import DomainError, InvalidAction
from advance_purchase.model import (
    BUY, PREPURCHASE, REJECT, STATES, WAIT, Payoff2D, Plan, PriceOffer,
    TerminalOutcome, build_game_tree, enumerate_degenerate_plans,
    terminal_distribution)
from advance_purchase.preferences import (
    INITIAL_BELIEF, RECENT_BELIEF, RISK_NEUTRAL, ReferenceDistribution,
    RiskAverse, expected_utility, plan_utility, preference_from_tag,
    reference_from_plan, riskless_utility, standard_utility)
from . import factories


def outcome(value, money):
    return TerminalOutcome(Payoff2D(value, money), -money, ())


class TestRisklessUtility:
    """Loss-only utility, bracketed per dimension"""

    def test_payoff_equal_to_reference(self):
        """No loss when the payoff matches a degenerate reference"""
        report = riskless_utility(Payoff2D(10, -7),
                                  ReferenceDistribution.degenerate(10, -7),
                                  factories.ModelParamsFactory())

        assert report.total == pytest.approx(3.0)
        assert report.loss_value == 0
        assert report.loss_money == 0

    def test_value_loss(self):
        """Falling short of a higher reference point in value"""
        ref = ReferenceDistribution.from_marginals([(0.5, 10), (0.5, 4)],
                                                   [(1.0, -7)])
        report = riskless_utility(Payoff2D(4, -7), ref,
                                  factories.ModelParamsFactory())

        assert report.value_part == pytest.approx(1.0)
        assert report.money_part == pytest.approx(-7.0)
        assert report.total == pytest.approx(-6.0)

    def test_no_consumption(self):
        """Going without the good loses the expected value times lambda_v"""
        ref = ReferenceDistribution.from_marginals([(0.5, 10), (0.5, 4)],
                                                   [(1.0, 0)])
        report = riskless_utility(Payoff2D(0, 0), ref,
                                  factories.ModelParamsFactory())

        assert report.total == pytest.approx(-7.0)
        assert report.total == pytest.approx(report.value_part + report.money_part)

    def test_gains_carry_no_weight(self):
        """Beating every reference point adds nothing beyond the payoff"""
        ref = ReferenceDistribution.degenerate(0, -10)
        report = riskless_utility(Payoff2D(10, -7), ref,
                                  factories.ModelParamsFactory())

        assert report.total == pytest.approx(3.0)

    def test_narrow_bracketing_scales_money_only(self):
        """Scaling the money dimension leaves the value part alone"""
        params = factories.ModelParamsFactory()
        ref = ReferenceDistribution.from_marginals([(0.5, 10), (0.5, 4)],
                                                   [(0.5, -7), (0.5, -3)])
        scaled = ReferenceDistribution.from_marginals([(0.5, 10), (0.5, 4)],
                                                      [(0.5, -14), (0.5, -6)])
        base = riskless_utility(Payoff2D(4, -5), ref, params)
        doubled = riskless_utility(Payoff2D(4, -10), scaled, params)

        assert doubled.value_part == pytest.approx(base.value_part)
        assert doubled.money_part == pytest.approx(2 * base.money_part)


class TestReferenceDistribution:
    """Canonical marginals"""

    def test_merges_and_sorts(self):
        """Equal points merge; zero-probability points disappear"""
        ref = ReferenceDistribution.from_marginals(
            [(0.25, 10), (0.5, 4), (0.25, 10), (0.0, 7)], [(1.0, -7)])

        assert ref.value_marginal == ((0.5, 4.0), (0.5, 10.0))

    def test_rejects_bad_total(self):
        """Probabilities must sum to one"""
        with pytest.raises(DomainError):
            ReferenceDistribution(((0.5, 10.0),), ((1.0, 0.0),))


class TestReferenceFromPlan:
    """Reference timing under the two belief assumptions"""

    def setup_method(self):
        self.params = factories.ModelParamsFactory()
        self.offer = factories.PriceOfferFactory()
        self.root = build_game_tree(self.params, self.offer)

    def test_prepurchase_plan_at_root(self):
        """Pre-purchase plan: value follows the state, money is -p1"""
        ref = reference_from_plan(Plan(1, 0, 0), self.root, self.offer,
                                  self.params, RECENT_BELIEF)

        assert ref.value_marginal == ((0.5, 4.0), (0.5, 10.0))
        assert ref.money_marginal == ((1.0, -7.0),)

    def test_recent_belief_at_spot_node(self):
        """Recent belief conditions on the spot node"""
        node = self.root.child(WAIT).child("H")
        ref = reference_from_plan(Plan(0, 1, 0), node, self.offer,
                                  self.params, RECENT_BELIEF)

        assert ref.value_marginal == ((1.0, 10.0),)
        assert ref.money_marginal == ((1.0, -10.0),)

    def test_initial_belief_at_spot_node(self):
        """Initial belief keeps the root distribution"""
        node = self.root.child(WAIT).child("L")
        ref = reference_from_plan(Plan(0, 1, 0), node, self.offer,
                                  self.params, INITIAL_BELIEF)

        assert set(ref.value_marginal) == {(0.5, 10.0), (0.5, 0.0)}
        assert set(ref.money_marginal) == {(0.5, -10.0), (0.5, 0.0)}


class TestExpectedUtility:
    """Reference-dependent expected utility"""

    def setup_method(self):
        self.params = factories.ModelParamsFactory()
        self.offer = factories.PriceOfferFactory()
        self.root = build_game_tree(self.params, self.offer)

    def test_prepurchase(self):
        """Pre-purchasing at E loses only the value spread"""
        eu = expected_utility(PREPURCHASE, self.root, Plan(1, 1, 0),
                              self.offer, self.params, RECENT_BELIEF)

        assert eu == pytest.approx(-1.5)

    def test_deviating_to_wait(self):
        """Waiting against a pre-purchase reference"""
        eu = expected_utility(WAIT, self.root, Plan(1, 1, 0),
                              self.offer, self.params, RECENT_BELIEF)

        assert eu == pytest.approx(-4.25)

    def test_spot_node(self):
        """Buying at H for H is worth 0; rejecting loses lambda_v * H"""
        node = self.root.child(WAIT).child("H")
        plan = Plan(0, 1, 0)

        assert expected_utility(BUY, node, plan, self.offer, self.params,
                                RECENT_BELIEF) == pytest.approx(0.0)
        assert expected_utility(REJECT, node, plan, self.offer, self.params,
                                RECENT_BELIEF) == pytest.approx(-10.0)

    def test_invalid_action(self):
        """Spot actions are not available at the root"""
        with pytest.raises(InvalidAction):
            expected_utility(BUY, self.root, Plan(1, 1, 0), self.offer,
                             self.params, RECENT_BELIEF)

    def test_chance_node_is_not_a_decision(self):
        """Chance nodes cannot be queried"""
        with pytest.raises(InvalidAction):
            expected_utility(BUY, self.root.child(WAIT), Plan(1, 1, 0),
                             self.offer, self.params, RECENT_BELIEF)

    @pytest.mark.parametrize("plan", enumerate_degenerate_plans())
    def test_assumptions_agree_at_root(self, plan):
        """Both belief timings use the same reference at T1"""
        for action in (PREPURCHASE, WAIT):
            recent = expected_utility(action, self.root, plan, self.offer,
                                      self.params, RECENT_BELIEF)
            initial = expected_utility(action, self.root, plan, self.offer,
                                       self.params, INITIAL_BELIEF)
            assert recent == pytest.approx(initial)

    @pytest.mark.parametrize("plan", [p for p in enumerate_degenerate_plans()
                                      if p.advance_action == 0])
    def test_initial_belief_expectation_identity(self, plan):
        """Under a fixed reference, T1 utility of waiting averages the spot nodes"""
        wait = self.root.child(WAIT)
        at_root = plan_utility(self.root, self.root, plan, self.params,
                               INITIAL_BELIEF)
        by_state = sum(self.params.probability(s) * plan_utility(
            self.root, wait.child(s), plan, self.params, INITIAL_BELIEF)
            for s in STATES)

        assert at_root == pytest.approx(by_state, abs=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(p1=st.floats(0, 20), p2=st.floats(0, 20),
           a=st.sampled_from([0.0, 0.5, 1.0]),
           buy_h=st.sampled_from([0.0, 1.0]), buy_l=st.sampled_from([0.0, 1.0]))
    def test_no_loss_aversion_is_material_payoff(self, p1, p2, a, buy_h, buy_l):
        """Without loss aversion utility is the expected material payoff"""
        params = factories.ModelParamsFactory(risk_neutral=True)
        offer = PriceOffer.committed(p1, p2)
        root = build_game_tree(params, offer)
        plan = Plan(a, buy_h, buy_l)

        for action in (PREPURCHASE, WAIT):
            material = sum(
                prob * (o.consumer.value + o.consumer.money)
                for prob, o in terminal_distribution(root, plan, action))
            eu = expected_utility(action, root, plan, offer, params,
                                  RECENT_BELIEF)
            assert eu == pytest.approx(material, abs=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(p1=st.floats(0, 20), p2=st.floats(0, 20),
           plan=st.sampled_from(enumerate_degenerate_plans()),
           extra=st.floats(0, 2))
    def test_weakly_decreasing_in_loss_aversion(self, p1, p2, plan, extra):
        """Raising either loss coefficient never raises utility"""
        params = factories.ModelParamsFactory()
        offer = PriceOffer.committed(p1, p2)
        base = expected_utility(PREPURCHASE, build_game_tree(params, offer),
                                plan, offer, params, RECENT_BELIEF)

        for name in ("lambda_v", "lambda_m"):
            more = params.replace(**{name: getattr(params, name) + extra})
            root = build_game_tree(more, offer)
            assert expected_utility(PREPURCHASE, root, plan, offer, more,
                                    RECENT_BELIEF) <= base + 1e-9


class TestStandardUtility:
    """Reference-free benchmarks"""

    def test_risk_neutral(self):
        """Net material payoff"""
        assert standard_utility(outcome(10, -7), RISK_NEUTRAL) == pytest.approx(3)

    def test_risk_averse_zero(self):
        """v(0) = 0"""
        assert standard_utility(outcome(0, 0), RiskAverse(1.0)) == 0

    def test_risk_averse_loss(self):
        """v(-3) = 1 - e^3 for a = 1"""
        assert standard_utility(outcome(4, -7), RiskAverse(1.0)) == pytest.approx(
            1 - math.exp(3), rel=1e-9)

    def test_curvature_must_be_positive(self):
        """CARA needs a > 0"""
        with pytest.raises(DomainError):
            RiskAverse(0.0)

    def test_preference_from_tag(self):
        """Tags resolve to models; risk_averse needs a curvature"""
        assert preference_from_tag("kr_recent") is RECENT_BELIEF
        assert preference_from_tag("kr_initial") is INITIAL_BELIEF
        assert preference_from_tag("risk_averse", 2.0) == RiskAverse(2.0)

        with pytest.raises(DomainError):
            preference_from_tag("risk_averse")

        with pytest.raises(DomainError):
            preference_from_tag("cpe")
