# -*- coding: utf-8 -*-

from hypothesis import given, settings, strategies as st
import pytest
import scipy.optimize

from advance_purchase import closed_form
from advance_purchase.closed_form import Region
from advance_purchase.errors import BracketError, DomainError
from advance_purchase.model import Committed, Flexible, validate_params
from . import factories


class TestRegions:
    """Spot-price regions"""

    @pytest.mark.parametrize("p2,region", [
        (3.0, Region.BELOW_L),
        (4.0, Region.BELOW_L),
        (6.0, Region.MID_LOW),
        (8.0, Region.MID_LOW),
        (8.5, Region.MID_HIGH),
        (10.0, Region.MID_HIGH),
        (10.5, Region.ABOVE_H),
    ])
    def test_boundaries_join_the_lower_region(self, p2, region):
        """L, the knee (lambda_v + 1) L and H close their regions"""
        assert closed_form.price_region(p2, factories.ModelParamsFactory()) is region

    def test_negative_price(self):
        """Spot prices are non-negative"""
        with pytest.raises(DomainError):
            closed_form.price_region(-1.0, factories.ModelParamsFactory())


class TestCutoffBounds:
    """The bounds that make up the cutoff"""

    @pytest.mark.parametrize("p2,expected", [(6.0, 7.0), (10.0, 9.2), (12.0, 12.5)])
    def test_credible_bound(self, p2, expected):
        """Credibility of pre-purchasing, one value per region"""
        bound = closed_form.credible_prepurchase_bound(
            p2, factories.ModelParamsFactory())

        assert bound == pytest.approx(expected)

    @pytest.mark.parametrize("p2,expected", [(6.0, 6.75), (10.0, 9.25), (12.0, 5.5)])
    def test_preferred_bound(self, p2, expected):
        """Preference for pre-purchasing over the wait plan"""
        bound = closed_form.preferred_prepurchase_bound(
            p2, factories.ModelParamsFactory())

        assert bound == pytest.approx(expected)

    def test_wait_floor(self):
        """Waiting is credible from 7.4 at p2 = 10 and from E/(1+lambda_m) above H"""
        params = factories.ModelParamsFactory()

        assert closed_form.wait_credible_floor(10.0, params) == pytest.approx(7.4)
        assert closed_form.wait_credible_floor(12.0, params) == pytest.approx(7 / 1.5)
        assert closed_form.wait_credible_floor(3.0, params) == 3.0

    def test_cutoff_below_l(self):
        """Below L the consumer pre-purchases whenever p1 <= p2"""
        breakdown = closed_form.cutoff_advance_price(
            3.0, factories.ModelParamsFactory())

        assert breakdown.cutoff == 3.0
        assert breakdown.region is Region.BELOW_L

    def test_cutoff_at_h(self):
        """min(9.2, 9.25)"""
        breakdown = closed_form.cutoff_advance_price(
            10.0, factories.ModelParamsFactory())

        assert breakdown.cutoff == pytest.approx(9.2)
        assert breakdown.pe_bound == pytest.approx(9.2)
        assert breakdown.preferred_bound == pytest.approx(9.25)

    def test_cutoff_above_h(self):
        """Above H the cutoff is flat at the single-stage value"""
        params = factories.ModelParamsFactory()

        for p2 in (10.5, 12.0, 30.0):
            assert closed_form.cutoff_advance_price(p2, params).cutoff == \
                pytest.approx(5.5)

    def test_risk_neutral_cutoff(self):
        """Without loss aversion the cutoff at H is E"""
        params = factories.ModelParamsFactory(risk_neutral=True)

        assert closed_form.cutoff_advance_price(10.0, params).cutoff == \
            pytest.approx(7.0)

    def test_nondecreasing_up_to_h(self):
        """The cutoff never falls as p2 rises to H"""
        params = factories.ModelParamsFactory()
        cutoffs = [closed_form.cutoff_advance_price(p2 / 10, params).cutoff
                   for p2 in range(0, 101)]

        assert all(b >= a - 1e-12 for a, b in zip(cutoffs, cutoffs[1:]))


class TestKinks:
    """Where the cutoff changes slope"""

    def test_crossings(self):
        """The two bounds cross once, at the knee"""
        params = factories.ModelParamsFactory()

        assert closed_form.bound_crossings(params) == [pytest.approx(8.0)]
        assert closed_form.distilled_crossing(params) == pytest.approx(8.0)

    def test_no_crossing_without_money_loss(self):
        """lambda_m = 0 has no crossing"""
        params = factories.ModelParamsFactory(lambda_m=0.0)

        assert closed_form.bound_crossings(params) == []
        assert closed_form.distilled_crossing(params) is None

    def test_expected_kinks(self):
        """L and the knee"""
        params = factories.ModelParamsFactory()

        assert closed_form.expected_kinks(params) == [4.0, 8.0]
        assert closed_form.kink_abscissae(params) == [4.0, 8.0, 10.0]


class TestOptimalPricing:
    """Seller's optimal offers"""

    def test_commit(self):
        """Commit to p2 = H and sell in advance at 9.2"""
        recommendation = closed_form.optimal_pricing_commit(
            factories.ModelParamsFactory())

        assert recommendation.p1 == pytest.approx(9.2)
        assert recommendation.expected_profit == pytest.approx(9.2)
        assert recommendation.regime == Committed(10.0)
        assert recommendation.p2_committed == 10.0
        assert recommendation.p2_flexible is None

    @pytest.mark.parametrize("overrides,expected", [
        ({"risk_neutral": True}, 7.0),
        ({"no_value_loss": True}, 7.6),
    ])
    def test_commit_variants(self, overrides, expected):
        """Risk-neutral and no-value-loss committed prices"""
        params = factories.ModelParamsFactory(**overrides)

        assert closed_form.optimal_pricing_commit(params).p1 == pytest.approx(expected)

    def test_commit_when_h_is_below_the_knee(self):
        """With (lambda_v + 1) L > H the mid_low credibility bound applies"""
        params = validate_params(10, 6, 0.5, 1.0, 0.5)
        expected = min(2 * 0.5 * 6 + 0.5 * 10, 8 + 0.25 * 6 + 0.125 * 10)

        assert closed_form.optimal_pricing_commit(params).p1 == \
            pytest.approx(expected)

    def test_flexible(self):
        """Spot prices at the values, advance price 9.5/1.25"""
        recommendation = closed_form.optimal_pricing_flexible(
            factories.ModelParamsFactory())

        assert recommendation.p1 == pytest.approx(7.6)
        assert recommendation.regime == Flexible(10.0, 4.0)
        assert recommendation.p2_flexible == (10.0, 4.0)
        assert recommendation.offer.p1 == pytest.approx(7.6)

    @pytest.mark.parametrize("overrides,expected", [
        ({"lambda_m": 0.0}, 7.0),
        ({"lambda_m": 0.0, "lambda_v": 2.0}, 7.0),
        ({"lambda_v": 0.0, "lambda_m": 1.0}, 8.0),
    ])
    def test_flexible_variants(self, overrides, expected):
        """No money loss collapses to E"""
        params = factories.ModelParamsFactory(**overrides)

        assert closed_form.optimal_pricing_flexible(params).p1 == \
            pytest.approx(expected)


class TestCommitment:
    """Commit against flexible pricing"""

    def test_commit(self):
        """9.2 against 7.6"""
        decision = closed_form.commitment_decision(factories.ModelParamsFactory())

        assert decision.choice == closed_form.COMMIT
        assert decision.commit_profit == pytest.approx(9.2)
        assert decision.flexible_profit == pytest.approx(7.6)
        assert decision.gap == pytest.approx(1.6)

    @pytest.mark.parametrize("trait", ["no_value_loss", "risk_neutral"])
    def test_indifferent(self, trait):
        """Without value loss both regimes earn the same"""
        decision = closed_form.commitment_decision(
            factories.ModelParamsFactory(**{trait: True}))

        assert decision.choice == closed_form.INDIFFERENT
        assert decision.gap == pytest.approx(0.0, abs=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(H=st.floats(2.0, 20.0), ratio=st.floats(0.05, 0.95),
           q=st.floats(0.05, 0.95), lambda_v=st.floats(0.0, 3.0),
           lambda_m=st.floats(0.0, 3.0))
    def test_commitment_never_loses(self, H, ratio, q, lambda_v, lambda_m):
        """The committed optimum earns at least the flexible one"""
        params = validate_params(H, H * ratio, q, lambda_v, lambda_m)
        decision = closed_form.commitment_decision(params)

        assert decision.gap >= -1e-9


class TestBenchmarks:
    """Reference-free and static-reference benchmarks"""

    def test_static_reference_bound(self):
        """E minus the value spread loss"""
        params = factories.ModelParamsFactory()

        assert closed_form.static_reference_bound(params) == pytest.approx(5.5)
        assert closed_form.static_credible_bound(params) == pytest.approx(5.5)

    def test_static_credible_floor(self):
        """Large lambda_v: the credibility of never purchasing binds"""
        params = factories.ModelParamsFactory(lambda_v=2.5)

        assert closed_form.static_reference_bound(params) == pytest.approx(3.25)
        assert closed_form.static_credible_bound(params) == pytest.approx(7 / 1.5)

    def test_single_stage(self):
        """No spot market: E - (1-q) lambda_v q (H - L)"""
        assert closed_form.single_stage_cutoff(
            factories.ModelParamsFactory()) == pytest.approx(5.5)
        assert closed_form.single_stage_cutoff(
            factories.ModelParamsFactory(risk_neutral=True)) == pytest.approx(7.0)

    @pytest.mark.parametrize("a,low,high", [
        (1.0, 4.6897, 4.6917),
        (1e-6, 6.999, 7.001),
        (5.0, 4.0, 4.2),
    ])
    def test_risk_averse_cutoff(self, a, low, high):
        """CARA cutoffs lie between L and E and approach E as a shrinks"""
        cutoff = closed_form.risk_averse_cutoff(factories.ModelParamsFactory(), a)

        assert low < cutoff < high

    def test_risk_averse_bracket_error(self, monkeypatch):
        """A failed bracket surfaces as BracketError"""
        def no_sign_change(*args, **kwargs):
            raise ValueError("f(a) and f(b) must have different signs")

        monkeypatch.setattr(scipy.optimize, "bisect", no_sign_change)

        with pytest.raises(BracketError):
            closed_form.risk_averse_cutoff(factories.ModelParamsFactory(), 1.0)

    def test_risk_averse_commitment(self):
        """Flexible spot prices extract E from a CARA consumer"""
        decision = closed_form.risk_averse_commitment(
            factories.ModelParamsFactory(), 1.0)

        assert decision.choice == closed_form.FLEXIBLE
        assert decision.commit_profit == pytest.approx(5.0)
        assert decision.flexible_profit == pytest.approx(7.0)
        assert decision.gap < 0
