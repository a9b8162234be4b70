# -*- coding: utf-8 -*-
from pathlib import Path

import factory

from advance_purchase.config import ScenarioConfig, SweepRange
from advance_purchase.model import Committed, Flexible, ModelParams, PriceOffer

BASE_PATH = Path(__file__).parent


def test_path(filename):
    return BASE_PATH / "data" / filename


class ModelParamsFactory(factory.Factory):
    """Defaults to the reference environment (10, 4, 0.5, 1, 0.5)"""

    class Meta:
        model = ModelParams

    class Params:
        risk_neutral = factory.Trait(lambda_v=0.0, lambda_m=0.0)
        no_value_loss = factory.Trait(lambda_v=0.0)

    H = 10.0
    L = 4.0
    q = 0.5
    lambda_v = 1.0
    lambda_m = 0.5


class PriceOfferFactory(factory.Factory):
    class Meta:
        model = PriceOffer

    class Params:
        p2 = 10.0
        flexible = factory.Trait(
            regime=factory.LazyFunction(lambda: Flexible(10.0, 4.0)))

    p1 = 7.0
    regime = factory.LazyAttribute(lambda o: Committed(o.p2))


class SweepRangeFactory(factory.Factory):
    class Meta:
        model = SweepRange

    p2_min = 0.0
    p2_max = 12.0
    steps = 25


class ScenarioConfigFactory(factory.Factory):
    class Meta:
        model = ScenarioConfig

    class Params:
        with_sweep = factory.Trait(sweep=factory.SubFactory(SweepRangeFactory))
        risk_averse = factory.Trait(preference="risk_averse", curvature=1.0)

    params = factory.SubFactory(ModelParamsFactory)
    preference = "kr_recent"
    regime = "committed"
    sweep = None
    draws = 1
    grid_step = 0.1
