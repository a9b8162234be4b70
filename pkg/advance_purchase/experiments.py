# -*- coding: utf-8 -*-
# Sweeps, the verification suite and text reports.
#
# The closed forms are always reached through the closed_form module attribute,
# so a test can swap a formula out and watch the suite catch it.

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import logging
import os

import numpy as np
import pandas as pd
import scipy.optimize

from advance_purchase import closed_form, solver
from advance_purchase.errors import ApgameError, DomainError
from advance_purchase.model import (
    BUY, REJECT, STATES, WAIT, Flexible, Plan, PriceOffer,
    build_game_tree, enumerate_degenerate_plans, validate_params)
from advance_purchase.preferences import (
    INITIAL_BELIEF, RECENT_BELIEF, RISK_NEUTRAL, RiskAverse, plan_utility)
import advance_purchase.settings

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["p2", "pe_bound", "preferred_bound", "cutoff", "region",
                 "brute_force_cutoff", "abs_gap"]
FAILURE_COLUMNS = ["check", "draw", "H", "L", "q", "lambda_v", "lambda_m",
                   "detail"]

# Draw index used for checks run once on the configured scenario
SCENARIO_DRAW = -1

# Spacing of the kink-detection grid on [0, H]
FIGURE_POINTS = 401
KINK_TOLERANCE = 1e-7
# Spot-stage endpoints are located to this precision
ENDPOINT_XTOL = 1e-11


def _close(a, b, tol):
    return abs(a - b) <= tol


def _params_text(params):
    return "H=%g L=%g q=%g lambda_v=%g lambda_m=%g" % (
        params.H, params.L, params.q, params.lambda_v, params.lambda_m)


###############################################################################
# Sweep
###############################################################################
def sweep_grid(sweep, params):
    """Evenly spaced spot prices plus the analytic kinks inside the range."""
    grid = np.linspace(sweep.p2_min, sweep.p2_max, sweep.steps)
    kinks = [k for k in closed_form.kink_abscissae(params)
             if sweep.p2_min <= k <= sweep.p2_max]
    return np.unique(np.round(np.concatenate([grid, kinks]), 12))


def run_sweep(config):
    """
    Tabulate the cutoff advance price against the committed spot price, with
    the brute-force cutoff alongside.

    Args:
        config (ScenarioConfig): must carry a sweep range

    Returns:
        pandas.DataFrame with SWEEP_COLUMNS, one row per spot price in
        ascending order
    """
    if config.sweep is None:
        raise DomainError("scenario has no sweep range (set p2_min and p2_max)")

    params = config.params
    model = config.preference_model()
    rows = []

    for p2 in sweep_grid(config.sweep, params):
        p2 = float(p2)
        breakdown = closed_form.cutoff_advance_price(p2, params)
        brute = solver.bisect_cutoff_p1(p2, params, model)
        rows.append({
            "p2": p2,
            "pe_bound": breakdown.pe_bound,
            "preferred_bound": breakdown.preferred_bound,
            "cutoff": breakdown.cutoff,
            "region": breakdown.region.value,
            "brute_force_cutoff": brute,
            "abs_gap": abs(breakdown.cutoff - brute),
        })

    logger.info("swept %d spot prices for %s under %s",
                len(rows), _params_text(params), model)
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def detect_kinks(p2_values, cutoffs, tolerance=KINK_TOLERANCE):
    """
    Grid points next to a slope change of a sampled piecewise linear curve.

    Args:
        p2_values (array-like): evenly spaced abscissae
        cutoffs (array-like): curve values at p2_values
        tolerance (float): second differences up to this size count as zero

    Returns:
        list of abscissae
    """
    x = np.asarray(p2_values, dtype=float)
    y = np.asarray(cutoffs, dtype=float)
    second = np.diff(y, 2)
    flagged = np.nonzero(np.abs(second) > tolerance)[0] + 1
    return [float(x[i]) for i in flagged]


###############################################################################
# Verification checks
#
# Each check takes (params, config) and returns a list of failure details;
# an empty list is a pass.
###############################################################################
def check_oracle_equivalence(params, config):
    failures = []

    for p2 in np.linspace(0.0, 1.5 * params.H,
                          advance_purchase.settings.VERIFY_P2_POINTS):
        formula = closed_form.cutoff_advance_price(float(p2), params).cutoff
        brute = solver.bisect_cutoff_p1(float(p2), params, RECENT_BELIEF)

        if not _close(formula, brute, advance_purchase.settings.ORACLE_TOLERANCE):
            failures.append("p2=%.9f closed form %.9f brute force %.9f"
                            % (p2, formula, brute))

    return failures


def check_flexible_oracle(params, config):
    formula = closed_form.optimal_pricing_flexible(params).p1
    brute = solver.bisect_cutoff_p1(Flexible(params.H, params.L), params,
                                    RECENT_BELIEF)

    if not _close(formula, brute, advance_purchase.settings.ORACLE_TOLERANCE):
        return ["flexible cutoff closed form %.9f brute force %.9f"
                % (formula, brute)]

    return []


def _endpoint(indicator, lo, hi):
    return scipy.optimize.bisect(lambda p: 1.0 if indicator(p) else -1.0,
                                 lo, hi, xtol=ENDPOINT_XTOL)


def check_spot_rule(params, config):
    failures = []
    neutral = params.replace(lambda_v=0.0, lambda_m=0.0)
    strong = params.replace(lambda_v=3.0, lambda_m=3.0)

    for state in STATES:
        value = params.value(state)

        for price in (0.0, 0.5 * value, value, value * (1 + 1e-6),
                      1.5 * value, 3.0 * value):
            expected = solver.spot_ppe_action(state, price, params)
            rule = BUY if price <= value else REJECT

            for variant in (params, neutral, strong):
                brute, credible = solver.spot_ppe_by_enumeration(
                    state, price, variant)

                if brute != expected or brute != rule:
                    failures.append("%s p2=%.9f rule %s brute force %s (%s)"
                                    % (state, price, rule, brute,
                                       _params_text(variant)))

                formula_set = solver.spot_credible_action_set(state, price, variant)
                # Exactly at an endpoint the tolerance decides; skip those.
                if (min(abs(price - end) for end in
                        solver.spot_credible_interval(state, variant)) > 1e-6
                        and credible != formula_set):
                    failures.append("%s p2=%.9f credible set %s vs %s" % (
                        state, price, sorted(credible), sorted(formula_set)))

        low, high = solver.spot_credible_interval(state, params)
        brute_low = _endpoint(
            lambda p: REJECT not in solver.spot_ppe_by_enumeration(
                state, p, params, eps=0.0)[1], 0.0, 2 * value)
        brute_high = _endpoint(
            lambda p: BUY in solver.spot_ppe_by_enumeration(
                state, p, params, eps=0.0)[1],
            0.0, (2 + params.lambda_v) * value)

        for name, formula, brute in (("reject", low, brute_low),
                                     ("buy", high, brute_high)):
            if not _close(formula, brute, advance_purchase.settings.EPSILON):
                failures.append("%s %s endpoint %.12f brute force %.12f"
                                % (state, name, formula, brute))

    return failures


def check_risk_neutral_benchmark(params, config):
    failures = []
    neutral = params.replace(lambda_v=0.0, lambda_m=0.0)
    E = neutral.expected_value
    eps = advance_purchase.settings.EPSILON
    tol = advance_purchase.settings.ORACLE_TOLERANCE

    commit = closed_form.optimal_pricing_commit(neutral)
    if not _close(commit.p1, E, eps):
        failures.append("committed price %.12f != E %.12f" % (commit.p1, E))

    decision = closed_form.commitment_decision(neutral)
    if abs(decision.gap) > eps or decision.choice != closed_form.INDIFFERENT:
        failures.append("commitment %s with gap %.12g" % (decision.choice,
                                                          decision.gap))

    for model in (RISK_NEUTRAL, RECENT_BELIEF):
        brute = solver.bisect_cutoff_p1(neutral.H, neutral, model)
        if not _close(brute, E, tol):
            failures.append("%s cutoff %.9f != E %.9f" % (model, brute, E))

    for offer in (PriceOffer.committed(E, neutral.H),
                  PriceOffer.flexible(E, neutral.H, neutral.L)):
        result = solver.solve_standard(neutral, offer, RISK_NEUTRAL)
        if not result.prepurchases or not _close(
                result.seller_expected_profit, E, eps):
            failures.append("risk-neutral consumer at %r: %r" % (offer, result.plan))

    return failures


def check_optimal_commit(params, config):
    failures = []
    recommendation = closed_form.optimal_pricing_commit(params)
    E = params.expected_value

    if params.lambda_v > 0 or params.lambda_m > 0:
        if not recommendation.p1 > E:
            failures.append("committed price %.12f not above E %.12f"
                            % (recommendation.p1, E))

    result = solver.solve_ppe(params, recommendation.offer, RECENT_BELIEF)
    if not result.prepurchases:
        failures.append("no pre-purchase at the optimal offer, plan %r"
                        % (result.plan,))
    elif not _close(result.seller_expected_profit, recommendation.p1,
                    advance_purchase.settings.EPSILON):
        failures.append("profit %.12f != p1 %.12f"
                        % (result.seller_expected_profit, recommendation.p1))

    return failures


def above_value_grid(params):
    """Spot prices from 0 to 3H, H included."""
    return np.unique(np.append(np.linspace(0.0, 3 * params.H, 61), params.H))


def spot_price_above_value_failures(params, grid):
    failures = []
    H, E = params.H, params.expected_value
    breakdowns = [closed_form.cutoff_advance_price(float(p2), params)
                  for p2 in grid]
    cutoffs = np.array([b.cutoff for b in breakdowns])
    # Prices within EPSILON of H belong to the mid_high region.
    above_h = np.array([b.region is closed_form.Region.ABOVE_H
                        for b in breakdowns])
    at_h = closed_form.cutoff_advance_price(H, params).cutoff

    if cutoffs.max() > at_h + 1e-12:
        failures.append("cutoff %.9f at p2=%.9f exceeds the value at H %.9f"
                        % (cutoffs.max(), grid[cutoffs.argmax()], at_h))

    below = cutoffs[~above_h]
    if np.any(np.diff(below) < -1e-12):
        failures.append("cutoff decreases on [0, H]")

    above = cutoffs[above_h]
    flat = max(closed_form.single_stage_cutoff(params), E / (1 + params.lambda_m))

    if not np.allclose(above, flat, rtol=0.0,
                       atol=advance_purchase.settings.EPSILON):
        failures.append("cutoff above H is not flat at %.9f" % flat)

    if params.lambda_v > 0 and params.lambda_m > 0 and not np.all(above < E):
        failures.append("cutoff above H not below E %.9f" % E)

    if (closed_form.single_stage_cutoff(params) >= E / (1 + params.lambda_m)
            and not np.allclose(above, closed_form.single_stage_cutoff(params),
                                rtol=0.0, atol=advance_purchase.settings.EPSILON)):
        failures.append("cutoff above H differs from the single-stage cutoff")

    return failures


def check_spot_price_above_value(params, config):
    return spot_price_above_value_failures(params, above_value_grid(params))


def check_comparative_statics(params, config):
    failures = []

    for name in ("lambda_v", "lambda_m"):
        values = [closed_form.cutoff_advance_price(
                      params.H, params.replace(**{name: float(lam)})).cutoff
                  for lam in advance_purchase.settings.VERIFY_LAMBDA_GRID]

        if np.any(np.diff(values) < -1e-12):
            failures.append("cutoff at H decreases in %s: %s" % (
                name, ", ".join("%.9f" % v for v in values)))

    return failures


def check_commitment(params, config):
    failures = []
    eps = advance_purchase.settings.EPSILON
    decision = closed_form.commitment_decision(params)
    E = params.expected_value

    if params.lambda_v > 0 and not decision.gap > 0:
        failures.append("gap %.12g not positive" % decision.gap)

    if params.lambda_v >= 0.1 and (decision.gap <= eps
                                   or decision.choice != closed_form.COMMIT):
        failures.append("expected commit, got %s with gap %.12g"
                        % (decision.choice, decision.gap))

    if params.lambda_m > 0 and not decision.flexible_profit > E:
        failures.append("flexible profit %.12f not above E %.12f"
                        % (decision.flexible_profit, E))

    no_value_loss = closed_form.commitment_decision(params.replace(lambda_v=0.0))
    if abs(no_value_loss.gap) > eps:
        failures.append("gap %.12g with lambda_v=0" % no_value_loss.gap)

    return failures


def check_risk_aversion(params, config):
    failures = []
    E = params.expected_value

    for a in advance_purchase.settings.VERIFY_CURVATURES:
        cutoff = closed_form.risk_averse_cutoff(params, a)

        if not cutoff < E:
            failures.append("a=%g cutoff %.9f not below E %.9f" % (a, cutoff, E))

        brute = solver.bisect_cutoff_p1(params.H, params, RiskAverse(a))
        if not _close(cutoff, brute, advance_purchase.settings.ORACLE_TOLERANCE):
            failures.append("a=%g cutoff %.9f brute force %.9f" % (a, cutoff, brute))

        decision = closed_form.risk_averse_commitment(params, a)
        if decision.choice != closed_form.FLEXIBLE or not decision.gap < 0:
            failures.append("a=%g commitment %s gap %.9f"
                            % (a, decision.choice, decision.gap))

    small = closed_form.risk_averse_cutoff(
        params, advance_purchase.settings.VERIFY_SMALL_CURVATURE)
    if not _close(small, E, 1e-3):
        failures.append("near risk-neutral cutoff %.9f far from E %.9f" % (small, E))

    return failures


def _expectation_identity_failures(params, offer):
    failures = []
    root = build_game_tree(params, offer)
    wait = root.child(WAIT)

    for plan in enumerate_degenerate_plans():
        if plan.advance_action != 0:
            continue

        at_root = plan_utility(root, root, plan, params, INITIAL_BELIEF)
        by_state = sum(
            params.probability(state) * plan_utility(
                root, wait.child(state), plan, params, INITIAL_BELIEF)
            for state in STATES)

        if not _close(at_root, by_state, advance_purchase.settings.EPSILON):
            failures.append("plan %r at %r: T1 %.12f vs spot nodes %.12f"
                            % (plan, offer, at_root, by_state))

    return failures


def check_static_reference(params, config):
    failures = []
    E = params.expected_value
    bound = closed_form.static_credible_bound(params)
    brute = solver.bisect_cutoff_p1(params.H, params, INITIAL_BELIEF)

    if brute > bound + advance_purchase.settings.ORACLE_TOLERANCE:
        failures.append("static cutoff %.9f above bound %.9f" % (brute, bound))

    if params.lambda_v > 0:
        result = solver.solve_ppe(params, PriceOffer.committed(E, params.H),
                                  INITIAL_BELIEF)
        if result.plan != Plan(0.0, 0.0, 0.0):
            failures.append("static PPE at (E, H) is %r, not never-purchase"
                            % (result.plan,))

    optimal = closed_form.optimal_pricing_commit(params).offer
    for offer in (PriceOffer.committed(E, params.H), optimal):
        failures.extend(_expectation_identity_failures(params, offer))

    return failures


def check_mixed_plans(params, config):
    failures = []
    offer = closed_form.optimal_pricing_commit(params).offer

    for assumption in (RECENT_BELIEF, INITIAL_BELIEF):
        if not solver.grid_mixed_plan_check(params, offer, config.grid_step,
                                            assumption):
            failures.append("a grid plan beats the degenerate PPE at %r under %s"
                            % (offer, assumption))

    return failures


def check_figure_shape(params, config):
    """Piecewise linearity, kink locations and the drop just above H."""
    failures = []
    H, E = params.H, params.expected_value
    grid = np.linspace(0.0, H, FIGURE_POINTS)
    cutoffs = [closed_form.cutoff_advance_price(float(p2), params).cutoff
               for p2 in grid]
    expected = closed_form.expected_kinks(params)
    spacing = grid[1] - grid[0]

    for kink in detect_kinks(grid, cutoffs):
        if not expected or min(abs(kink - k) for k in expected) > spacing + 1e-12:
            failures.append("unexpected kink near p2=%.9f" % kink)

    tol = advance_purchase.settings.ORACLE_TOLERANCE

    for kink in expected:
        left = closed_form.cutoff_advance_price(kink - 1e-7, params).cutoff
        right = closed_form.cutoff_advance_price(kink + 1e-7, params).cutoff

        if _close(kink, params.L, advance_purchase.settings.EPSILON):
            # Waiting forgoes consumption in state L just above L: the cutoff
            # jumps up there.
            if not _close(left, params.L, tol) or right < left - tol:
                failures.append("cutoff at L: left %.9f right %.9f"
                                % (left, right))
        elif not _close(left, right, tol):
            failures.append("discontinuity at p2=%.9f (%.9f vs %.9f)"
                            % (kink, left, right))

    at_h = closed_form.cutoff_advance_price(H, params).cutoff
    above = closed_form.cutoff_advance_price(H + 1e-6, params).cutoff
    single_stage = closed_form.single_stage_cutoff(params)
    floor = E / (1 + params.lambda_m)

    if floor <= single_stage:
        q = params.q
        drop = params.lambda_v * q * (1 - q) * (H - params.L) + (at_h - E)
    else:
        drop = at_h - floor

    if not _close(at_h - above, drop, advance_purchase.settings.ORACLE_TOLERANCE):
        failures.append("drop above H %.9f, expected %.9f" % (at_h - above, drop))

    return failures


DRAW_CHECKS = [
    ("oracle_equivalence", check_oracle_equivalence),
    ("flexible_oracle", check_flexible_oracle),
    ("spot_rule", check_spot_rule),
    ("risk_neutral_benchmark", check_risk_neutral_benchmark),
    ("optimal_commit", check_optimal_commit),
    ("spot_price_above_value", check_spot_price_above_value),
    ("comparative_statics", check_comparative_statics),
    ("commitment", check_commitment),
    ("risk_aversion", check_risk_aversion),
    ("static_reference", check_static_reference),
    ("mixed_plan_audit", check_mixed_plans),
]

SCENARIO_CHECKS = [
    ("figure_shape", check_figure_shape),
]


def draw_params(rng):
    """
    One random environment from the verification ranges.

    Args:
        rng (numpy.random.Generator): the seeded generator

    Returns:
        ModelParams
    """
    settings = advance_purchase.settings
    H = rng.uniform(*settings.VERIFY_H_RANGE)
    L = 0.0

    while L <= 0.0:
        L = H * rng.uniform(0.0, 1.0)

    return validate_params(
        H, L, rng.uniform(*settings.VERIFY_Q_RANGE),
        rng.uniform(*settings.VERIFY_LAMBDA_RANGE),
        rng.uniform(*settings.VERIFY_LAMBDA_RANGE))


@dataclass
class VerificationReport:
    seed: int
    draws: int
    counts: dict = field(default_factory=dict)
    failures: pd.DataFrame = None

    @property
    def ok(self):
        return self.failures is None or self.failures.empty

    def text(self):
        lines = ["verification seed=%d draws=%d" % (self.seed, self.draws)]
        width = max(len(name) for name in self.counts)

        for name, (passed, run) in self.counts.items():
            lines.append("  %-*s %d/%d" % (width, name, passed, run))

        if self.ok:
            lines.append("all checks passed")
        else:
            lines.append("%d failure(s):" % len(self.failures))

            for row in self.failures.itertuples(index=False):
                lines.append("  [%s] draw %d (H=%.9f L=%.9f q=%.9f lambda_v=%.9f "
                             "lambda_m=%.9f): %s" % (
                                 row.check, row.draw, row.H, row.L, row.q,
                                 row.lambda_v, row.lambda_m, row.detail))

        return "\n".join(lines)


def _check_details(check, params, config):
    try:
        return check(params, config)
    except ApgameError as err:
        return ["%s: %s" % (type(err).__name__, err)]


def _record(name, details, params, draw, counts, failures):
    passed, run = counts.get(name, (0, 0))
    counts[name] = (passed + (0 if details else 1), run + 1)

    for detail in details:
        logger.error("%s failed on draw %d (%s): %s",
                     name, draw, _params_text(params), detail)
        failures.append({
            "check": name, "draw": draw, "H": params.H, "L": params.L,
            "q": params.q, "lambda_v": params.lambda_v,
            "lambda_m": params.lambda_m, "detail": detail})


def verify_draw(draw, params, config):
    """
    Run the per-draw checks on one environment.

    Returns:
        list of (check name, failure details) in DRAW_CHECKS order
    """
    results = []

    for name, check in DRAW_CHECKS:
        if (check is check_mixed_plans
                and draw >= advance_purchase.settings.VERIFY_MIXED_DRAWS):
            continue
        results.append((name, _check_details(check, params, config)))

    return results


def _draw_results(draws, config, workers):
    if workers <= 1 or len(draws) <= 1:
        return [verify_draw(draw, params, config) for draw, params in draws]

    indices, environments = zip(*draws)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        # map yields in submission order
        return list(executor.map(verify_draw, indices, environments,
                                 [config] * len(draws), chunksize=4))


def run_verification(config, seed=advance_purchase.settings.DEFAULT_SEED,
                     workers=None):
    """
    Run every check over seeded random environments, plus the scenario checks
    on the configured environment.

    Draws are generated up front from one generator, so the report does not
    depend on the number of worker processes.

    Args:
        config (ScenarioConfig): supplies the draw count and mixed-plan grid
        seed (int): seed for numpy.random.default_rng
        workers (int): processes evaluating draws; settings.VERIFY_WORKERS
            when omitted, 1 runs everything in this process

    Returns:
        VerificationReport
    """
    if workers is None:
        workers = (advance_purchase.settings.VERIFY_WORKERS
                   or os.cpu_count() or 1)
    if workers < 1:
        raise DomainError("workers must be at least 1, got %r" % (workers,))

    rng = np.random.default_rng(seed)
    draws = [(draw, draw_params(rng)) for draw in range(config.draws)]
    counts = {}
    failures = []

    logger.info("verifying %d draws with %d worker(s)", len(draws), workers)
    for (draw, params), results in zip(draws,
                                       _draw_results(draws, config, workers)):
        logger.info("draw %d: %s", draw, _params_text(params))

        for name, details in results:
            _record(name, details, params, draw, counts, failures)

    for name, check in SCENARIO_CHECKS:
        _record(name, _check_details(check, config.params, config),
                config.params, SCENARIO_DRAW, counts, failures)

    return VerificationReport(
        seed=seed, draws=config.draws, counts=counts,
        failures=pd.DataFrame(failures, columns=FAILURE_COLUMNS))


###############################################################################
# Text reports
###############################################################################
def _pricing_line(label, recommendation):
    regime = recommendation.regime

    if isinstance(regime, Flexible):
        prices = "p2_H=%.9f p2_L=%.9f" % (regime.p2_H, regime.p2_L)
    else:
        prices = "p2=%.9f" % regime.p2

    return "%s: p1=%.9f %s profit=%.9f" % (
        label, recommendation.p1, prices, recommendation.expected_profit)


def _decision_line(label, decision):
    return "%s: %s (commit profit %.9f, flexible profit %.9f, gap %.9f)" % (
        label, decision.choice, decision.commit_profit,
        decision.flexible_profit, decision.gap)


def report_scenario(config):
    """
    Optimal pricing with and without commitment and the benchmark cutoffs for
    the configured environment.

    Returns:
        str
    """
    params = config.params
    lines = [
        "scenario: %s (expected value %.9f)" % (_params_text(params),
                                                params.expected_value),
        _pricing_line("optimal committed pricing",
                      closed_form.optimal_pricing_commit(params)),
        _pricing_line("optimal flexible pricing",
                      closed_form.optimal_pricing_flexible(params)),
        _decision_line("commitment decision",
                       closed_form.commitment_decision(params)),
        "static-reference cutoff bound: %.9f"
        % closed_form.static_reference_bound(params),
        "static-reference credible bound: %.9f"
        % closed_form.static_credible_bound(params),
        "single-stage cutoff (no spot market): %.9f"
        % closed_form.single_stage_cutoff(params),
    ]

    if config.preference == "risk_averse":
        a = config.curvature
        lines.append("risk-averse cutoff (a=%g): %.9f"
                     % (a, closed_form.risk_averse_cutoff(params, a)))
        lines.append(_decision_line("risk-averse commitment decision (a=%g)" % a,
                                    closed_form.risk_averse_commitment(params, a)))

    return "\n".join(lines)


def cutoff_report(config, p2):
    """Closed-form breakdown and brute-force cutoff at one spot price."""
    params = config.params
    model = config.preference_model()
    breakdown = closed_form.cutoff_advance_price(p2, params)
    brute = solver.bisect_cutoff_p1(p2, params, model)
    return "\n".join([
        "p2: %.9f (region %s)" % (p2, breakdown.region.value),
        "credible pre-purchase bound: %.9f" % breakdown.pe_bound,
        "preferred pre-purchase bound: %.9f" % breakdown.preferred_bound,
        "wait credibility floor: %.9f" % breakdown.wait_floor,
        "cutoff: %.9f" % breakdown.cutoff,
        "brute-force cutoff (%s): %.9f" % (model, brute),
        "abs gap: %.9f" % abs(breakdown.cutoff - brute),
    ])


def optimal_report(config):
    """Recommended offers for the configured regime, confirmed by brute force."""
    params = config.params
    model = config.preference_model()
    recommendations = []

    if config.regime in ("committed", "both"):
        recommendations.append(("optimal committed pricing",
                                closed_form.optimal_pricing_commit(params)))

    if config.regime in ("flexible", "both"):
        recommendations.append(("optimal flexible pricing",
                                closed_form.optimal_pricing_flexible(params)))

    lines = []

    for label, recommendation in recommendations:
        lines.append(_pricing_line(label, recommendation))
        brute = solver.bisect_cutoff_p1(recommendation.regime, params, model)
        lines.append("  brute-force cutoff at these spot prices (%s): %.9f"
                     % (model, brute))

    if config.regime == "both":
        lines.append(_decision_line("commitment decision",
                                    closed_form.commitment_decision(params)))

    return "\n".join(lines)

