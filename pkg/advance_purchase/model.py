# -*- coding: utf-8 -*-
# The advance-purchase game: primitives, the seller's offer, the extensive form
# and the consumer's plan space.
#
# A monopolist offers an advance price and a spot-price regime. The consumer
# decides at T1 whether to pre-purchase or wait, chance draws the state H or L,
# and a consumer who waited decides at T2 whether to buy at the spot price.

from dataclasses import dataclass, field, replace
import functools
import itertools
import math
from types import MappingProxyType

from advance_purchase.errors import DomainError

STATE_H = "H"
STATE_L = "L"
STATES = (STATE_H, STATE_L)

PREPURCHASE = "prepurchase"
WAIT = "wait"
BUY = "buy"
REJECT = "reject"

ADVANCE_ACTIONS = (PREPURCHASE, WAIT)
SPOT_ACTIONS = (BUY, REJECT)

ROOT_ID = "T1"


def spot_node_id(state):
    return "T2%s" % state


@dataclass(frozen=True)
class ModelParams:
    """Primitives of the environment."""

    H: float
    L: float
    q: float
    lambda_v: float
    lambda_m: float

    def __post_init__(self):
        for name in ("H", "L", "q", "lambda_v", "lambda_m"):
            value = getattr(self, name)

            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError("%s must be a finite real, got %r" % (name, value))

        if self.H <= self.L:
            raise DomainError("H <= L (H=%s, L=%s)" % (self.H, self.L))

        if self.L <= 0:
            raise DomainError("L <= 0 (L=%s)" % self.L)

        if not 0 < self.q < 1:
            raise DomainError("q not in (0, 1) (q=%s)" % self.q)

        if self.lambda_v < 0:
            raise DomainError("lambda_v < 0 (lambda_v=%s)" % self.lambda_v)

        if self.lambda_m < 0:
            raise DomainError("lambda_m < 0 (lambda_m=%s)" % self.lambda_m)

    @property
    def expected_value(self):
        return self.q * self.H + (1 - self.q) * self.L

    def value(self, state):
        """Consumption value in a state of nature."""
        return self.H if state == STATE_H else self.L

    def probability(self, state):
        return self.q if state == STATE_H else 1 - self.q

    def replace(self, **changes):
        return replace(self, **changes)

    def __repr__(self):
        return "ModelParams(H=%g, L=%g, q=%g, lambda_v=%g, lambda_m=%g)" % (
            self.H, self.L, self.q, self.lambda_v, self.lambda_m)


def validate_params(H, L, q, lambda_v, lambda_m):
    """
    Build ModelParams from raw numbers.

    Args:
        H (float): high consumption value
        L (float): low consumption value
        q (float): probability of state H
        lambda_v (float): value-dimension loss coefficient
        lambda_m (float): monetary-dimension loss coefficient

    Returns:
        ModelParams

    Raises:
        DomainError naming the violated constraint
    """
    raw = {"H": H, "L": L, "q": q, "lambda_v": lambda_v, "lambda_m": lambda_m}
    converted = {}

    for name, value in raw.items():
        try:
            converted[name] = float(value)
        except (TypeError, ValueError):
            raise DomainError("%s must be a real number, got %r" % (name, value))

    return ModelParams(**converted)


def _check_price(name, price):
    if not isinstance(price, (int, float)) or not math.isfinite(price):
        raise DomainError("%s must be a finite real, got %r" % (name, price))

    if price < 0:
        raise DomainError("%s must be non-negative, got %s" % (name, price))


@dataclass(frozen=True)
class Committed:
    """Spot price fixed before T1."""

    p2: float
    kind = "committed"

    def __post_init__(self):
        _check_price("p2", self.p2)

    def price(self, state):
        return self.p2


@dataclass(frozen=True)
class Flexible:
    """State-contingent spot prices set after the seller learns the state."""

    p2_H: float
    p2_L: float
    kind = "flexible"

    def __post_init__(self):
        _check_price("p2_H", self.p2_H)
        _check_price("p2_L", self.p2_L)

    def price(self, state):
        return self.p2_H if state == STATE_H else self.p2_L


@dataclass(frozen=True)
class PriceOffer:
    """The seller's action: an advance price and a spot-price regime."""

    p1: float
    regime: object

    def __post_init__(self):
        _check_price("p1", self.p1)

        if not isinstance(self.regime, (Committed, Flexible)):
            raise DomainError("unknown spot-price regime %r" % (self.regime,))

    @classmethod
    def committed(cls, p1, p2):
        return cls(p1, Committed(p2))

    @classmethod
    def flexible(cls, p1, p2_H, p2_L):
        return cls(p1, Flexible(p2_H, p2_L))

    def spot_price(self, state):
        return self.regime.price(state)

    def with_p1(self, p1):
        return PriceOffer(p1, self.regime)


@dataclass(frozen=True)
class Payoff2D:
    """Consumer material payoff in the value and monetary dimensions."""

    value: float
    money: float


@dataclass(frozen=True)
class TerminalOutcome:
    consumer: Payoff2D
    seller_profit: float
    path: tuple


@dataclass(frozen=True)
class AdvanceStage:
    pass


@dataclass(frozen=True)
class ChanceStage:
    """Nature's move; probabilities keyed by state."""

    probabilities: tuple


@dataclass(frozen=True)
class SpotStage:
    state: str


@dataclass(frozen=True)
class Terminal:
    outcome: TerminalOutcome


@dataclass(frozen=True, eq=False)
class GameNode:
    id: str
    stage: object
    children: MappingProxyType = field(
        default_factory=lambda: MappingProxyType({}))

    @property
    def is_decision(self):
        return isinstance(self.stage, (AdvanceStage, SpotStage))

    @property
    def is_terminal(self):
        return isinstance(self.stage, Terminal)

    def actions(self):
        """Labels of the moves available at this node, in tree order."""
        return tuple(self.children)

    def child(self, action):
        return self.children[action]

    def __repr__(self):
        return "GameNode(%s, %s)" % (self.id, type(self.stage).__name__)


def _node(node_id, stage, children=None):
    return GameNode(node_id, stage, MappingProxyType(dict(children or {})))


def _terminal(path, value, price):
    """A terminal reached by paying `price` for consumption `value`."""
    outcome = TerminalOutcome(
        consumer=Payoff2D(value, -price if price else 0.0),
        seller_profit=price,
        path=tuple(path))
    return _node(path[-1], Terminal(outcome))


@functools.lru_cache(maxsize=8192)
def build_game_tree(params, offer):
    """
    Build the extensive form induced by an observed offer.

    Args:
        params (ModelParams): the environment
        offer (PriceOffer): prices the consumer has observed

    Returns:
        GameNode, the T1 root. Node ids are stable: "T1", "T1.prepurchase",
        "T1.wait", "T2H", "T2L" and dotted terminal paths such as "T2H.buy".
    """
    chance = ChanceStage(((STATE_H, params.q), (STATE_L, 1 - params.q)))

    pre_id = "%s.%s" % (ROOT_ID, PREPURCHASE)
    prepurchase = _node(pre_id, chance, {
        state: _terminal(
            (ROOT_ID, pre_id, "%s.%s" % (pre_id, state)),
            params.value(state), offer.p1)
        for state in STATES})

    wait_id = "%s.%s" % (ROOT_ID, WAIT)
    spot_nodes = {}

    for state in STATES:
        node_id = spot_node_id(state)
        path = (ROOT_ID, wait_id, node_id)
        spot_nodes[state] = _node(node_id, SpotStage(state), {
            BUY: _terminal(path + ("%s.%s" % (node_id, BUY),),
                           params.value(state), offer.spot_price(state)),
            REJECT: _terminal(path + ("%s.%s" % (node_id, REJECT),), 0.0, 0.0),
        })

    wait = _node(wait_id, chance, spot_nodes)
    return _node(ROOT_ID, AdvanceStage(),
                 {PREPURCHASE: prepurchase, WAIT: wait})


def decision_nodes(root):
    """The consumer's decision nodes: T1, T2H, T2L."""
    wait = root.child(WAIT)
    return (root, wait.child(STATE_H), wait.child(STATE_L))


def find_node(root, node_id):
    """Locate a node by id; KeyError when absent."""
    stack = [root]

    while stack:
        node = stack.pop()

        if node.id == node_id:
            return node

        stack.extend(node.children.values())

    raise KeyError(node_id)


def terminals(root):
    """All terminal nodes below root, in tree order."""
    if root.is_terminal:
        return [root]

    found = []

    for child in root.children.values():
        found.extend(terminals(child))

    return found


@dataclass(frozen=True)
class Plan:
    """
    The consumer's behavior strategy: the probability of pre-purchasing at T1
    and of buying at each spot-market node.
    """

    advance_action: float
    spot_action_H: float
    spot_action_L: float

    def __post_init__(self):
        for name in ("advance_action", "spot_action_H", "spot_action_L"):
            value = getattr(self, name)

            if not 0 <= value <= 1:
                raise DomainError("%s must lie in [0, 1], got %s" % (name, value))

    @property
    def is_degenerate(self):
        return all(p in (0, 1) for p in self.as_tuple())

    def as_tuple(self):
        return (self.advance_action, self.spot_action_H, self.spot_action_L)

    def spot(self, state):
        return self.spot_action_H if state == STATE_H else self.spot_action_L

    def action_probability(self, node, action):
        """Probability the plan assigns to `action` at a decision node."""
        stage = node.stage

        if isinstance(stage, AdvanceStage):
            p = self.advance_action
            return p if action == PREPURCHASE else 1 - p

        p = self.spot(stage.state)
        return p if action == BUY else 1 - p

    def __repr__(self):
        return "Plan(%g, %g, %g)" % self.as_tuple()


def enumerate_degenerate_plans():
    """
    All 8 pure plans, lexicographic on (advance, spot_H, spot_L).

    Returns:
        tuple of Plan, starting with the never-purchase plan (0, 0, 0)
    """
    return tuple(Plan(*map(float, bits))
                 for bits in itertools.product((0, 1), repeat=3))


def terminal_distribution(node, plan, action=None):
    """
    Distribution over terminal outcomes below a node.

    Args:
        node (GameNode): where play starts
        plan (Plan): the consumer's plan for every decision below node
        action (str): if given, the consumer's move at node itself; the plan
            then only governs later decisions

    Returns:
        list of (probability, TerminalOutcome), zero-probability paths omitted
    """
    stage = node.stage

    if isinstance(stage, Terminal):
        return [(1.0, stage.outcome)]

    if isinstance(stage, ChanceStage):
        branches = stage.probabilities
    elif action is not None:
        branches = ((action, 1.0),)
    else:
        branches = tuple((a, plan.action_probability(node, a))
                         for a in node.actions())

    distribution = []

    for label, p in branches:
        if p <= 0:
            continue

        for sub_p, outcome in terminal_distribution(node.child(label), plan):
            distribution.append((p * sub_p, outcome))

    return distribution


def seller_expected_profit(root, plan):
    return sum(p * outcome.seller_profit
               for p, outcome in terminal_distribution(root, plan))
