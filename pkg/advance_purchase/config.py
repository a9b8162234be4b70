# -*- coding: utf-8 -*-
# Scenario files: one `key = value` per line, `#` starts a comment.
#
#     H = 10
#     L = 4
#     q = 0.5
#     lambda_v = 1
#     lambda_m = 0.5
#     preference = kr_recent    # kr_initial, risk_neutral, risk_averse
#     regime = committed        # flexible, both
#     p2_min = 0
#     p2_max = 12
#     steps = 25

from dataclasses import dataclass
from pathlib import Path

from advance_purchase.errors import DomainError, ParseError
from advance_purchase.model import validate_params
from advance_purchase.preferences import PREFERENCE_TAGS, preference_from_tag
import advance_purchase.settings

REGIMES = ("committed", "flexible", "both")
REQUIRED_KEYS = ("H", "L", "q", "lambda_v", "lambda_m")
FLOAT_KEYS = REQUIRED_KEYS + ("curvature", "p2_min", "p2_max", "grid_step")
INT_KEYS = ("steps", "draws")
KNOWN_KEYS = FLOAT_KEYS + INT_KEYS + ("preference", "regime")


@dataclass(frozen=True)
class SweepRange:
    p2_min: float
    p2_max: float
    steps: int


@dataclass(frozen=True)
class ScenarioConfig:
    params: object
    preference: str = advance_purchase.settings.DEFAULT_PREFERENCE
    curvature: float = None
    regime: str = advance_purchase.settings.DEFAULT_REGIME
    sweep: SweepRange = None
    draws: int = advance_purchase.settings.DEFAULT_DRAWS
    grid_step: float = advance_purchase.settings.DEFAULT_GRID_STEP

    def __post_init__(self):
        if self.preference not in PREFERENCE_TAGS:
            raise DomainError("unknown preference %r" % (self.preference,))

        if self.regime not in REGIMES:
            raise DomainError("unknown regime %r" % (self.regime,))

        # Raises for a risk_averse preference without a positive curvature.
        self.preference_model()

        if self.sweep is not None:
            if not self.sweep.p2_min < self.sweep.p2_max:
                raise DomainError("empty sweep range [%s, %s]" % (
                    self.sweep.p2_min, self.sweep.p2_max))
            if self.sweep.p2_min < 0:
                raise DomainError("p2_min must be non-negative")
            if self.sweep.steps < 2:
                raise DomainError("steps must be at least 2, got %d"
                                  % self.sweep.steps)

        if self.draws < 1:
            raise DomainError("draws must be at least 1, got %d" % self.draws)

        if not 0 < self.grid_step <= 0.5:
            raise DomainError("grid_step must lie in (0, 0.5], got %s"
                              % self.grid_step)

    def preference_model(self):
        return preference_from_tag(self.preference, self.curvature)


def _read_entries(text):
    """Map each key to (raw value, line number)."""
    entries = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()

        if not line:
            continue

        if "=" not in line:
            raise ParseError("expected `key = value`, got %r" % line, lineno)

        key, value = (part.strip() for part in line.split("=", 1))

        if key not in KNOWN_KEYS:
            raise ParseError("unknown key %s" % key, lineno)

        if key in entries:
            raise ParseError("duplicate key %s" % key, lineno)

        if not value:
            raise ParseError("empty value for %s" % key, lineno)

        entries[key] = (value, lineno)

    return entries


def _convert(entries, key, kind):
    value, lineno = entries[key]

    try:
        return kind(value)
    except ValueError:
        raise ParseError("%s must be %s, got %r" % (
            key, "an integer" if kind is int else "a number", value), lineno)


def parse_scenario_config(text):
    """
    Read a scenario document.

    Args:
        text (str): the document

    Returns:
        ScenarioConfig

    Raises:
        ParseError for unknown, duplicate, missing or malformed keys;
        DomainError for values outside their range
    """
    entries = _read_entries(text)

    for key in REQUIRED_KEYS:
        if key not in entries:
            raise ParseError("missing key %s" % key)

    values = {}

    for key in FLOAT_KEYS:
        if key in entries:
            values[key] = _convert(entries, key, float)

    for key in INT_KEYS:
        if key in entries:
            values[key] = _convert(entries, key, int)

    for key, allowed in (("preference", PREFERENCE_TAGS), ("regime", REGIMES)):
        if key in entries:
            value, lineno = entries[key]

            if value.lower() not in allowed:
                raise ParseError("%s must be one of %s, got %r" % (
                    key, ", ".join(allowed), value), lineno)

            values[key] = value.lower()

    params = validate_params(*(values[key] for key in REQUIRED_KEYS))

    sweep = None
    bounds = [key for key in ("p2_min", "p2_max") if key in entries]

    if len(bounds) == 1:
        raise ParseError("p2_min and p2_max must be given together",
                         entries[bounds[0]][1])

    if bounds:
        sweep = SweepRange(
            values["p2_min"], values["p2_max"],
            values.get("steps", advance_purchase.settings.DEFAULT_STEPS))

    return ScenarioConfig(
        params=params,
        preference=values.get("preference",
                              advance_purchase.settings.DEFAULT_PREFERENCE),
        curvature=values.get("curvature"),
        regime=values.get("regime", advance_purchase.settings.DEFAULT_REGIME),
        sweep=sweep,
        draws=values.get("draws", advance_purchase.settings.DEFAULT_DRAWS),
        grid_step=values.get("grid_step",
                             advance_purchase.settings.DEFAULT_GRID_STEP))


def load_scenario_config(path):
    """Read and parse a scenario file."""
    return parse_scenario_config(Path(path).read_text(encoding="utf-8"))
