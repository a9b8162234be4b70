# -*- coding: utf-8 -*-
import os

# Settings for the advance_purchase project
#
# Tolerances, defaults and paths shared by the solvers, the closed forms and
# the experiment harness.

# Comparison tolerance for prices and utilities. Ties within EPSILON resolve
# toward purchasing.
EPSILON = 1e-9

# Cutoff search over the advance price
CUTOFF_XTOL = 1e-7
CUTOFF_MAXITER = 60
# Coarse scan run before bisecting, used to catch non-monotone decisions
CUTOFF_SCAN_POINTS = 16

# CARA indifference root
RISK_AVERSE_XTOL = 1e-9

# Agreement required between closed forms and brute force
ORACLE_TOLERANCE = 1e-6

# CSV artifacts: 9 fractional digits, LF endings
CSV_FLOAT_FORMAT = "%.9f"
CSV_LINE_TERMINATOR = "\n"

# Scenario defaults (keys missing from a config file)
DEFAULT_PREFERENCE = "kr_recent"
DEFAULT_REGIME = "committed"
DEFAULT_STEPS = 200
DEFAULT_DRAWS = 500
DEFAULT_GRID_STEP = 0.1
DEFAULT_SEED = 0

# Verification suite
VERIFY_P2_POINTS = 50
VERIFY_MIXED_DRAWS = 100
VERIFY_H_RANGE = (2.0, 20.0)
VERIFY_Q_RANGE = (0.05, 0.95)
VERIFY_LAMBDA_RANGE = (0.0, 3.0)
VERIFY_LAMBDA_GRID = (0.0, 0.5, 1.0, 2.0, 3.0)
VERIFY_CURVATURES = (0.05, 0.5, 1.0, 5.0)
# Curvature standing in for the risk-neutral limit
VERIFY_SMALL_CURVATURE = 1e-6
# Processes evaluating verification draws; 0 uses every CPU
VERIFY_WORKERS = int(os.environ.get("APGAME_WORKERS", "0"))

OUTPUT_ROOT = os.environ.get(
    "APGAME_OUT",
    os.path.join(os.path.expanduser("~"), "Downloads", "apgame"))
OUTPUT_DIR = os.path.join(OUTPUT_ROOT, "runs")
