# -*- coding: utf-8 -*-

import datetime
from pathlib import Path


def new_output_dir(root):
    """
    Name a fresh directory for one verification run.

    Runs on the same day are numbered: <root>/2024-05-31#004 is the fourth.

    Args:
        root (Path or str): directory holding earlier runs; need not exist

    Returns:
        Path, not yet created
    """
    root = Path(root)
    stamp = datetime.date.today().isoformat()
    earlier = sorted(root.glob("%s#*" % stamp))
    run = int(earlier[-1].name.rsplit("#", 1)[1]) + 1 if earlier else 1
    return root / ("%s#%03d" % (stamp, run))


def leq(a, b, eps):
    """
    a <= b up to eps; ties count as satisfied.

    Shared by the spot rule and the closed-form region tags so boundary prices
    are classified the same way on both sides.
    """
    return a <= b + eps

