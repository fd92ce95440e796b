"""Random-matrix spectral-law laboratory.

Thin Python layer over the compiled ``_core`` module. Matrices come back as
NumPy arrays, exact expected moments as :class:`fractions.Fraction`.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import STREAM_VERSION, _run_law_experiment_json

__all__ = [name for name in dir() if not name.startswith("_")]


def run_law_experiment(config=None, **overrides):
    """Run a Monte-Carlo convergence experiment and return the report dict.

    ``config`` uses the same keys as the CLI's ``converge --config`` file;
    keyword arguments override individual keys.
    """
    cfg = dict(config or {})
    cfg.update(overrides)
    return _json.loads(_run_law_experiment_json(_json.dumps(cfg)))


__all__.append("run_law_experiment")
