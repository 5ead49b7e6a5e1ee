"""Weighted-graph sparsity models, restricted ensembles, Fano lower bounds,
and Monte Carlo verification at desk scale."""

from ._csslb import *  # noqa: F401,F403
from ._csslb import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
