"""Gradient boosted decision trees with order-2/3/4 leaf optimization."""

from ._hogboost import *  # noqa: F401,F403
from ._hogboost import __version__  # noqa: F401
