"""Quasi-1D reduction toolkit for dilute bosons in elongated traps."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
