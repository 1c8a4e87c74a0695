"""Coherent-state quantisation on the circle."""

from ._circq import *  # noqa: F401,F403
from ._circq import __version__  # noqa: F401
