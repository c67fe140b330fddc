"""Interdependent CPS security allocation as an asymmetric Colonel Blotto game."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
