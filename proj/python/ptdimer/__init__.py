"""Coupled-resonator wireless energy transfer toolkit."""

from ._ptdimer import *  # noqa: F401,F403
from ._ptdimer import __doc__  # noqa: F401

__version__ = "0.1.0"
