"""Quantum renormalization group of the XXZ chain."""

from ._xxzqrg import *  # noqa: F401,F403
from ._xxzqrg import Error, FitError, InvalidArgument, NoInteriorMinimum  # noqa: F401

__version__ = "0.1.0"
