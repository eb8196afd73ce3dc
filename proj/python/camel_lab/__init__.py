"""Truncated nonlinear string equation and coisotropic camel geometry."""

from ._core import *  # noqa: F401,F403
from ._core import ConvergenceError, DivergenceError, PropertyViolation, ValidationError

__version__ = "0.1.0"
