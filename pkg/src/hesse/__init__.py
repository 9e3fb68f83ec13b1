"""Regulators, L-values and Mahler measures for the Hesse cubic family."""

from .numerics import PrecisionContext

__version__ = "0.1.0"
__all__ = ["PrecisionContext", "__version__"]
