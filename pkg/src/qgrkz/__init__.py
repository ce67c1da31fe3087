"""Exact computations for quantum connections of affine Grassmannian slices and the trigonometric KZ connection."""

from .rootsys import build
from .slice import SliceProblem

__all__ = ["build", "SliceProblem"]
__version__ = "0.1.0"
