"""Exact computations around mod-d Torelli groups and homology 3-spheres."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
