"""Weisfeiler-Leman coherent closure and distance-hereditary reductions."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
