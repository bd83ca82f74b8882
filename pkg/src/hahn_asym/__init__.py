"""Uniform large-degree asymptotics of Hahn polynomials with a high-precision oracle."""

__version__ = "0.1.0"

from .oracle import HahnParams, PrecisionContext, PrecisionError, hahn_Q, eval_monic_exact
from .aux_maps import MapBundle
from .asymptotics import asym_monic, asym_fixed_x, classify

__all__ = [
    "__version__", "HahnParams", "PrecisionContext", "PrecisionError", "hahn_Q",
    "eval_monic_exact", "MapBundle", "asym_monic", "asym_fixed_x", "classify",
]
