"""Spectral phase transitions of Jacobi matrices with diagonal n and weights c_n n."""

from ._backend import backend_name, set_backend
from .model import ModulationParams, Region, bands, classify, discriminant, in_ac_band

__version__ = "0.1.0"

__all__ = [
    "ModulationParams",
    "Region",
    "backend_name",
    "bands",
    "classify",
    "discriminant",
    "in_ac_band",
    "set_backend",
]
