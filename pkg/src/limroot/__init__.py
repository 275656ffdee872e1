"""Exact restricted-root, Satake and direct-limit computations for classical real groups."""
from .errors import InputError, InternalError, LimrootError
from .roots import RealFormDescriptor, WeightedRootSystem, build_restricted_system, rho

__all__ = ["InputError", "InternalError", "LimrootError", "RealFormDescriptor",
           "WeightedRootSystem", "build_restricted_system", "rho"]
__version__ = "0.1.0"
