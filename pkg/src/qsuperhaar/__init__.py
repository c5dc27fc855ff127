"""Exact Haar integrals, quantum characters and HCIZ identities for Hecke symmetries of birank (r, s)."""
from qsuperhaar._kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
