"""Exact computations for transverse slices to single-cycle classes in SL(l+1)."""

__version__ = "0.1.0"
