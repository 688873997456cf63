"""Numerical laboratory for generalized Hilbert operators ``H_mu``."""
__version__ = "0.1.0"
