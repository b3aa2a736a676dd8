"""Exact Dunkl/Cherednik calculus, Jack polynomials and branching coefficients."""

__version__ = "0.1.0"
