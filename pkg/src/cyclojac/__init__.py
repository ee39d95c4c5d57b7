"""Exact Jacobi sums, cyclotomic numbers, d-compositions and multiplicative forms."""

__version__ = "0.1.0"
