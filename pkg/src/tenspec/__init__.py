"""Eigenvalues, characteristic polynomials and discriminants of partially symmetric tensors."""

__version__ = "0.1.0"
