"""Hochschild (co)homology of exterior algebras, exactly over the rationals."""

__version__ = "0.1.0"
