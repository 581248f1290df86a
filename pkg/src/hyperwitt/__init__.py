"""Exact hyperfield computations for Witt equivalence of fields."""

__version__ = "0.1.0"
