"""Exact desk-scale computations for set families with a forbidden intersection size."""

__version__ = "0.1.0"
