"""Exact computations with internal Chevalley modules."""

__version__ = "0.1.0"
