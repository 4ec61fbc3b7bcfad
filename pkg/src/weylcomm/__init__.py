"""Exact computation with commuting ordinary differential operators."""

__version__ = "0.1.0"
