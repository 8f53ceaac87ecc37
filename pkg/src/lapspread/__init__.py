"""Numerical laboratory for eccentricity-based algebraic-connectivity bounds."""

__version__ = "0.1.0"
