"""Computational toolkit for arithmetic approximate groups."""
__version__ = "0.1.0"
