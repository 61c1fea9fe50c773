"""Exact algebra for Taft-algebra actions on quantum planes and their relatives."""

__version__ = "0.1.0"
