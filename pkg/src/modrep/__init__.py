"""Exact modular representation theory and deformation invariants of finite groups."""

__version__ = "0.1.0"
