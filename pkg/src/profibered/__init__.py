"""Exact invariants of fibered 3-manifolds and their profinite comparisons."""

__version__ = "0.1.0"
