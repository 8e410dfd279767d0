"""Exact-arithmetic checks for homogeneous G2-structures."""

__version__ = "0.1.0"
