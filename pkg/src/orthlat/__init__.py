"""Exact-arithmetic toolkit for even integral lattices and the
orthogonal modular groups acting on them."""

__version__ = "0.1.0"
