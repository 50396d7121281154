"""Exact-arithmetic window combinatorics, quiver stability and graded-algebra
checks for the universal length-2 flop and related rank <= 2 presentations."""

__version__ = "0.1.0"
