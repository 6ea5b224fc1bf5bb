"""Finite quandles and racks, their homology, and coloring invariants of links."""

__version__ = "0.1.0"
