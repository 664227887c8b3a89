"""Section lattices, subsurface projections and pockets of layered veering triangulations."""

__version__ = "0.1.0"
