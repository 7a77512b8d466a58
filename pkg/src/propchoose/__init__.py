"""Proportional list coloring with a bounded palette."""

__version__ = "0.1.0"
