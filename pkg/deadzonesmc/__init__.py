"""Adaptive fuzzy sliding mode control for plants with a non-symmetric dead-zone input."""

__version__ = "0.1.0"
