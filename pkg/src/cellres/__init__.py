"""Cellular resolutions of monomial ideals as a category of labeled CW complexes."""

__version__ = "0.1.0"
