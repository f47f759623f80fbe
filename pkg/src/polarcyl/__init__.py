"""Exact verification toolkit for index-one log del Pezzo surfaces in weighted projective space."""

__version__ = "0.1.0"
