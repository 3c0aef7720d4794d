"""Quantum error-correcting codes built from pairs of classical binary codes."""

__version__ = "0.1.0"
