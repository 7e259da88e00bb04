"""Exact computations for sextic del Pezzo fibrations over curves."""

__version__ = "0.1.0"
