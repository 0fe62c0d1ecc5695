"""Exact verification toolkit for the Frey-curve attack on x^13 + y^13 = Cz^p."""

__version__ = "0.1.0"
