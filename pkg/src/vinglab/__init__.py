"""Exact census and charging verification for geometric graphs."""

__version__ = "0.1.0"
