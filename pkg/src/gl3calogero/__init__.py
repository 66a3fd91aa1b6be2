"""Exact symbolic engine for the gl(3) polynomial form of the 3-body elliptic Calogero model."""

__version__ = "0.1.0"
