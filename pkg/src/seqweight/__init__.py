"""Sequence colourings of graphs from edge and total list weightings."""

__version__ = "0.1.0"
