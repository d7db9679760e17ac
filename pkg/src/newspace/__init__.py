"""Exact verification toolkit for segment averaging idempotents and newform projectors."""

__version__ = "0.1.0"
