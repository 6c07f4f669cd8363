"""Maker/Breaker games on graph boards."""

__version__ = "0.1.0"
