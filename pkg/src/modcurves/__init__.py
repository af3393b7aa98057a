"""Exact arithmetic and finite-field checks for explicit modular curve models."""

__version__ = "0.1.0"
