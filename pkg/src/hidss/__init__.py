"""Hybrid-intelligence decision support for business model validation."""

__version__ = "0.1.0"
