"""Rigidity of nearly planar graphs."""

__version__ = "0.1.0"
