"""Exact matrix-group constructions inside Sp8(3) and their verification."""

__version__ = "0.1.0"
