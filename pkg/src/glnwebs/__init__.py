"""Exact symbolic engine for gl_n web categories."""

__version__ = "0.1.0"
