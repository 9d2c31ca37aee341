"""Exact computation laboratory for Boolean-function degree measures."""

__version__ = "0.1.0"
