"""Heterogeneous unsourced random access with coded compressed sensing."""

__version__ = "0.1.0"
