"""Truncated q-series engine and congruence laboratory for the signed
cubic-partition function."""

__version__ = "0.1.0"
