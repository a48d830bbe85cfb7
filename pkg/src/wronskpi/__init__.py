"""Exact q-series verification of theta and eta identities, plus high-precision
evaluation and summation of the resulting series for 1/pi."""

__version__ = "0.1.0"
