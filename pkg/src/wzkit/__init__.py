"""Exact WZ-style certification and discovery for hypergeometric identities."""

__version__ = "0.1.0"
