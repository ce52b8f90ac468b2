"""Exact computer algebra for the K-theoretic Fock space of the point."""

__version__ = "0.1.0"
