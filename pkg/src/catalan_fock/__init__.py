"""Exact Catalan-triangle combinatorics and a symbolic (q,2)-Fock space."""

__version__ = "0.1.0"
