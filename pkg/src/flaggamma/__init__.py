"""Combinatorics of flag homology spheres: f/h/γ-vectors, edge moves,
equators and half-integral matchings in complement graphs."""

__version__ = "0.1.0"
