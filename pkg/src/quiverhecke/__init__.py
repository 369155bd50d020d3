"""Exact-arithmetic computational algebra for quiver Hecke algebras,
balanced quotients, affine Hecke dictionaries, higher-level Fock
combinatorics, extended affine Weyl groups, structure algebras, and
quadratic duality."""

__version__ = "0.1.0"
