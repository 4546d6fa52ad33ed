"""Exact computer algebra for centers, radicals, discriminants, derivations
and isomorphism witnesses of polynomial extensions of algebras."""

__version__ = "0.1.0"
