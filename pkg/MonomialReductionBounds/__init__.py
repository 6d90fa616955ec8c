"""Exact reduction-number bounds for monomial ideals of semigroup rings."""

__version__ = "0.1.0"
