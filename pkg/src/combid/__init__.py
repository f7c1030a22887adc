"""Verification toolkit for combinatorial identities with complex-argument
binomial coefficients and generalized harmonic numbers."""

__version__ = "0.1.0"
