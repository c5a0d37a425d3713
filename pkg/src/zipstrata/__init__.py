"""Exact computation of Hasse-invariant vanishing orders and conjugate line
positions on the strata of classical zip stacks."""

__version__ = "0.1.0"
