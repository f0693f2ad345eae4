"""Exact lattice computations for stable pairs (X, D) with D ~ -2K_X and K_X^2 = 5."""

__version__ = "0.1.0"
