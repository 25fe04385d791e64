"""kshift: exact calculus for K-theoretic Schur P/Q functions."""

__version__ = "0.1.0"
