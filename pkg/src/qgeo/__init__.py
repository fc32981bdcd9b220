"""Monotone metrics, negativity and their relation on the qubit state space."""

__version__ = "0.1.0"
