"""Coded predilators, Goodstein sequences, collapsing term systems, and
order-embedding verification at desk scale."""

__version__ = "0.1.0"
