"""Curves on surfaces and multisection diagrams of 4-manifolds."""

__version__ = "0.1.0"
