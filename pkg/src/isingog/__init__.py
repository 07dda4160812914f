"""Exact tools for boundary correlations of the planar Ising model and the
totally nonnegative orthogonal Grassmannian they parametrize."""

__version__ = "0.1.0"
