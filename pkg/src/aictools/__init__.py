"""Toolkit for checking inertia-group and ramification data of covers of the affine line."""

__version__ = "0.1.0"
