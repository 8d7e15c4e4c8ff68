"""Braid words to holomorphic plane curves on S^3 and knotted null EM fields."""

__version__ = "0.1.0"
