"""Folded galleries, Newton points and nonemptiness certificates for affine Deligne-Lusztig varieties."""

__version__ = "0.1.0"
