"""Generalized jet schemes of affine schemes, their dimensions and derived invariants."""

__version__ = "0.1.0"
