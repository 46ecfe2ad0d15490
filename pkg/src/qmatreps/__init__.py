"""Representations of the quantum matrix-space algebras ``Pol(Mat2^sym)_q`` and ``Pol(Mat2)_q``."""

__version__ = "0.1.0"
