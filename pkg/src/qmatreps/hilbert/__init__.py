"""Truncated operators, representations, spectra and matrix export."""

from .rep import RepInstance, direct_sum, evaluate_word, interior_residual, relation_residual_suite
from .spectrum import commutant_dimension, joint_spectrum
from .truncop import Basis, TruncOp

__all__ = [
    "RepInstance", "direct_sum", "evaluate_word", "interior_residual", "relation_residual_suite",
    "commutant_dimension", "joint_spectrum", "Basis", "TruncOp",
]
