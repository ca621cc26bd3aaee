"""Chermak-Delgado lattices of class-2 p-groups with Frattini subgroup in the center."""

from .gfplin import FieldMatrix, Subspace, gaussian_binomial
from .presentation import CentralPresentation, centralizer, measure

__all__ = [
    "CentralPresentation",
    "FieldMatrix",
    "Subspace",
    "centralizer",
    "gaussian_binomial",
    "measure",
]
__version__ = "0.1.0"
