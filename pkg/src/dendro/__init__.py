"""Exact computations with dendriform algebras, their cohomology, deformations and homotopy versions."""

from .dendriform import (
    AssociativeAlgebra,
    Bimodule,
    DendriformAlgebra,
    InvalidStructureError,
    Representation,
)
from .operadcore import MultiMap

__all__ = [
    "AssociativeAlgebra",
    "Bimodule",
    "DendriformAlgebra",
    "InvalidStructureError",
    "MultiMap",
    "Representation",
]
