"""Named small structures used by the tests, demos and golden CLI files.

Entries produced by ``scripts/search_fixtures.py`` are stored as literal
constants below so the suite never searches.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .dendriform import AssociativeAlgebra, Bimodule, DendriformAlgebra, Representation, aguiar, semidirect
from .exactnum import rational_array
from .operadcore import MultiMap

__all__ = [
    "a1",
    "a2",
    "broken",
    "zero_algebra",
    "p1",
    "p1_operator",
    "aguiar_p1",
    "udf_algebra",
    "udf_derivation",
    "udf_fixtures",
    "rb_deformation_pair",
    "obstructed_term",
    "cohomology_corpus",
    "dendriform_corpus",
]


def _products(dim: int, entries: dict[tuple[int, int, int], int]) -> np.ndarray:
    t = rational_array(np.zeros((dim, dim, dim), dtype=int))
    for idx, c in entries.items():
        t[idx] = Fraction(c)
    return t


def a1() -> DendriformAlgebra:
    """One dimension: e < e = e, e > e = 0."""
    return DendriformAlgebra(1, _products(1, {(0, 0, 0): 1}), _products(1, {}))


def a2() -> DendriformAlgebra:
    """Basis x, y with x < x = y and every other product zero."""
    return DendriformAlgebra(2, _products(2, {(0, 0, 1): 1}), _products(2, {}))


def broken() -> DendriformAlgebra:
    """e < e = e > e = e: fails the dendriform identities."""
    return DendriformAlgebra(1, _products(1, {(0, 0, 0): 1}), _products(1, {(0, 0, 0): 1}))


def zero_algebra(dim: int = 1) -> DendriformAlgebra:
    return DendriformAlgebra.zero(dim)


def p1() -> AssociativeAlgebra:
    """Truncated polynomials span{1, x} with x^2 = 0."""
    return AssociativeAlgebra(2, _products(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}))


def p1_operator() -> np.ndarray:
    """Integration R(1) = x, R(x) = 0, acting on coordinate columns."""
    return rational_array([[0, 0], [1, 0]])


def aguiar_p1() -> DendriformAlgebra:
    return aguiar(p1(), p1_operator())


# from scripts/search_fixtures.py: the products induced on M_2 (basis E11, E12,
# E21, E22) by R(x) = E12 x, with the nilpotent derivation D = ad(E12)
_UDF_PREC = {(0, 2, 0): 1, (0, 3, 1): 1, (2, 2, 2): 1, (2, 3, 3): 1}
_UDF_SUCC = {(2, 0, 0): 1, (2, 1, 1): 1, (3, 2, 0): 1, (3, 3, 1): 1}
_UDF_D = [[0, 0, 1, 0], [-1, 0, 0, 1], [0, 0, 0, 0], [0, 0, -1, 0]]


def udf_algebra() -> DendriformAlgebra:
    """Four-dimensional algebra carrying a nilpotent derivation D with pi(D., D.) != 0."""
    return DendriformAlgebra(4, _products(4, _UDF_PREC), _products(4, _UDF_SUCC))


def udf_derivation() -> np.ndarray:
    return rational_array(_UDF_D)


def udf_fixtures() -> list[tuple[str, DendriformAlgebra, np.ndarray, np.ndarray]]:
    """(name, A, D1, D2) with commuting derivations."""
    A2 = a2()
    nil = rational_array([[0, 0], [1, 0]])
    diag = rational_array([[1, 0], [0, 2]])
    return [
        ("a2-nilpotent", A2, nil, nil),
        ("a2-diagonal", A2, diag, diag),
        ("a2-mixed", A2, diag, rational_array([[2, 0], [0, 4]])),
        ("a1-zero", a1(), rational_array([[0]]), rational_array([[0]])),
        ("udf-m2", udf_algebra(), udf_derivation(), udf_derivation()),
    ]


# m_1(x, x) = 2x, R_1(x) = x
_RB_M1 = [[[0, 0], [0, 0]], [[0, 0], [0, 2]]]
_RB_R1 = [[0, 0], [0, 1]]


def rb_deformation_pair() -> tuple[np.ndarray, np.ndarray]:
    """(m_1, R_1) solving the order-1 equations on P1, not a rescaling of (m, R)."""
    return rational_array(_RB_M1), rational_array(_RB_R1)


def obstructed_term() -> tuple[DendriformAlgebra, MultiMap]:
    """An order-1 deformation of the 1-dimensional zero algebra that cannot be extended."""
    return zero_algebra(1), MultiMap.from_vector([Fraction(1), Fraction(1)], 2, 1, 1)


def dendriform_corpus() -> dict[str, DendriformAlgebra]:
    A1 = a1()
    return {
        "A1": A1,
        "A2": a2(),
        "aguiar-P1": aguiar_p1(),
        "semidirect-A1": semidirect(A1, Representation.adjoint(A1)),
    }


def cohomology_corpus() -> dict[str, tuple[DendriformAlgebra, Representation]]:
    """Algebras with adjoint coefficients, plus A1 with trivial coefficients."""
    out = {name: (A, Representation.adjoint(A)) for name, A in dendriform_corpus().items()}
    A1 = a1()
    out["A1-trivial"] = (A1, Representation.trivial(A1, 1))
    return out


def p1_bimodule() -> Bimodule:
    P = p1()
    return Bimodule(P.mult, P.mult)
