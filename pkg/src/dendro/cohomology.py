"""Dendriform cochains with coefficients in a representation.

An n-cochain is a :class:`MultiMap` of arity n with ``dim_in = dim A`` and
``dim_out = dim M``.  Coboundaries are assembled as exact matrices by applying
the differential to the coordinate basis, so kernels, images and the
cohomology dimensions all come out of :mod:`dendro.exactnum`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .dendriform import (
    AssociativeAlgebra,
    Bimodule,
    DendriformAlgebra,
    InvalidStructureError,
    Representation,
    check_morphism,
    check_representation,
    rep_to_assoc_rep,
    associated_associative,
    _block_product,
)
from .exactnum import (
    RationalMatrix,
    extend_to_quotient_basis,
    kernel_basis,
    quotient_dim,
    rank,
    solve,
    zeros,
)
from .report import CheckReport
from .operadcore import MultiMap, compose_components, d_pi, insert_tensor

__all__ = [
    "ResourceLimitError",
    "dend_coboundary",
    "coboundary_matrix",
    "dpi_matrix",
    "hochschild_coboundary",
    "sum_map_S",
    "CohomologyResult",
    "cohomology_dim",
    "complex_cohomology",
    "is_cocycle",
    "cochain_space_dim",
    "extension_from_cocycle",
    "cocycle_from_extension",
    "extensions_equivalent",
    "equivalence_map",
    "solve_coboundary",
    "cochain_to_json",
    "cochain_from_json",
    "hochschild_data",
    "hochschild_compare",
    "check_extension_equivalence",
]

COORDINATE_CAP = 10**7


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds the desk-scale coordinate budget."""


def cochain_space_dim(n: int, dim_a: int, dim_m: int) -> int:
    return n * dim_a**n * dim_m


def _check_cochain(f: MultiMap, A: DendriformAlgebra, M: Representation) -> None:
    if f.dim_in != A.dim or f.dim_out != M.dim_m:
        raise ValueError(
            f"cochain maps dim {f.dim_in} -> {f.dim_out}, expected {A.dim} -> {M.dim_m}"
        )


def dend_coboundary(f: MultiMap, A: DendriformAlgebra, M: Representation) -> MultiMap:
    """theta_1 o_2 f + sum_i (-1)^i f o_i pi_A + (-1)^(n+1) theta_2 o_1 f."""
    _check_cochain(f, A, M)
    n = f.arity
    F = f.components
    pi = A.pi.components
    acc = compose_components(M.theta1, F, 2)
    for i in range(1, n + 1):
        term = compose_components(F, pi, i)
        acc = acc - term if i % 2 else acc + term
    tail = compose_components(M.theta2, F, 1)
    acc = acc + tail if (n + 1) % 2 == 0 else acc - tail
    return MultiMap(acc)


def is_cocycle(f: MultiMap, A: DendriformAlgebra, M: Representation) -> bool:
    return dend_coboundary(f, A, M).is_zero()


def _matrix_of(op: Callable[[MultiMap], MultiMap], n: int, dim_a: int, dim_m: int) -> RationalMatrix:
    cols = []
    for e in MultiMap.basis(n, dim_a, dim_m):
        cols.append(op(e).to_vector())
    rows = cochain_space_dim(n + 1, dim_a, dim_m)
    if not cols:
        return RationalMatrix.zeros(rows, 0)
    return RationalMatrix.from_columns(cols, rows)


def _check_budget(n: int, dim_a: int, dim_m: int) -> None:
    need = n * dim_a ** (n + 1) * dim_m
    if need > COORDINATE_CAP:
        raise ResourceLimitError(
            f"degree {n} with dim A = {dim_a}, dim M = {dim_m} needs {need} coordinates (cap {COORDINATE_CAP})"
        )


def coboundary_matrix(A: DendriformAlgebra, M: Representation, n: int) -> RationalMatrix:
    """Matrix of delta: C^n -> C^(n+1) in the MultiMap coordinate order."""
    _check_budget(n, A.dim, M.dim_m)
    return _matrix_of(lambda f: dend_coboundary(f, A, M), n, A.dim, M.dim_m)


def dpi_matrix(A: DendriformAlgebra, n: int) -> RationalMatrix:
    """Matrix of d_pi on O(n) for pi = pi_A (coefficients in A itself)."""
    _check_budget(n, A.dim, A.dim)
    pi = A.pi
    return _matrix_of(lambda f: d_pi(f, pi), n, A.dim, A.dim)


@dataclass
class CohomologyResult:
    degree: int
    dim_C: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: list[list[Fraction]]
    cycles: list[list[Fraction]]

    def to_json(self, with_reps: bool = True) -> dict:
        out = {
            "degree": self.degree,
            "dim_C": self.dim_C,
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H": self.dim_H,
        }
        if with_reps:
            out["representatives"] = [[str(x) for x in v] for v in self.representatives]
        return out


def complex_cohomology(d_prev: RationalMatrix | None, d_next: RationalMatrix, degree: int) -> CohomologyResult:
    """(Z, B, H) at the middle of C^(n-1) -> C^n -> C^(n+1).

    ``d_prev`` may be None, meaning there is no incoming differential.
    """
    Z = kernel_basis(d_next)
    if d_prev is None or d_prev.cols == 0:
        B: list[list[Fraction]] = []
    else:
        B = [list(d_prev.array[:, j]) for j in range(d_prev.cols)]
    dim_H = quotient_dim(Z, B)
    reps = extend_to_quotient_basis(Z, B)
    dim_B = rank(d_prev) if B else 0
    return CohomologyResult(degree, d_next.cols, len(Z), dim_B, dim_H, reps, Z)


def cohomology_dim(A: DendriformAlgebra, M: Representation, n: int, *, differential: str = "dend") -> CohomologyResult:
    """Z^n, B^n and H^n of A with coefficients in M.

    ``differential="dpi"`` computes the same groups from d_pi (M must be the
    adjoint representation).  For n = 1 the result is the space of
    1-cocycles, B = 0.
    """
    if n < 1:
        raise ValueError("degrees start at 1")
    A.require_valid()
    if not check_representation(A, M).ok:
        raise InvalidStructureError("coefficients are not a representation")
    if differential == "dend":
        mat = lambda k: coboundary_matrix(A, M, k)
    elif differential == "dpi":
        if M != Representation.adjoint(A):
            raise ValueError("d_pi is only defined for coefficients in A itself")
        mat = lambda k: dpi_matrix(A, k)
    else:
        raise ValueError(f"unknown differential {differential!r}")
    return complex_cohomology(mat(n - 1) if n >= 2 else None, mat(n), n)


# -- Hochschild side --------------------------------------------------------


def hochschild_coboundary(g: np.ndarray, star: AssociativeAlgebra, bimodule: Bimodule) -> np.ndarray:
    """Hochschild differential of a plain tensor g of shape (dim M, dim A, ..., dim A)."""
    g = np.asarray(g, dtype=object)
    n = g.ndim - 1
    left = np.transpose(bimodule.left, (2, 0, 1))
    right = np.transpose(bimodule.right, (2, 0, 1))
    acc = insert_tensor(left, g, 2)
    for i in range(1, n + 1):
        term = insert_tensor(g, star.tensor, i)
        acc = acc - term if i % 2 else acc + term
    tail = insert_tensor(right, g, 1)
    return acc + tail if (n + 1) % 2 == 0 else acc - tail


def sum_map_S(f: MultiMap) -> np.ndarray:
    """f_[1] + ... + f_[n] as an unlabelled multilinear tensor."""
    return f.label_sum()


# -- abelian extensions --------------------------------------------------------


def _require_rep(A: DendriformAlgebra, M: Representation) -> None:
    A.require_valid()
    if not check_representation(A, M).ok:
        raise InvalidStructureError("not a representation")


def extension_from_cocycle(A: DendriformAlgebra, M: Representation, f: MultiMap) -> DendriformAlgebra:
    """Dendriform structure on A + M twisted by the 2-cocycle f (coordinates: A first)."""
    _require_rep(A, M)
    if f.arity != 2:
        raise ValueError("extension data is a 2-cochain")
    _check_cochain(f, A, M)
    if not is_cocycle(f, A, M):
        raise InvalidStructureError("f is not a 2-cocycle")
    d, m = A.dim, M.dim_m
    prec = _block_product(d, m, A.prec, M.theta1_prec, M.theta2_prec)
    succ = _block_product(d, m, A.succ, M.theta1_succ, M.theta2_succ)
    # f-component [r] has axes (out, a, b); product tensors are (a, b, out)
    prec[:d, :d, d:] = np.transpose(f.component(1), (1, 2, 0))
    succ[:d, :d, d:] = np.transpose(f.component(2), (1, 2, 0))
    E = DendriformAlgebra(d + m, prec, succ)
    if not E.is_valid:
        raise ArithmeticError("twisted product failed the dendriform identities")
    return E


def cocycle_from_extension(E: DendriformAlgebra, A: DendriformAlgebra, M: Representation) -> MultiMap:
    """The 2-cocycle of an abelian extension E on A + M split by a -> (a, 0)."""
    _require_rep(A, M)
    d, m = A.dim, M.dim_m
    if E.dim != d + m:
        raise ValueError(f"extension has dim {E.dim}, expected {d} + {m}")
    E.require_valid()
    problems = []
    for name, T, TA, L, Rt in (
        ("prec", E.prec, A.prec, M.theta1_prec, M.theta2_prec),
        ("succ", E.succ, A.succ, M.theta1_succ, M.theta2_succ),
    ):
        if not np.all(T[:d, :d, :d] == TA):
            problems.append(f"{name}: projection to A is not an algebra map")
        if any(x != 0 for x in T[:d, d:, :d].reshape(-1)) or any(x != 0 for x in T[d:, :d, :d].reshape(-1)):
            problems.append(f"{name}: products with M leave M")
        if any(x != 0 for x in T[d:, d:, :].reshape(-1)):
            problems.append(f"{name}: M is not trivially multiplied")
        if not np.all(T[:d, d:, d:] == L) or not np.all(T[d:, :d, d:] == Rt):
            problems.append(f"{name}: induced actions differ from the given representation")
    if problems:
        raise InvalidStructureError("; ".join(problems))
    f = MultiMap(np.stack([np.transpose(E.prec[:d, :d, d:], (2, 0, 1)), np.transpose(E.succ[:d, :d, d:], (2, 0, 1))]))
    if not is_cocycle(f, A, M):
        raise ArithmeticError("extracted cochain is not a cocycle")
    return f


def solve_coboundary(target: MultiMap, A: DendriformAlgebra, M: Representation) -> MultiMap | None:
    """Some g of arity n-1 with delta g = target, or None."""
    n = target.arity
    if n < 2:
        raise ValueError("only cochains of degree >= 2 can be coboundaries")
    _check_cochain(target, A, M)
    D = coboundary_matrix(A, M, n - 1)
    x = solve(D, target.to_vector())
    if x is None:
        return None
    return MultiMap.from_vector(x, n - 1, A.dim, M.dim_m)


def extensions_equivalent(A: DendriformAlgebra, M: Representation, f: MultiMap, f2: MultiMap) -> MultiMap | None:
    """g in C^1 with f - f2 = delta g, or None when the classes differ."""
    for c in (f, f2):
        if not is_cocycle(c, A, M):
            raise InvalidStructureError("inputs must be 2-cocycles")
    return solve_coboundary(f - f2, A, M)


def equivalence_map(A: DendriformAlgebra, M: Representation, g: MultiMap) -> np.ndarray:
    """Matrix of (a, m) -> (a, m + g(a)) on A + M."""
    d, m = A.dim, M.dim_m
    phi = zeros((d + m, d + m))
    for k in range(d + m):
        phi[k, k] = Fraction(1)
    phi[d:, :d] = g.component(1)
    return phi


def check_extension_equivalence(E: DendriformAlgebra, E2: DendriformAlgebra, A, M, g: MultiMap):
    return check_morphism(E, E2, equivalence_map(A, M, g))


# -- serialization ---------------------------------------------------------


def cochain_to_json(f: MultiMap) -> dict:
    out = f.to_json()
    out["degree"] = f.arity
    return out


def cochain_from_json(data: dict) -> MultiMap:
    f = MultiMap.from_json(data)
    if "degree" in data and data["degree"] != f.arity:
        raise ValueError(f"degree {data['degree']} disagrees with arity {f.arity}")
    return f


def hochschild_data(A: DendriformAlgebra, M: Representation) -> tuple[AssociativeAlgebra, Bimodule]:
    return associated_associative(A), rep_to_assoc_rep(A, M)


def hochschild_compare(A: DendriformAlgebra, M: Representation, n: int) -> CheckReport:
    """S(delta f) - delta_Hoch(S f) on every basis cochain of degree n."""
    _require_rep(A, M)
    _check_budget(n, A.dim, M.dim_m)
    star, bm = hochschild_data(A, M)
    rep = CheckReport("hochschild_compare")
    for k, f in enumerate(MultiMap.basis(n, A.dim, M.dim_m)):
        lhs = sum_map_S(dend_coboundary(f, A, M))
        rhs = hochschild_coboundary(sum_map_S(f), star, bm)
        rep.add_residual("chain_map", lhs - rhs, degree=n, basis_index=k)
    return rep
