"""Finite-dimensional dendriform algebras, representations and Rota-Baxter data.

Structure constants: ``prec[i, j, k]`` is the coefficient of e_k in
e_i < e_j (likewise ``succ``).  Linear maps are matrices acting on column
vectors, so ``R[k, j]`` is the e_k-coefficient of R(e_j).

Representation actions follow the same row-is-left-argument rule:
``theta1_prec[a, m, k]`` is the coefficient of m_k in a < m_m, and
``theta2_prec[m, a, k]`` the coefficient of m_k in m_m < a.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exactnum import RationalMatrix, rational_array, tensor_to_json, zeros
from .operadcore import MultiMap, compose_components, is_multiplication
from .report import CheckReport

__all__ = [
    "DendriformAlgebra",
    "Representation",
    "AssociativeAlgebra",
    "Bimodule",
    "check_dendriform",
    "to_multiplication",
    "from_multiplication",
    "associated_associative",
    "check_representation",
    "rep_to_assoc_rep",
    "semidirect",
    "assoc_semidirect",
    "check_rota_baxter",
    "aguiar",
    "check_morphism",
    "InvalidStructureError",
]


class InvalidStructureError(ValueError):
    """Input does not satisfy the axioms an operation requires."""


def _mul(t: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # bilinear structure tensor t[i, j, k] applied to coordinate arrays
    return np.einsum("ijk,i,j->k", t, x, y)


def _as_tensor(data, shape) -> np.ndarray:
    if data is None:
        return zeros(shape)
    return rational_array(data).reshape(shape)


class DendriformAlgebra:
    """Pair of products (prec, succ) on a d-dimensional space.

    Construction does not require validity; :attr:`report` runs the three
    dendriform identities once and caches the result.
    """

    def __init__(self, dim: int, prec=None, succ=None):
        self.dim = dim
        self.prec = _as_tensor(prec, (dim, dim, dim))
        self.succ = _as_tensor(succ, (dim, dim, dim))
        self.prec.setflags(write=False)
        self.succ.setflags(write=False)

    @classmethod
    def zero(cls, dim: int) -> "DendriformAlgebra":
        return cls(dim)

    @cached_property
    def report(self) -> CheckReport:
        return check_dendriform(self.prec, self.succ)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    def require_valid(self) -> None:
        if not self.is_valid:
            raise InvalidStructureError(f"not a dendriform algebra: {self.report.first_failure()}")

    @cached_property
    def pi(self) -> MultiMap:
        """pi_A with label [1] the prec product and [2] the succ product."""
        comps = np.stack([np.transpose(self.prec, (2, 0, 1)), np.transpose(self.succ, (2, 0, 1))])
        return MultiMap(comps)

    def product(self, r: int, x, y) -> np.ndarray:
        t = self.prec if r == 1 else self.succ
        return _mul(t, rational_array(x), rational_array(y))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DendriformAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and bool(np.all(self.prec == other.prec))
            and bool(np.all(self.succ == other.succ))
        )

    def __repr__(self) -> str:
        return f"DendriformAlgebra(dim={self.dim})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "prec": tensor_to_json(self.prec), "succ": tensor_to_json(self.succ)}

    @classmethod
    def from_json(cls, data: dict) -> "DendriformAlgebra":
        return cls(data["dim"], data.get("prec"), data.get("succ"))


def check_dendriform(prec, succ) -> CheckReport:
    """Evaluate the three dendriform identities on all basis triples."""
    P = rational_array(prec)
    S = rational_array(succ)
    if P.shape != S.shape or P.ndim != 3 or len(set(P.shape)) != 1:
        raise ValueError(f"structure tensors of shapes {P.shape}, {S.shape}")
    T = P + S
    rep = CheckReport("dendriform")
    # einsum index names: a, b, c inputs; u intermediate; k output
    eq1 = np.einsum("abu,uck->kabc", P, P) - np.einsum("auk,bcu->kabc", P, T)
    eq2 = np.einsum("abu,uck->kabc", S, P) - np.einsum("auk,bcu->kabc", S, P)
    eq3 = np.einsum("abu,uck->kabc", T, S) - np.einsum("auk,bcu->kabc", S, S)
    rep.add_residual("eq1", eq1)
    rep.add_residual("eq2", eq2)
    rep.add_residual("eq3", eq3)
    return rep


def to_multiplication(A: DendriformAlgebra) -> MultiMap:
    A.require_valid()
    return A.pi


def from_multiplication(pi: MultiMap) -> DendriformAlgebra:
    if pi.arity != 2 or not pi.is_square():
        raise ValueError("need an arity-2 map with target = source")
    c = pi.components
    return DendriformAlgebra(pi.dim_in, np.transpose(c[0], (1, 2, 0)), np.transpose(c[1], (1, 2, 0)))


class AssociativeAlgebra:
    """Product tensor ``mult[i, j, k]`` = coefficient of e_k in e_i e_j."""

    def __init__(self, dim: int, mult=None):
        self.dim = dim
        self.mult = _as_tensor(mult, (dim, dim, dim))
        self.mult.setflags(write=False)

    @cached_property
    def report(self) -> CheckReport:
        M = self.mult
        rep = CheckReport("associative")
        rep.add_residual("assoc", np.einsum("abu,uck->kabc", M, M) - np.einsum("auk,bcu->kabc", M, M))
        return rep

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    def product(self, x, y) -> np.ndarray:
        return _mul(self.mult, rational_array(x), rational_array(y))

    @property
    def tensor(self) -> np.ndarray:
        """Product as an End_A(2) tensor of shape (out, in, in)."""
        return np.transpose(self.mult, (2, 0, 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssociativeAlgebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.mult == other.mult))

    def to_json(self) -> dict:
        return {"dim": self.dim, "mult": tensor_to_json(self.mult)}

    @classmethod
    def from_json(cls, data: dict) -> "AssociativeAlgebra":
        return cls(data["dim"], data.get("mult"))


def associated_associative(A: DendriformAlgebra) -> AssociativeAlgebra:
    star = AssociativeAlgebra(A.dim, A.prec + A.succ)
    if A.is_valid and not star.is_valid:
        raise ArithmeticError("sum of dendriform products failed associativity")
    return star


class Representation:
    """Four actions of a dendriform algebra of dimension ``dim_a`` on M."""

    def __init__(self, dim_a: int, dim_m: int, theta1_prec=None, theta1_succ=None, theta2_prec=None, theta2_succ=None):
        self.dim_a = dim_a
        self.dim_m = dim_m
        left = (dim_a, dim_m, dim_m)
        right = (dim_m, dim_a, dim_m)
        self.theta1_prec = _as_tensor(theta1_prec, left)
        self.theta1_succ = _as_tensor(theta1_succ, left)
        self.theta2_prec = _as_tensor(theta2_prec, right)
        self.theta2_succ = _as_tensor(theta2_succ, right)
        for t in (self.theta1_prec, self.theta1_succ, self.theta2_prec, self.theta2_succ):
            t.setflags(write=False)

    @classmethod
    def adjoint(cls, A: DendriformAlgebra) -> "Representation":
        return cls(A.dim, A.dim, A.prec, A.succ, A.prec, A.succ)

    @classmethod
    def trivial(cls, A: DendriformAlgebra, dim_m: int = 1) -> "Representation":
        return cls(A.dim, dim_m)

    @cached_property
    def theta1(self) -> np.ndarray:
        """Components (label, out, a, m) of theta_1."""
        return np.stack([np.transpose(self.theta1_prec, (2, 0, 1)), np.transpose(self.theta1_succ, (2, 0, 1))])

    @cached_property
    def theta2(self) -> np.ndarray:
        """Components (label, out, m, a) of theta_2."""
        return np.stack([np.transpose(self.theta2_prec, (2, 0, 1)), np.transpose(self.theta2_succ, (2, 0, 1))])

    @classmethod
    def from_components(cls, theta1: np.ndarray, theta2: np.ndarray) -> "Representation":
        dim_m, dim_a = theta1.shape[1], theta1.shape[2]
        return cls(
            dim_a,
            dim_m,
            np.transpose(theta1[0], (1, 2, 0)),
            np.transpose(theta1[1], (1, 2, 0)),
            np.transpose(theta2[0], (1, 2, 0)),
            np.transpose(theta2[1], (1, 2, 0)),
        )

    def is_trivial(self) -> bool:
        return all(
            x == 0
            for t in (self.theta1_prec, self.theta1_succ, self.theta2_prec, self.theta2_succ)
            for x in t.reshape(-1)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            (self.dim_a, self.dim_m) == (other.dim_a, other.dim_m)
            and bool(np.all(self.theta1 == other.theta1))
            and bool(np.all(self.theta2 == other.theta2))
        )

    def to_json(self) -> dict:
        return {
            "dim_a": self.dim_a,
            "dim_m": self.dim_m,
            "theta1_prec": tensor_to_json(self.theta1_prec),
            "theta1_succ": tensor_to_json(self.theta1_succ),
            "theta2_prec": tensor_to_json(self.theta2_prec),
            "theta2_succ": tensor_to_json(self.theta2_succ),
        }

    @classmethod
    def from_json(cls, data: dict, dim_a: int | None = None) -> "Representation":
        dim_a = data.get("dim_a", dim_a)
        if dim_a is None:
            raise ValueError("representation JSON needs dim_a (or an algebra to take it from)")
        return cls(
            dim_a,
            data["dim_m"],
            data.get("theta1_prec"),
            data.get("theta1_succ"),
            data.get("theta2_prec"),
            data.get("theta2_succ"),
        )


def _raw_rep_identities(A: DendriformAlgebra, M: Representation) -> dict[tuple[int, int], np.ndarray]:
    """Nine identities, keyed (group, s), as left side minus right side."""
    P, S = A.prec, A.succ
    T = P + S
    lp, ls = M.theta1_prec, M.theta1_succ
    rp, rs = M.theta2_prec, M.theta2_succ
    lt, rt = lp + ls, rp + rs
    e = np.einsum
    out = {}
    # a, b in A and m in M: output index k
    out[(1, 1)] = e("abu,umk->kabm", P, lp) - e("auk,bmu->kabm", lp, lt)
    out[(1, 2)] = e("abu,umk->kabm", S, lp) - e("auk,bmu->kabm", ls, lp)
    out[(1, 3)] = e("abu,umk->kabm", T, ls) - e("auk,bmu->kabm", ls, ls)
    # a in A, m in M, c in A
    out[(2, 1)] = e("amu,uck->kamc", lp, rp) - e("auk,mcu->kamc", lp, rt)
    out[(2, 2)] = e("amu,uck->kamc", ls, rp) - e("auk,mcu->kamc", ls, rp)
    out[(2, 3)] = e("amu,uck->kamc", lt, rs) - e("auk,mcu->kamc", ls, rs)
    # m in M, b, c in A
    out[(3, 1)] = e("mbu,uck->kmbc", rp, rp) - e("muk,bcu->kmbc", rp, T)
    out[(3, 2)] = e("mbu,uck->kmbc", rs, rp) - e("muk,bcu->kmbc", rs, P)
    out[(3, 3)] = e("mbu,uck->kmbc", rt, rs) - e("muk,bcu->kmbc", rs, S)
    return out


def _compact_rep_identities(A: DendriformAlgebra, M: Representation) -> dict[tuple[int, int], np.ndarray]:
    """The three labelled identities, split by [s] in C_3, oriented like the raw ones."""
    pi = A.pi.components
    t1, t2 = M.theta1, M.theta2
    groups = {
        1: compose_components(t1, pi, 1) - compose_components(t1, t1, 2),
        2: compose_components(t2, t1, 1) - compose_components(t1, t2, 2),
        3: compose_components(t2, t2, 1) - compose_components(t2, pi, 2),
    }
    return {(g, s): groups[g][s - 1] for g in groups for s in (1, 2, 3)}


def check_representation(A: DendriformAlgebra, M: Representation) -> CheckReport:
    if M.dim_a != A.dim:
        raise ValueError(f"representation of a dim-{M.dim_a} algebra used with dim {A.dim}")
    rep = CheckReport("representation")
    raw = _raw_rep_identities(A, M)
    compact = _compact_rep_identities(A, M)
    agree = CheckReport("compact_form_agreement")
    for (g, s), res in raw.items():
        rep.add_residual(f"identity{3 * (g - 1) + s}", res)
        agree.add_residual(f"group{g}[{s}]", res - compact[(g, s)])
    rep.add_section("compact_form_agreement", agree)
    return rep


@dataclass
class Bimodule:
    """Left/right actions of an associative algebra: left[a, m, k], right[m, a, k]."""

    left: np.ndarray
    right: np.ndarray

    def check(self, algebra: AssociativeAlgebra) -> CheckReport:
        Mu, L, R = algebra.mult, self.left, self.right
        e = np.einsum
        rep = CheckReport("bimodule")
        rep.add_residual("left", e("abu,umk->kabm", Mu, L) - e("auk,bmu->kabm", L, L))
        rep.add_residual("middle", e("amu,uck->kamc", L, R) - e("auk,mcu->kamc", L, R))
        rep.add_residual("right", e("mbu,uck->kmbc", R, R) - e("muk,bcu->kmbc", R, Mu))
        return rep


def rep_to_assoc_rep(A: DendriformAlgebra, M: Representation) -> Bimodule:
    bm = Bimodule(M.theta1_prec + M.theta1_succ, M.theta2_prec + M.theta2_succ)
    if A.is_valid and check_representation(A, M).ok:
        rep = bm.check(associated_associative(A))
        if not rep.ok:
            raise ArithmeticError("summed actions failed the bimodule axioms")
    return bm


def _block_product(d: int, m: int, aa, am, ma) -> np.ndarray:
    """Product tensor on A + M from the blocks A x A -> A, A x M -> M, M x A -> M."""
    n = d + m
    t = zeros((n, n, n))
    t[:d, :d, :d] = aa
    t[:d, d:, d:] = am
    t[d:, :d, d:] = ma
    return t


def semidirect(A: DendriformAlgebra, M: Representation) -> DendriformAlgebra:
    if not check_representation(A, M).ok:
        raise InvalidStructureError("semidirect product needs a valid representation")
    d, m = A.dim, M.dim_m
    return DendriformAlgebra(
        d + m,
        _block_product(d, m, A.prec, M.theta1_prec, M.theta2_prec),
        _block_product(d, m, A.succ, M.theta1_succ, M.theta2_succ),
    )


def assoc_semidirect(star: AssociativeAlgebra, bm: Bimodule) -> AssociativeAlgebra:
    d, m = star.dim, bm.left.shape[1]
    return AssociativeAlgebra(d + m, _block_product(d, m, star.mult, bm.left, bm.right))


def _matrix(R, d: int) -> np.ndarray:
    a = R.array if isinstance(R, RationalMatrix) else rational_array(R)
    if a.shape != (d, d):
        raise ValueError(f"operator of shape {a.shape}, expected ({d}, {d})")
    return a


def check_rota_baxter(assoc: AssociativeAlgebra, R) -> CheckReport:
    """m(Ra, Rb) = R(m(a, Rb) + m(Ra, b)) on all basis pairs."""
    Rm = _matrix(R, assoc.dim)
    Mu = assoc.mult
    e = np.einsum
    lhs = e("ia,jb,ijk->kab", Rm, Rm, Mu)
    inner = e("jb,ajl->lab", Rm, Mu) + e("ia,ibl->lab", Rm, Mu)
    rhs = e("kl,lab->kab", Rm, inner)
    rep = CheckReport("rota_baxter")
    rep.add_residual("rota_baxter", lhs - rhs)
    return rep


def aguiar(assoc: AssociativeAlgebra, R) -> DendriformAlgebra:
    """a < b = m(a, R b), a > b = m(R a, b)."""
    Rm = _matrix(R, assoc.dim)
    if not check_rota_baxter(assoc, Rm).ok:
        raise InvalidStructureError("not a Rota-Baxter operator of weight zero")
    Mu = assoc.mult
    prec = np.einsum("lj,ilk->ijk", Rm, Mu)
    succ = np.einsum("li,ljk->ijk", Rm, Mu)
    return DendriformAlgebra(assoc.dim, prec, succ)


def check_morphism(A: DendriformAlgebra, B: DendriformAlgebra, phi) -> CheckReport:
    """phi(x r y) = phi(x) r phi(y) for both products; phi has shape (dim B, dim A)."""
    F = rational_array(phi).reshape(B.dim, A.dim)
    rep = CheckReport("dendriform_morphism")
    e = np.einsum
    for name, ta, tb in (("prec", A.prec, B.prec), ("succ", A.succ, B.succ)):
        lhs = e("ku,abu->kab", F, ta)
        rhs = e("ia,jb,ijk->kab", F, F, tb)
        rep.add_residual(name, lhs - rhs)
    return rep


def multiplication_residual(A: DendriformAlgebra) -> MultiMap:
    return is_multiplication(A.pi)[1]
