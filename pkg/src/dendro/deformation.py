"""Truncated formal deformations of dendriform algebras.

A deformation of order N is the list pi_1, ..., pi_N of arity-2 maps (pi_0 is
the structure itself).  Every condition is an order-by-order tensor identity,
so all checks here are exact finite computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from .cohomology import cohomology_dim, dend_coboundary, is_cocycle, solve_coboundary
from .dendriform import AssociativeAlgebra, DendriformAlgebra, InvalidStructureError, Representation, aguiar
from .exactnum import rational_array
from .operadcore import MultiMap, circle, end_circle, partial_compose
from .report import CheckReport

__all__ = [
    "TruncatedDeformation",
    "check_deformation",
    "infinitesimal",
    "transport",
    "formal_inverse",
    "obstruction",
    "extend_deformation",
    "ExtensionResult",
    "check_derivation",
    "udf_generate",
    "check_associative_splitting",
    "rota_baxter_deformation",
    "check_rota_baxter_deformation",
]


@dataclass
class TruncatedDeformation:
    algebra: DendriformAlgebra
    terms: list[MultiMap] = field(default_factory=list)

    def __post_init__(self):
        d = self.algebra.dim
        for k, p in enumerate(self.terms, start=1):
            if p.arity != 2 or p.dim_in != d or p.dim_out != d:
                raise ValueError(f"term {k} is not an arity-2 map on dim {d}")

    @property
    def order(self) -> int:
        return len(self.terms)

    def pi(self, i: int) -> MultiMap:
        if i == 0:
            return self.algebra.pi
        if 1 <= i <= self.order:
            return self.terms[i - 1]
        return MultiMap.zero(2, self.algebra.dim)

    def truncate(self, n: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.algebra, list(self.terms[:n]))

    def extended(self, term: MultiMap) -> "TruncatedDeformation":
        return TruncatedDeformation(self.algebra, list(self.terms) + [term])

    def products(self, i: int) -> DendriformAlgebra:
        """The pair (prec_i, succ_i) packaged as (possibly invalid) structure constants."""
        c = self.pi(i).components
        return DendriformAlgebra(self.algebra.dim, np.transpose(c[0], (1, 2, 0)), np.transpose(c[1], (1, 2, 0)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedDeformation):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "order": self.order,
            "terms": [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedDeformation":
        A = DendriformAlgebra.from_json(data["algebra"])
        terms = [MultiMap.from_json(t) for t in data.get("terms", [])]
        if "order" in data and data["order"] != len(terms):
            raise ValueError(f"order {data['order']} but {len(terms)} terms")
        return cls(A, terms)


def _equation(deform: TruncatedDeformation, n: int, inner_only: bool = False) -> MultiMap:
    lo = 1 if inner_only else 0
    acc = MultiMap.zero(3, deform.algebra.dim)
    for i in range(lo, n + 1 - lo):
        acc = acc + circle(deform.pi(i), deform.pi(n - i))
    return acc


def check_deformation(deform: TruncatedDeformation) -> CheckReport:
    """sum_{i+j=n} pi_i o pi_j = 0 for every n = 0, ..., N (one section per n)."""
    rep = CheckReport("deformation")
    for n in range(deform.order + 1):
        sec = CheckReport(f"order {n}")
        sec.add_residual("deformation_equation", _equation(deform, n).components, order=n)
        rep.add_section(str(n), sec)
    return rep


def first_invalid_order(deform: TruncatedDeformation) -> int | None:
    rep = check_deformation(deform)
    for key, sec in rep.sections.items():
        if not sec.ok:
            return int(key)
    return None


@dataclass
class Infinitesimal:
    order: int | None
    cochain: MultiMap
    is_cocycle: bool
    trivial: bool


def infinitesimal(deform: TruncatedDeformation) -> Infinitesimal:
    """First nonzero pi_k, with its cocycle verdict."""
    A = deform.algebra
    for k in range(1, deform.order + 1):
        p = deform.pi(k)
        if not p.is_zero():
            if first_invalid_order(deform.truncate(k)) is not None:
                raise InvalidStructureError(f"deformation fails before order {k}")
            return Infinitesimal(k, p, is_cocycle(p, A, Representation.adjoint(A)), False)
    return Infinitesimal(None, MultiMap.zero(2, A.dim), True, True)


def _apply_inputs(p: MultiMap, left: MultiMap, right: MultiMap) -> MultiMap:
    """p([r]; left(a), right(b))."""
    return partial_compose(partial_compose(p, left, 1), right, 2)


def _as_linear(m) -> MultiMap:
    return m if isinstance(m, MultiMap) else MultiMap.from_matrix(m)


def transport(deform: TruncatedDeformation, phis: Sequence) -> TruncatedDeformation:
    """Deformation pi' with phi_t(pi_t(a, b)) = pi'_t(phi_t a, phi_t b), to order N.

    ``phis`` lists phi_1, phi_2, ... (phi_0 = id); missing terms are zero.
    """
    A = deform.algebra
    d = A.dim
    N = deform.order
    phi = [MultiMap.identity(d)] + [_as_linear(p) for p in phis]
    for p in phi:
        if p.arity != 1 or p.dim_in != d or p.dim_out != d:
            raise ValueError("formal map terms must be square matrices on A")
    phi = phi + [MultiMap.zero(1, d)] * max(0, N + 1 - len(phi))
    new: list[MultiMap] = [A.pi]
    for n in range(1, N + 1):
        acc = MultiMap.zero(2, d)
        for i in range(n + 1):
            acc = acc + partial_compose(phi[i], deform.pi(n - i), 1)
        for k in range(n):
            for i in range(n - k + 1):
                j = n - k - i
                if phi[i].is_zero() or phi[j].is_zero():
                    continue
                acc = acc - _apply_inputs(new[k], phi[i], phi[j])
        new.append(acc)
    out = TruncatedDeformation(A, new[1:])
    bad = first_invalid_order(out)
    if bad is not None and first_invalid_order(deform) is None:
        raise ArithmeticError(f"transported deformation fails at order {bad}")
    return out


def formal_inverse(phis: Sequence, dim: int, order: int) -> list[MultiMap]:
    """psi_1..psi_N with (sum phi_i t^i)(sum psi_j t^j) = id mod t^(N+1)."""
    phi = [MultiMap.identity(dim)] + [_as_linear(p) for p in phis]
    phi = phi + [MultiMap.zero(1, dim)] * max(0, order + 1 - len(phi))
    psi = [MultiMap.identity(dim)]
    for n in range(1, order + 1):
        acc = MultiMap.zero(1, dim)
        for i in range(1, n + 1):
            acc = acc - partial_compose(phi[i], psi[n - i], 1)
        psi.append(acc)
    return psi[1:]


def obstruction(deform: TruncatedDeformation) -> MultiMap:
    """-sum_{i+j=N+1, i,j>=1} pi_i o pi_j for a deformation valid to its order N."""
    bad = first_invalid_order(deform)
    if bad is not None:
        raise InvalidStructureError(f"deformation equation fails at order {bad}")
    A = deform.algebra
    obs = -_equation(deform, deform.order + 1, inner_only=True)
    if not dend_coboundary(obs, A, Representation.adjoint(A)).is_zero():
        raise ArithmeticError("obstruction is not a 3-cocycle")
    return obs


@dataclass
class ExtensionResult:
    term: MultiMap | None
    obstruction: MultiMap
    solution_space_dim: int

    @property
    def extendable(self) -> bool:
        return self.term is not None


def extend_deformation(deform: TruncatedDeformation) -> ExtensionResult:
    """Next term pi_{N+1} making the order-(N+1) equation hold, if one exists.

    The order-(N+1) equation reads pi o x + x o pi = obstruction, that is
    delta_dend(x) = -obstruction on arity-2 cochains.  Solutions form a coset
    of Z^2; the returned one is the elimination-canonical representative.
    """
    A = deform.algebra
    M = Representation.adjoint(A)
    obs = obstruction(deform)
    z2 = cohomology_dim(A, M, 2).dim_Z
    if obs.is_zero():
        return ExtensionResult(MultiMap.zero(2, A.dim), obs, z2)
    x = solve_coboundary(-obs, A, M)
    if x is None:
        return ExtensionResult(None, obs, 0)
    if first_invalid_order(deform.extended(x)) is not None:
        raise ArithmeticError("solved term does not extend the deformation")
    return ExtensionResult(x, obs, z2)


# -- derivations and the universal deformation --------------------------------


def check_derivation(A: DendriformAlgebra, D) -> CheckReport:
    """D(a r b) = a r Db + Da r b for both products, cross-checked with delta D = 0."""
    Dm = rational_array(D).reshape(A.dim, A.dim)
    e = np.einsum
    rep = CheckReport("derivation")
    for name, T in (("prec", A.prec), ("succ", A.succ)):
        lhs = e("ku,abu->kab", Dm, T)
        rhs = e("jb,ajk->kab", Dm, T) + e("ia,ibk->kab", Dm, T)
        rep.add_residual(name, lhs - rhs)
    cross = CheckReport("coboundary_cross_check")
    delta = dend_coboundary(MultiMap.from_matrix(Dm), A, Representation.adjoint(A))
    cross.checked = delta.components.size
    if delta.is_zero() != (not rep.failures):
        cross.failures.append({"identity": "product_rule_vs_coboundary", "residual": "disagree"})
    rep.add_section("coboundary", cross)
    return rep


def _matrix_power(D: np.ndarray, i: int) -> np.ndarray:
    out = np.identity(D.shape[0], dtype=object) * Fraction(1)
    for _ in range(i):
        out = out.dot(D)
    return out


def udf_generate(A: DendriformAlgebra, D1, D2, order: int) -> TruncatedDeformation:
    """pi_i([r]; a, b) = pi_A([r]; D1^i a, D2^i b) / i!."""
    A.require_valid()
    d = A.dim
    M1 = rational_array(D1).reshape(d, d)
    M2 = rational_array(D2).reshape(d, d)
    for name, Dm in (("D1", M1), ("D2", M2)):
        rep = check_derivation(A, Dm)
        if rep.failures:
            raise InvalidStructureError(f"{name} is not a derivation: {rep.first_failure()}")
    if not np.all(M1.dot(M2) == M2.dot(M1)):
        raise InvalidStructureError("derivations do not commute")
    terms = []
    for i in range(1, order + 1):
        p = _apply_inputs(A.pi, MultiMap.from_matrix(_matrix_power(M1, i)), MultiMap.from_matrix(_matrix_power(M2, i)))
        terms.append(p * Fraction(1, factorial(i)))
    return TruncatedDeformation(A, terms)


def check_associative_splitting(deform: TruncatedDeformation) -> CheckReport:
    """The label sums star_i = S(pi_i) satisfy the associative deformation equations."""
    stars = [deform.pi(i).label_sum() for i in range(deform.order + 1)]
    rep = CheckReport("associative_deformation")
    for n in range(deform.order + 1):
        acc = None
        for i in range(n + 1):
            t = end_circle(stars[i], stars[n - i])
            acc = t if acc is None else acc + t
        rep.add_residual("associative_equation", acc, order=n)
    return rep


# -- Rota-Baxter deformations ----------------------------------------------------


def _mats(seq: Sequence, d: int) -> list[np.ndarray]:
    return [rational_array(x).reshape(d, d) for x in seq]


def _tensors(seq: Sequence, d: int) -> list[np.ndarray]:
    return [rational_array(x).reshape(d, d, d) for x in seq]


def check_rota_baxter_deformation(assoc: AssociativeAlgebra, R, m_terms: Sequence, R_terms: Sequence) -> CheckReport:
    """(m_t, R_t) is associative and Rota-Baxter up to order N = max(len)."""
    d = assoc.dim
    ms = [assoc.mult] + _tensors(m_terms, d)
    Rs = _mats([R], d) + _mats(R_terms, d)
    N = max(len(ms), len(Rs)) - 1
    zero_t = rational_array(np.zeros((d, d, d), dtype=int))
    zero_m = rational_array(np.zeros((d, d), dtype=int))
    ms += [zero_t] * (N + 1 - len(ms))
    Rs += [zero_m] * (N + 1 - len(Rs))
    e = np.einsum
    rep = CheckReport("rota_baxter_deformation")
    for n in range(N + 1):
        assoc_res = None
        rb = None
        for i in range(n + 1):
            j = n - i
            t = e("abu,uck->kabc", ms[i], ms[j]) - e("auk,bcu->kabc", ms[i], ms[j])
            assoc_res = t if assoc_res is None else assoc_res + t
        for i in range(n + 1):
            for j in range(n + 1 - i):
                k = n - i - j
                lhs = e("ia,jb,ijk->kab", Rs[i], Rs[j], ms[k])
                inner = e("jb,ajl->lab", Rs[j], ms[k]) + e("ja,jbl->lab", Rs[j], ms[k])
                rhs = e("kl,lab->kab", Rs[i], inner)
                t = lhs - rhs
                rb = t if rb is None else rb + t
        rep.add_residual("associativity", assoc_res, order=n)
        rep.add_residual("rota_baxter", rb, order=n)
    return rep


def rota_baxter_deformation(assoc: AssociativeAlgebra, R, m_terms: Sequence, R_terms: Sequence, order: int | None = None) -> TruncatedDeformation:
    """x <_t y = sum_n (sum_{i+j=n} m_i(x, R_j y)) t^n, and x >_t y likewise with R_j x."""
    d = assoc.dim
    ms = [assoc.mult] + _tensors(m_terms, d)
    Rs = _mats([R], d) + _mats(R_terms, d)
    N = max(len(ms), len(Rs)) - 1 if order is None else order
    get_m = lambda i: ms[i] if i < len(ms) else None
    get_R = lambda j: Rs[j] if j < len(Rs) else None
    e = np.einsum
    base = aguiar(assoc, Rs[0])
    terms = []
    for n in range(1, N + 1):
        prec = rational_array(np.zeros((d, d, d), dtype=int))
        succ = rational_array(np.zeros((d, d, d), dtype=int))
        for i in range(n + 1):
            m, Rj = get_m(i), get_R(n - i)
            if m is None or Rj is None:
                continue
            prec = prec + e("lj,ilk->ijk", Rj, m)
            succ = succ + e("li,ljk->ijk", Rj, m)
        terms.append(MultiMap(np.stack([np.transpose(prec, (2, 0, 1)), np.transpose(succ, (2, 0, 1))])))
    return TruncatedDeformation(base, terms)
