"""Two-term structures A_1 -d-> A_0: their condition list, and the skeletal and
strict correspondences with cocycles and crossed modules.

Blocks use the component layout (label, out, in, in[, in]):

* ``m00``: A_0 x A_0 -> A_0, shape (2, n0, n0, n0)
* ``m01``: A_0 x A_1 -> A_1, shape (2, n1, n0, n1)
* ``m10``: A_1 x A_0 -> A_1, shape (2, n1, n1, n0)
* ``m3``:  A_0^3 -> A_1,     shape (3, n1, n0, n0, n0)
* ``d``:   A_1 -> A_0,       shape (n0, n1)

A_1 x A_1 would land in degree 2, which does not exist, so condition (i) holds
by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..cohomology import is_cocycle
from ..dendriform import (
    DendriformAlgebra,
    InvalidStructureError,
    Representation,
    check_morphism,
    check_representation,
)
from ..exactnum import rational_array, tensor_to_json, zeros
from ..operadcore import MultiMap, compose_components, insert_tensor
from ..report import CheckReport
from .graded import GradedDendSystem, GradedSpace, check_dend_infinity, dend_infinity_residual

__all__ = [
    "TwoTermDend",
    "check_two_term",
    "two_term_family_signs",
    "FAMILY_SIGNS",
    "CONDITIONS",
    "skeletal_to_triple",
    "triple_to_skeletal",
    "CrossedModule",
    "check_crossed_module",
    "strict_to_crossed",
    "crossed_to_strict",
    "identity_strict",
    "semidirect_two_term",
    "check_rep_morphism",
]

CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi1", "vi2", "vi3", "vii")


def _feed(T: np.ndarray, mat: np.ndarray, slot: int) -> np.ndarray:
    """Precompose input ``slot`` of every label component with a linear map."""
    return np.stack([insert_tensor(T[r], mat, slot) for r in range(T.shape[0])])


def _post(mat: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Compose a linear map after every label component."""
    return np.tensordot(mat, T, axes=([1], [1])).swapaxes(0, 1)


def _arr(x, shape) -> np.ndarray:
    a = zeros(shape) if x is None else rational_array(x)
    if a.shape != shape:
        raise ValueError(f"block of shape {a.shape}, expected {shape}")
    a.setflags(write=False)
    return a


class TwoTermDend:
    def __init__(self, n0: int, n1: int, d=None, m00=None, m01=None, m10=None, m3=None):
        self.n0, self.n1 = n0, n1
        self.d = _arr(d, (n0, n1))
        self.m00 = _arr(m00, (2, n0, n0, n0))
        self.m01 = _arr(m01, (2, n1, n0, n1))
        self.m10 = _arr(m10, (2, n1, n1, n0))
        self.m3 = _arr(m3, (3, n1, n0, n0, n0))

    def _blocks(self):
        return (self.d, self.m00, self.m01, self.m10, self.m3)

    def is_skeletal(self) -> bool:
        return all(x == 0 for x in self.d.reshape(-1))

    def is_strict(self) -> bool:
        return all(x == 0 for x in self.m3.reshape(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoTermDend):
            return NotImplemented
        return (self.n0, self.n1) == (other.n0, other.n1) and all(
            np.all(a == b) for a, b in zip(self._blocks(), other._blocks())
        )

    def __repr__(self) -> str:
        return f"TwoTermDend(n0={self.n0}, n1={self.n1})"

    def with_block(self, **blocks) -> "TwoTermDend":
        cur = dict(d=self.d, m00=self.m00, m01=self.m01, m10=self.m10, m3=self.m3)
        cur.update(blocks)
        return TwoTermDend(self.n0, self.n1, **cur)

    def to_json(self) -> dict:
        return {
            "n0": self.n0,
            "n1": self.n1,
            "d": tensor_to_json(self.d),
            "m00": tensor_to_json(self.m00),
            "m01": tensor_to_json(self.m01),
            "m10": tensor_to_json(self.m10),
            "m3": tensor_to_json(self.m3),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwoTermDend":
        return cls(data["n0"], data["n1"], *(data.get(k) for k in ("d", "m00", "m01", "m10", "m3")))

    # graded view -------------------------------------------------------------

    def to_graded(self) -> GradedDendSystem:
        n0, n1 = self.n0, self.n1
        N = n0 + n1
        A0, A1 = slice(0, n0), slice(n0, N)
        mu1 = zeros((1, N, N))
        mu1[0, A0, A1] = self.d
        mu2 = zeros((2, N, N, N))
        mu2[:, A0, A0, A0] = self.m00
        mu2[:, A1, A0, A1] = self.m01
        mu2[:, A1, A1, A0] = self.m10
        mu3 = zeros((3, N, N, N, N))
        mu3[:, A1, A0, A0, A0] = self.m3
        return GradedDendSystem(GradedSpace((n0, n1)), {1: mu1, 2: mu2, 3: mu3}, 3)

    @classmethod
    def from_graded(cls, S: GradedDendSystem) -> "TwoTermDend":
        sp = S.space
        if sp.low != 0 or len(sp.dims) != 2:
            raise ValueError("a two-term structure lives in degrees 0 and 1")
        if any(k > 3 and not _zero(S.ops[k]) for k in S.ops):
            raise ValueError("two-term structures have no operations above arity 3")
        n0, n1 = sp.dims
        N = n0 + n1
        A0, A1 = slice(0, n0), slice(n0, N)
        mu1, mu2, mu3 = S.op(1), S.op(2), S.op(3)
        # homogeneity already forces every other block to vanish
        return cls(n0, n1, mu1[0, A0, A1], mu2[:, A0, A0, A0], mu2[:, A1, A0, A1], mu2[:, A1, A1, A0], mu3[:, A1, A0, A0, A0])


def _zero(t: np.ndarray) -> bool:
    return all(x == 0 for x in t.reshape(-1))


def two_term_residuals(T: TwoTermDend) -> dict[str, np.ndarray]:
    """Each condition as (left side) - (right side), label axis first."""
    d = T.d
    c = compose_components
    blocks: dict[str, np.ndarray] = {}
    blocks["i"] = zeros((2, 0, T.n1, T.n1))
    blocks["ii"] = _post(d, T.m01) - _feed(T.m00, d, 2)
    blocks["iii"] = _post(d, T.m10) - _feed(T.m00, d, 1)
    blocks["iv"] = _feed(T.m01, d, 1) - _feed(T.m10, d, 2)
    blocks["v"] = c(T.m00, T.m00, 1) - c(T.m00, T.m00, 2) - _post(d, T.m3)
    blocks["vi1"] = c(T.m01, T.m00, 1) - c(T.m01, T.m01, 2) - _feed(T.m3, d, 3)
    blocks["vi2"] = c(T.m10, T.m01, 1) - c(T.m01, T.m10, 2) - _feed(T.m3, d, 2)
    blocks["vi3"] = c(T.m10, T.m10, 1) - c(T.m10, T.m00, 2) - _feed(T.m3, d, 1)
    blocks["vii"] = (
        c(T.m3, T.m00, 1) - c(T.m3, T.m00, 2) + c(T.m3, T.m00, 3) - c(T.m10, T.m3, 1) - c(T.m01, T.m3, 2)
    )
    return blocks


def check_two_term(T: TwoTermDend) -> CheckReport:
    """One section per condition (i) ... (vii)."""
    rep = CheckReport("two_term")
    for name, res in two_term_residuals(T).items():
        sec = CheckReport(name)
        for r in range(res.shape[0]):
            sec.add_residual(name, res[r], label=r + 1)
        rep.add_section(name, sec)
    return rep


# (n, input degrees) of the general identity that each condition corresponds to
_FAMILY_PATTERN = {
    "ii": (2, (0, 1)),
    "iii": (2, (1, 0)),
    "iv": (2, (1, 1)),
    "v": (3, (0, 0, 0)),
    "vi1": (3, (0, 0, 1)),
    "vi2": (3, (0, 1, 0)),
    "vi3": (3, (1, 0, 0)),
    "vii": (4, (0, 0, 0, 0)),
}


# general identity = sign * condition; fixed by hand expansion and stable on random blocks
FAMILY_SIGNS = {"ii": -1, "iii": -1, "iv": 1, "v": -1, "vi1": -1, "vi2": -1, "vi3": -1, "vii": -1}


def general_identity_blocks(T: TwoTermDend) -> dict[str, np.ndarray]:
    """The general labelled identity restricted to each condition's degree pattern."""
    S = T.to_graded()
    sp = S.space
    out = {}
    cache: dict[int, np.ndarray] = {}
    for name, (n, degs) in _FAMILY_PATTERN.items():
        if n not in cache:
            cache[n] = dend_infinity_residual(S, n)
        out_deg = sum(degs) + n - 3
        idx = np.ix_(range(n), list(sp.indices(out_deg)), *[list(sp.indices(g)) for g in degs])
        out[name] = cache[n][idx]
    return out


def two_term_family_signs(T: TwoTermDend) -> dict[str, int | None]:
    """Sign s with general = s * condition for each family (None when both vanish).

    Raises if some family is not a global multiple of the other by +-1.
    """
    mine = two_term_residuals(T)
    gen = general_identity_blocks(T)
    signs: dict[str, int | None] = {}
    for name in _FAMILY_PATTERN:
        a, b = mine[name], gen[name]
        if np.all(a == b):
            s = 1 if not _zero(a) else None
        elif np.all(a == -b):
            s = -1
        else:
            raise ArithmeticError(f"condition {name} is not a signed copy of the general identity")
        signs[name] = s
    return signs


# -- skeletal -------------------------------------------------------------------


def skeletal_to_triple(T) -> tuple[DendriformAlgebra, Representation, MultiMap]:
    """(A_0, A_top as representation, top operation as cocycle).

    Accepts a skeletal :class:`TwoTermDend` or a graded system of the form
    A_{n-1} -0-> 0 ... 0 -> A_0 with only mu_2 and mu_{n+1} nonzero.
    """
    if isinstance(T, TwoTermDend):
        if not T.is_skeletal():
            raise ValueError("skeletal structures have d = 0")
        rep = check_two_term(T)
        if not rep.ok:
            raise InvalidStructureError(f"not a two-term structure: {rep.first_failure()}")
        A, M = _algebra_and_rep(T.m00, T.m01, T.m10)
        return A, M, MultiMap(T.m3)
    S: GradedDendSystem = T
    sp = S.space
    top = len(sp.dims) - 1
    if sp.low != 0 or top < 1 or any(sp.dims[1:top]):
        raise ValueError("expected a space concentrated in degrees 0 and n - 1")
    for k, t in S.ops.items():
        if k not in (2, top + 2) and not _zero(t):
            raise ValueError(f"unexpected nonzero operation of arity {k}")
    rep = check_dend_infinity(S)
    if not rep.ok:
        raise InvalidStructureError(f"not a Dend-infinity system: {rep.first_failure()}")
    n0, nt = sp.dims[0], sp.dims[top]
    A0 = list(range(n0))
    At = list(sp.indices(top))
    mu2 = S.op(2)
    m00 = mu2[np.ix_(range(2), A0, A0, A0)]
    m01 = mu2[np.ix_(range(2), At, A0, At)]
    m10 = mu2[np.ix_(range(2), At, At, A0)]
    k = top + 2
    sigma = S.op(k)[np.ix_(range(k), At, *([A0] * k))]
    A, M = _algebra_and_rep(m00, m01, m10)
    return A, M, MultiMap(sigma)


def _algebra_and_rep(m00, m01, m10):
    A = DendriformAlgebra(m00.shape[1], np.transpose(m00[0], (1, 2, 0)), np.transpose(m00[1], (1, 2, 0)))
    M = Representation.from_components(m01, m10)
    return A, M


def triple_to_skeletal(A: DendriformAlgebra, M: Representation, sigma: MultiMap):
    """Degree-3 cocycles give a TwoTermDend; degree n + 1 >= 4 a graded system with gap."""
    A.require_valid()
    if not check_representation(A, M).ok:
        raise InvalidStructureError("coefficients are not a representation")
    if sigma.dim_in != A.dim or sigma.dim_out != M.dim_m:
        raise ValueError("cocycle has the wrong shape")
    if not is_cocycle(sigma, A, M):
        raise InvalidStructureError("sigma is not a cocycle")
    k = sigma.arity
    if k < 3:
        raise ValueError("skeletal structures need a cocycle of degree at least 3")
    m00 = A.pi.components
    if k == 3:
        return TwoTermDend(A.dim, M.dim_m, None, m00, M.theta1, M.theta2, sigma.components)
    top = k - 2
    dims = [A.dim] + [0] * (top - 1) + [M.dim_m]
    sp = GradedSpace(tuple(dims))
    N = sp.total
    A0 = list(range(A.dim))
    At = list(sp.indices(top))
    mu2 = zeros((2, N, N, N))
    mu2[np.ix_(range(2), A0, A0, A0)] = m00
    mu2[np.ix_(range(2), At, A0, At)] = M.theta1
    mu2[np.ix_(range(2), At, At, A0)] = M.theta2
    muk = zeros((k, N) + (N,) * k)
    muk[np.ix_(range(k), At, *([A0] * k))] = sigma.components
    return GradedDendSystem(sp, {2: mu2, k: muk}, k)


# -- crossed modules --------------------------------------------------------------


def check_rep_morphism(A: DendriformAlgebra, N: Representation, M: Representation, f) -> CheckReport:
    """f: N -> M intertwines all four actions; f has shape (dim M, dim N)."""
    F = rational_array(f).reshape(M.dim_m, N.dim_m)
    rep = CheckReport("representation_morphism")
    rep.add_residual("theta1", _post(F, N.theta1) - _feed(M.theta1, F, 2))
    rep.add_residual("theta2", _post(F, N.theta2) - _feed(M.theta2, F, 1))
    return rep


@dataclass(frozen=True)
class CrossedModule:
    """dt: A -> B with B acting on A; ``action`` is a Representation of B on A."""

    A: DendriformAlgebra
    B: DendriformAlgebra
    dt: np.ndarray
    action: Representation

    def __post_init__(self):
        dt = rational_array(self.dt)
        if dt.shape != (self.B.dim, self.A.dim):
            raise ValueError(f"dt has shape {dt.shape}, expected {(self.B.dim, self.A.dim)}")
        dt.setflags(write=False)
        object.__setattr__(self, "dt", dt)
        if (self.action.dim_a, self.action.dim_m) != (self.B.dim, self.A.dim):
            raise ValueError("action must be a representation of B on A")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedModule):
            return NotImplemented
        return self.A == other.A and self.B == other.B and bool(np.all(self.dt == other.dt)) and self.action == other.action

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "dt": tensor_to_json(self.dt), "action": self.action.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "CrossedModule":
        A = DendriformAlgebra.from_json(data["A"])
        B = DendriformAlgebra.from_json(data["B"])
        return cls(A, B, data["dt"], Representation.from_json(data["action"], B.dim))


def check_crossed_module(X: CrossedModule) -> CheckReport:
    rep = CheckReport("crossed_module")
    rep.add_section("A", X.A.report)
    rep.add_section("B", X.B.report)
    rep.add_section("dt_morphism", check_morphism(X.A, X.B, X.dt))
    rep.add_section("action", check_representation(X.B, X.action))
    dt = X.dt
    piA, piB = X.A.pi.components, X.B.pi.components
    t1, t2 = X.action.theta1, X.action.theta2
    c = compose_components
    ids = CheckReport("identities")
    ids.add_residual("dt_theta1", _post(dt, t1) - _feed(piB, dt, 2))
    ids.add_residual("dt_theta2", _post(dt, t2) - _feed(piB, dt, 1))
    ids.add_residual("theta1_dt", _feed(t1, dt, 1) - piA)
    ids.add_residual("theta2_dt", _feed(t2, dt, 2) - piA)
    ids.add_residual("theta1_pi", c(t1, piA, 2) - c(piA, t1, 1))
    ids.add_residual("theta2_pi", c(t2, piA, 1) - c(piA, t2, 2))
    rep.add_section("identities", ids)
    return rep


def strict_to_crossed(T: TwoTermDend) -> CrossedModule:
    if not T.is_strict():
        raise ValueError("strict structures have mu_3 = 0")
    rep = check_two_term(T)
    if not rep.ok:
        raise InvalidStructureError(f"not a two-term structure: {rep.first_failure()}")
    B, action = _algebra_and_rep(T.m00, T.m01, T.m10)
    pa = _feed(T.m01, T.d, 1)  # mu_2(dm, n), equal to mu_2(m, dn) by (iv)
    A = DendriformAlgebra(T.n1, np.transpose(pa[0], (1, 2, 0)), np.transpose(pa[1], (1, 2, 0)))
    return CrossedModule(A, B, T.d, action)


def crossed_to_strict(X: CrossedModule) -> TwoTermDend:
    rep = check_crossed_module(X)
    if not rep.ok:
        raise InvalidStructureError(f"not a crossed module: {rep.first_failure()}")
    return TwoTermDend(X.B.dim, X.A.dim, X.dt, X.B.pi.components, X.action.theta1, X.action.theta2, None)


def identity_strict(A: DendriformAlgebra) -> TwoTermDend:
    """A -id-> A with every mu_2 block equal to pi_A and mu_3 = 0."""
    p = A.pi.components
    return TwoTermDend(A.dim, A.dim, np.eye(A.dim, dtype=int), p, p, p, None)


def semidirect_two_term(A: DendriformAlgebra, M: Representation, N: Representation, f) -> TwoTermDend:
    """N -f-> A + M with the semidirect product on A + M and mu_3 = 0.

    A + M acts on N through its A coordinate only.
    """
    A.require_valid()
    for R in (M, N):
        if not check_representation(A, R).ok:
            raise InvalidStructureError("both coefficient spaces must be representations")
    F = rational_array(f).reshape(M.dim_m, N.dim_m)
    mrep = check_rep_morphism(A, N, M, F)
    if not mrep.ok:
        raise InvalidStructureError(f"f is not a morphism of representations: {mrep.first_failure()}")
    da, dm, dn = A.dim, M.dim_m, N.dim_m
    n0 = da + dm
    a_, m_ = slice(0, da), slice(da, n0)
    d = zeros((n0, dn))
    d[m_, :] = F
    m00 = zeros((2, n0, n0, n0))
    m00[:, a_, a_, a_] = A.pi.components
    m00[:, m_, a_, m_] = M.theta1
    m00[:, m_, m_, a_] = M.theta2
    m01 = zeros((2, dn, n0, dn))
    m01[:, :, a_, :] = N.theta1
    m10 = zeros((2, dn, dn, n0))
    m10[:, :, :, a_] = N.theta2
    return TwoTermDend(n0, dn, d, m00, m01, m10, None)

