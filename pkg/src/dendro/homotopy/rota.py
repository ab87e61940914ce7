"""Rota-Baxter operators on A-infinity systems and the labelled systems they induce."""

from __future__ import annotations

import numpy as np

from ..dendriform import AssociativeAlgebra, Bimodule, InvalidStructureError
from ..exactnum import rational_array, zeros
from ..operadcore import insert_tensor
from ..report import CheckReport
from .graded import GradedAInfSystem, GradedDendSystem, GradedSpace

__all__ = [
    "check_rb_a_infinity",
    "induced_dend_infinity",
    "module_morphism_complex",
    "dga_system",
]


def _degree_zero(space: GradedSpace, R) -> np.ndarray:
    Rm = rational_array(R)
    N = space.total
    if Rm.shape != (N, N):
        raise ValueError(f"operator of shape {Rm.shape}, expected {(N, N)}")
    deg = space.degrees
    for i, j in zip(*np.nonzero(np.vectorize(lambda x: x != 0, otypes=[bool])(Rm))):
        if deg[i] != deg[j]:
            raise ValueError("operator must preserve degrees")
    return Rm


def _apply_all_but(T: np.ndarray, R: np.ndarray, keep: int | None) -> np.ndarray:
    """T(R a_1, ..., a_keep, ..., R a_k) for an unlabelled (out, in^k) tensor."""
    k = T.ndim - 1
    out = T
    for slot in range(1, k + 1):
        if slot != keep:
            out = insert_tensor(out, R, slot)
    return out


def check_rb_a_infinity(S: GradedAInfSystem, R) -> CheckReport:
    """mu_k(Ra_1, ..., Ra_k) = R(sum_i mu_k(Ra_1, ..., a_i, ..., Ra_k)) for every stored k."""
    Rm = _degree_zero(S.space, R)
    rep = CheckReport("rota_baxter_a_infinity")
    for k in sorted(S.ops):
        T = S.ops[k]
        lhs = _apply_all_but(T, Rm, None)
        inner = sum(_apply_all_but(T, Rm, i) for i in range(1, k + 1))
        rhs = np.tensordot(Rm, inner, axes=([1], [0]))
        rep.add_residual("rota_baxter", lhs - rhs, k=k)
    return rep


def induced_dend_infinity(S: GradedAInfSystem, R) -> GradedDendSystem:
    """mu_{k,[r]}(a_1, ..., a_k) = mu_k(R a_1, ..., a_r, ..., R a_k)."""
    Rm = _degree_zero(S.space, R)
    rep = check_rb_a_infinity(S, Rm)
    if not rep.ok:
        raise InvalidStructureError(f"not a Rota-Baxter operator: {rep.first_failure()}")
    ops = {k: np.stack([_apply_all_but(T, Rm, r) for r in range(1, k + 1)]) for k, T in S.ops.items()}
    return GradedDendSystem(S.space, ops, S.arity_bound)


def dga_system(assoc: AssociativeAlgebra) -> GradedAInfSystem:
    """An associative algebra as an A-infinity system in degree zero."""
    return GradedAInfSystem(GradedSpace((assoc.dim,)), {2: assoc.tensor}, 2)


def _bimodule_rb(assoc: AssociativeAlgebra, R: np.ndarray, bm: Bimodule, RM: np.ndarray) -> bool:
    e = np.einsum
    L, Rt = bm.left, bm.right
    ok_left = np.all(
        e("ia,jm,ijk->kam", R, RM, L)
        == e("kl,lam->kam", RM, e("jm,ajl->lam", RM, L) + e("ia,iml->lam", R, L))
    )
    ok_right = np.all(
        e("jm,ia,jik->kma", RM, R, Rt)
        == e("kl,lma->kma", RM, e("ia,mil->lma", R, Rt) + e("jm,jal->lma", RM, Rt))
    )
    return bool(ok_left and ok_right)


def module_morphism_complex(
    assoc: AssociativeAlgebra,
    R,
    M: Bimodule,
    RM,
    N: Bimodule,
    RN,
    d,
) -> tuple[GradedAInfSystem, np.ndarray]:
    """The complex N -d-> A + M with its A-infinity structure and operator (R, R_M) + R_N.

    ``d`` has shape (dim M, dim N) and must be a bimodule map with R_M d = d R_N.
    Returns the system and the combined degree-zero operator.
    """
    da = assoc.dim
    dm, dn = M.left.shape[1], N.left.shape[1]
    Rm, RMm, RNm, D = (rational_array(x) for x in (R, RM, RN, d))
    D = D.reshape(dm, dn)
    e = np.einsum
    # d(a.n) = a.d(n) and d(n.a) = d(n).a, indexed [out, a, n] and [out, n, a]
    left_ok = np.all(e("ku,anu->kan", D, N.left) == e("auk,un->kan", M.left, D))
    right_ok = np.all(e("ku,nau->kna", D, N.right) == e("uak,un->kna", M.right, D))
    if not (left_ok and right_ok):
        raise InvalidStructureError("d is not a bimodule map")
    if not np.all(RMm.dot(D) == D.dot(RNm)):
        raise InvalidStructureError("d does not intertwine the operators")
    if not (_bimodule_rb(assoc, Rm, M, RMm) and _bimodule_rb(assoc, Rm, N, RNm)):
        raise InvalidStructureError("module operators fail the Rota-Baxter module identity")
    n0 = da + dm
    sp = GradedSpace((n0, dn))
    Ntot = n0 + dn
    a_, m_, n_ = slice(0, da), slice(da, n0), slice(n0, Ntot)
    mu1 = zeros((Ntot, Ntot))
    mu1[m_, n_] = D
    mu2 = zeros((Ntot, Ntot, Ntot))
    mu2[a_, a_, a_] = assoc.tensor
    mu2[m_, a_, m_] = np.transpose(M.left, (2, 0, 1))
    mu2[m_, m_, a_] = np.transpose(M.right, (2, 0, 1))
    mu2[n_, a_, n_] = np.transpose(N.left, (2, 0, 1))
    mu2[n_, n_, a_] = np.transpose(N.right, (2, 0, 1))
    Rbar = zeros((Ntot, Ntot))
    Rbar[a_, a_] = Rm
    Rbar[m_, m_] = RMm
    Rbar[n_, n_] = RNm
    return GradedAInfSystem(sp, {1: mu1, 2: mu2}, 2), Rbar
