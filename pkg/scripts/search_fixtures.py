"""Offline search for the corpus entries that need one.

Run ``python3 scripts/search_fixtures.py`` to reproduce the constants stored in
``dendro.corpus``:

* a dendriform algebra with a nilpotent derivation D such that the
  deformation generated by (D, D) has nonzero first and second terms (the
  3-dimensional triangular family is tried first; no hit has been found there,
  so the 4-dimensional matrix construction is what the corpus stores);
* an order-1 Rota-Baxter deformation (m_1, R_1) of P1 that is not a rescaling
  of (m, R);
* a truncated deformation whose obstruction is not a coboundary.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

import numpy as np

from dendro.cohomology import cohomology_dim, solve_coboundary
from dendro.corpus import p1, p1_operator, zero_algebra
from dendro.deformation import TruncatedDeformation, extend_deformation, obstruction, udf_generate
from dendro.dendriform import DendriformAlgebra, Representation
from dendro.exactnum import RationalMatrix, kernel_basis, span_rank, tensor_to_json
from dendro.operadcore import MultiMap


def triangular_candidate(rng: random.Random, d: int = 3):
    """Products e_i e_j supported on e_k with k > max(i, j), entries in {-1, 0, 1}."""
    prec = np.full((d, d, d), Fraction(0), dtype=object)
    succ = np.full((d, d, d), Fraction(0), dtype=object)
    for i in range(d):
        for j in range(d):
            for k in range(max(i, j) + 1, d):
                prec[i, j, k] = Fraction(rng.choice((-1, 0, 0, 1)))
                succ[i, j, k] = Fraction(rng.choice((-1, 0, 0, 1)))
    return DendriformAlgebra(d, prec, succ)


def derivations(A: DendriformAlgebra) -> list[np.ndarray]:
    res = cohomology_dim(A, Representation.adjoint(A), 1)
    return [MultiMap.from_vector(v, 1, A.dim, A.dim).components[0] for v in res.cycles]


def matrix_udf():
    """Aguiar algebra of (M_2, R = left multiplication by E12) with D = ad(E12).

    D is nilpotent, commutes with R, hence is a derivation of both products,
    and pi(D E21, D E21) has label [1] component -E12.
    """
    E = [(0, 0), (0, 1), (1, 0), (1, 1)]  # E11, E12, E21, E22
    d = 4
    mult = np.full((d, d, d), Fraction(0), dtype=object)
    for a, (i, j) in enumerate(E):
        for b, (k, l) in enumerate(E):
            if j == k:
                mult[a, b, E.index((i, l))] = Fraction(1)
    from dendro.dendriform import AssociativeAlgebra, aguiar

    B = AssociativeAlgebra(d, mult)
    left = np.einsum("bk->kb", mult[1])  # x -> E12 x, columns = inputs
    ad = np.array([[mult[1, b, k] - mult[b, 1, k] for b in range(d)] for k in range(d)], dtype=object)
    return aguiar(B, left), ad


def search_udf(seed: int = 0, tries: int = 1000):
    """Try the 3-dimensional triangular family first; fall back to :func:`matrix_udf`."""
    rng = random.Random(seed)
    for _ in range(tries):
        A = triangular_candidate(rng)
        if not A.is_valid or A.pi.is_zero():
            continue
        for D in derivations(A):
            D = np.vectorize(Fraction, otypes=[object])(D)
            if np.all(D == 0) or not np.all(D.dot(D).dot(D) == 0):
                continue
            deform = udf_generate(A, D, D, 2)
            if not deform.pi(1).is_zero() and not deform.pi(2).is_zero():
                return A, D
    return matrix_udf()


def search_rb_pair():
    """Order-1 solutions (m_1, R_1) of the deformed associativity and Rota-Baxter equations."""
    P = p1()
    R = p1_operator().astype(object)
    m = P.mult
    d = P.dim
    nm, nr = d**3, d**2
    e = np.einsum

    def equations(vec):
        m1 = np.array(vec[:nm], dtype=object).reshape(d, d, d)
        R1 = np.array(vec[nm:], dtype=object).reshape(d, d)
        assoc = (e("abu,uck->kabc", m1, m) + e("abu,uck->kabc", m, m1)
                 - e("auk,bcu->kabc", m1, m) - e("auk,bcu->kabc", m, m1))
        rb = (e("ia,jb,ijk->kab", R1, R, m) + e("ia,jb,ijk->kab", R, R1, m) + e("ia,jb,ijk->kab", R, R, m1))
        for Ri, Rj, mk in ((R1, R, m), (R, R1, m), (R, R, m1)):
            inner = e("jb,ajl->lab", Rj, mk) + e("ja,jbl->lab", Rj, mk)
            rb = rb - e("kl,lab->kab", Ri, inner)
        return list(assoc.reshape(-1)) + list(rb.reshape(-1))

    n = nm + nr
    cols = []
    for k in range(n):
        v = [Fraction(0)] * n
        v[k] = Fraction(1)
        cols.append(equations(v))
    mat = RationalMatrix.from_columns(cols, len(cols[0]))
    sols = kernel_basis(mat)
    scaling_m = list(m.reshape(-1)) + [Fraction(0)] * nr
    scaling_r = [Fraction(0)] * nm + list(R.reshape(-1))
    for s in sols:
        if span_rank([scaling_m, scaling_r, s]) == 3 and any(s[:nm]) and any(s[nm:]):
            return np.array(s[:nm], dtype=object).reshape(d, d, d), np.array(s[nm:], dtype=object).reshape(d, d)
    raise RuntimeError("only rescalings solve the order-1 equations")


def search_obstructed():
    A = zero_algebra(1)
    pi1 = MultiMap.from_vector([Fraction(1), Fraction(1)], 2, 1, 1)
    deform = TruncatedDeformation(A, [pi1])
    ob = obstruction(deform)
    assert solve_coboundary(-ob, A, Representation.adjoint(A)) is None
    assert not extend_deformation(deform).extendable
    return pi1, cohomology_dim(A, Representation.adjoint(A), 3).dim_H


if __name__ == "__main__":
    A, D = search_udf()
    m1, R1 = search_rb_pair()
    pi1, h3 = search_obstructed()
    print(json.dumps(
        {
            "udf_algebra": A.to_json(),
            "udf_derivation": tensor_to_json(D),
            "rb_m1": tensor_to_json(m1),
            "rb_R1": tensor_to_json(R1),
            "obstructed_pi1": pi1.to_json(),
            "obstructed_dim_H3": h3,
        },
        indent=1,
        sort_keys=True,
    ))
