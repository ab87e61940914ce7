"""Extend order-1 deformations step by step, then trivialize one on A1."""

from dendro import corpus
from dendro.cohomology import cohomology_dim, solve_coboundary
from dendro.deformation import TruncatedDeformation, extend_deformation, transport, udf_generate
from dendro.dendriform import Representation
from dendro.operadcore import MultiMap

A = corpus.a1()
M = Representation.adjoint(A)
p1 = MultiMap.from_vector(cohomology_dim(A, M, 2).cycles[0], 2, 1, 1)
D = TruncatedDeformation(A, [p1])
for _ in range(3):
    ext = extend_deformation(D)
    print(f"order {D.order}: extendable={ext.extendable}")
    D = D.extended(ext.term)
g = solve_coboundary(p1, A, M)
print("after transport by id + g, pi_1 is zero:", transport(TruncatedDeformation(A, [p1]), [g]).pi(1).is_zero())

Z, p = corpus.obstructed_term()
ext = extend_deformation(TruncatedDeformation(Z, [p]))
print("zero algebra, order 1 term (1, 1): extendable =", ext.extendable)

_, B, D1, D2 = corpus.udf_fixtures()[-1]
U = udf_generate(B, D1, D2, 4)
print("derivation-generated on M_2: nonzero terms", [i for i in range(1, 5) if not U.pi(i).is_zero()])
