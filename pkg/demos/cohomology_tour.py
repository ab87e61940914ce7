"""Cohomology of the small corpus algebras with adjoint coefficients, both differentials."""

from dendro import corpus
from dendro.cohomology import cohomology_dim
from dendro.dendriform import Representation

for name, A in corpus.dendriform_corpus().items():
    M = Representation.adjoint(A)
    for n in (1, 2, 3):
        a = cohomology_dim(A, M, n)
        b = cohomology_dim(A, M, n, differential="dpi")
        same = (a.dim_Z, a.dim_B, a.dim_H) == (b.dim_Z, b.dim_B, b.dim_H)
        print(f"{name:14s} n={n}  Z={a.dim_Z:3d} B={a.dim_B:3d} H={a.dim_H:3d}  dpi agrees: {same}")
