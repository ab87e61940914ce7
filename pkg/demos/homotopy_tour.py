"""Shift graded systems to degree -1 and compare the coderivation square with the identities."""

from dendro import corpus
from dendro.diasscoalg import coderivation_square, lift_coderivation
from dendro.homotopy.graded import check_dend_infinity, from_dendriform, shift
from dendro.homotopy.twoterm import identity_strict

systems = {
    "A1": from_dendriform(corpus.a1()),
    "aguiar-P1": from_dendriform(corpus.aguiar_p1()),
    "strict A1": identity_strict(corpus.a1()).to_graded(),
    "broken": from_dendriform(corpus.broken()),
}
for name, S in systems.items():
    K = S.arity_bound
    sq = coderivation_square(lift_coderivation(shift(S), 2 * K - 1))
    print(f"{name:10s} identities hold: {check_dend_infinity(S).ok!s:5s}  square vanishes: {sq.ok}")
