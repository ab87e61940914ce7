from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dendro import corpus
from dendro.dendriform import (
    AssociativeAlgebra,
    DendriformAlgebra,
    InvalidStructureError,
    Representation,
    aguiar,
    assoc_semidirect,
    associated_associative,
    check_morphism,
    check_representation,
    check_rota_baxter,
    rep_to_assoc_rep,
    semidirect,
    to_multiplication,
)
from dendro.operadcore import is_multiplication
from dendro.exactnum import rational_array
from oracles import dendriform_ok, product_dict

vals = st.sampled_from([-1, 0, 0, 0, 1]).map(Fraction)


@st.composite
def raw_products(draw):
    d = draw(st.integers(1, 2))
    n = d**3
    p = draw(st.lists(vals, min_size=n, max_size=n))
    s = draw(st.lists(vals, min_size=n, max_size=n))
    return d, rational_array(p).reshape(d, d, d), rational_array(s).reshape(d, d, d)


@given(raw_products())
def test_checker_agrees_with_reference(data):
    d, p, s = data
    A = DendriformAlgebra(d, p, s)
    assert A.is_valid == dendriform_ok(d, product_dict(p), product_dict(s))


def test_small_examples():
    assert corpus.a1().is_valid
    rep = corpus.broken().report
    assert not rep.ok
    assert {f["identity"] for f in rep.failures} == {"eq1", "eq3"}
    assert all(f["inputs"] == [0, 0, 0] for f in rep.failures)
    with pytest.raises(InvalidStructureError):
        corpus.broken().require_valid()


def test_associated_product():
    assert associated_associative(corpus.a1()).mult[0, 0, 0] == 1
    star = associated_associative(corpus.aguiar_p1())
    assert list(star.mult[0, 0]) == [0, 2]
    assert all(x == 0 for x in star.mult[1].reshape(-1)) and list(star.mult[0, 1]) == [0, 0]


def test_rota_baxter_examples():
    P = corpus.p1()
    assert check_rota_baxter(P, corpus.p1_operator()).ok
    rep = check_rota_baxter(P, [[0, 0], [0, 1]])
    assert not rep.ok
    assert [0, 1] in [f["inputs"] for f in rep.failures]


def test_aguiar_p1_products():
    A = corpus.aguiar_p1()
    assert A.is_valid
    nz = lambda t: {k for k in np.ndindex(t.shape) if t[k] != 0}
    assert nz(A.prec) == {(0, 0, 1)} and nz(A.succ) == {(0, 0, 1)}
    with pytest.raises(InvalidStructureError):
        aguiar(P := corpus.p1(), [[0, 0], [0, 1]])


def test_adjoint_representations():
    for A in corpus.dendriform_corpus().values():
        assert check_representation(A, Representation.adjoint(A)).ok
    B = corpus.broken()
    assert not check_representation(B, Representation.adjoint(B)).ok


def test_summed_actions_of_a1():
    bm = rep_to_assoc_rep(corpus.a1(), Representation.adjoint(corpus.a1()))
    assert bm.left[0, 0, 0] == 1 and bm.right[0, 0, 0] == 1


def test_semidirect_is_dendriform_and_restricts_to_actions():
    A = corpus.a1()
    M = Representation.adjoint(A)
    E = semidirect(A, M)
    assert E.dim == 2 and E.is_valid
    bm = rep_to_assoc_rep(A, M)
    star = associated_associative(E)
    assert np.all(star.mult[:1, 1:, 1:] == bm.left) and np.all(star.mult[1:, :1, 1:] == bm.right)
    assert check_morphism(A, E, [[1], [0]]).ok


def test_semidirect_rejects_bad_representation():
    A = corpus.a1()
    bad = Representation(1, 1, [[[1]]], [[[1]]], [[[0]]], [[[0]]])
    with pytest.raises(InvalidStructureError):
        semidirect(A, bad)


def test_json_round_trips():
    for A in corpus.dendriform_corpus().values():
        assert DendriformAlgebra.from_json(A.to_json()) == A
        M = Representation.adjoint(A)
        assert Representation.from_json(M.to_json()) == M
    P = corpus.p1()
    assert AssociativeAlgebra.from_json(P.to_json()) == P


@given(raw_products())
def test_identities_match_multiplication_condition(data):
    d, p, s = data
    A = DendriformAlgebra(d, p, s)
    assert A.is_valid == is_multiplication(A.pi)[0]
    if A.is_valid:
        assert to_multiplication(A) == A.pi


def test_semidirect_square_commutes():
    for A in corpus.dendriform_corpus().values():
        M = Representation.adjoint(A)
        lhs = associated_associative(semidirect(A, M))
        rhs = assoc_semidirect(associated_associative(A), rep_to_assoc_rep(A, M))
        assert np.all(lhs.mult == rhs.mult)


def test_aguiar_star_and_operator_homomorphism():
    P, R = corpus.p1(), corpus.p1_operator()
    star = associated_associative(aguiar(P, R)).mult
    m = P.mult
    e = np.einsum
    assert np.all(star == e("lj,ilk->ijk", R, m) + e("li,ljk->ijk", R, m))
    # R(a * b) = m(Ra, Rb)
    assert np.all(e("ijl,kl->ijk", star, R) == e("ia,jb,ijk->abk", R, R, m))


@given(st.lists(vals, min_size=4, max_size=4))
def test_compact_representation_form_agrees(entries):
    A = corpus.a1()
    M = Representation(1, 1, *([[[x]]] for x in entries))
    rep = check_representation(A, M)
    assert rep.sections["compact_form_agreement"].ok
