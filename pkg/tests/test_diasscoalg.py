import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dendro import corpus
from dendro.diasscoalg import (
    TensorWord,
    check_coalgebra_axioms,
    check_coderivation,
    coderivation_square,
    delta1,
    delta2,
    enumerate_basis,
    lift_coderivation,
    verify_coder_lemma,
)
from dendro.homotopy.graded import (
    GradedSpace,
    check_dend_infinity,
    from_dendriform,
    random_dend_system,
    shift,
)
from dendro.homotopy.twoterm import identity_strict


def test_coproduct_examples():
    assert delta1(TensorWord((), 0, (1,))) == {(TensorWord((), 0, ()), TensorWord((), 1, ())): 1}
    assert delta2(TensorWord((0,), 1, ())) == {(TensorWord((), 0, ()), TensorWord((), 1, ())): 1}
    assert delta1(TensorWord((0,), 1, ())) == {}
    assert len(delta1(TensorWord((), 0, (0, 0, 0)))) == 6


def test_axioms():
    assert check_coalgebra_axioms(GradedSpace((1,)), 3).ok
    assert check_coalgebra_axioms(GradedSpace((1, 1)), 4).ok


def test_basis_size():
    assert len(enumerate_basis(GradedSpace((1,)), 3)) == 6
    with pytest.raises(ValueError):
        enumerate_basis(GradedSpace((4,)), 9)


def test_arity_two_on_a_two_letter_word():
    V = shift(from_dendriform(corpus.a2()))
    D = lift_coderivation(V, 2, [2])
    w = TensorWord((), 0, (0,))
    # the middle sits in slot 1 of the only block, so label [1] fires; x < x = y
    assert D.cols[w] == {TensorWord((), 1, ()): -1}


def test_a1_square_zero_and_broken_located():
    V = shift(from_dendriform(corpus.a1()))
    D = lift_coderivation(V, 3)
    assert check_coderivation(D).ok
    assert coderivation_square(D).ok
    bad = coderivation_square(lift_coderivation(shift(from_dendriform(corpus.broken())), 3))
    assert not bad.ok and bad.first_word.weight == 3
    assert bad.nonzero == 2


def test_lift_requires_shifted_system():
    with pytest.raises(ValueError):
        lift_coderivation(from_dendriform(corpus.a1()), 3)


@settings(max_examples=25)
@given(st.sampled_from([(1,), (2,), (1, 1)]), st.integers(1, 2), st.integers(0, 10**6))
def test_square_zero_iff_identities(dims, K, seed):
    S = random_dend_system(GradedSpace(dims), K, random.Random(seed), density=0.5)
    sq = coderivation_square(lift_coderivation(shift(S), 2 * K - 1))
    assert sq.ok == check_dend_infinity(S).ok


def test_strict_example_at_arity_three():
    S = identity_strict(corpus.a1()).to_graded()
    assert coderivation_square(lift_coderivation(shift(S), 5)).ok


@settings(max_examples=20)
@given(st.sampled_from([(1,), (2,), (1, 1)]), st.integers(0, 10**6), st.data())
def test_lemma_on_random_families(dims, seed, data):
    V = random_dend_system(GradedSpace(dims), 3, random.Random(seed), shifted=True)
    i = data.draw(st.integers(1, 3))
    j = data.draw(st.integers(1, 3))
    basis = [w for w in enumerate_basis(V.space, i + j - 1) if w.weight == i + j - 1]
    w = data.draw(st.sampled_from(basis))
    assert verify_coder_lemma(V, i, j, w).ok


def test_lemma_on_shifted_a1():
    V = shift(from_dendriform(corpus.a1()))
    for w in enumerate_basis(V.space, 3):
        if w.weight == 3:
            assert verify_coder_lemma(V, 2, 2, w).ok


def test_axioms_up_to_weight_four():
    for dims in ((1,), (2,), (1, 1)):
        assert check_coalgebra_axioms(GradedSpace(dims), 4).ok


@settings(max_examples=15)
@given(st.sampled_from([(1,), (2,), (1, 1)]), st.integers(1, 3), st.integers(0, 10**6))
def test_lifts_are_coderivations(dims, K, seed):
    V = random_dend_system(GradedSpace(dims), K, random.Random(seed), shifted=True)
    assert check_coderivation(lift_coderivation(V, 3)).ok


@settings(max_examples=15)
@given(st.sampled_from([(1,), (1, 1)]), st.integers(1, 3), st.integers(0, 10**6))
def test_truncation_is_a_restriction(dims, K, seed):
    V = random_dend_system(GradedSpace(dims), K, random.Random(seed), shifted=True)
    small = coderivation_square(lift_coderivation(V, 3)).square
    big = coderivation_square(lift_coderivation(V, 4)).square
    for w in enumerate_basis(V.space, 3):
        assert {k: c for k, c in small.cols.get(w, {}).items() if c} == {k: c for k, c in big.cols.get(w, {}).items() if c}
