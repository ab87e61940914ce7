import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dendro import corpus
from dendro.homotopy.graded import (
    GradedAInfSystem,
    GradedDendSystem,
    GradedSpace,
    a_infinity_residual,
    check_a_infinity,
    check_dend_infinity,
    check_dend_infinity_shifted,
    dend_infinity_residual,
    dend_to_a_infinity,
    direct_sum,
    embed_a_infinity,
    from_dendriform,
    random_dend_system,
    shift,
    shift_a_infinity,
    system_from_json,
    system_to_json,
    unshift,
)
from dendro.homotopy.rota import dga_system
from dendro.homotopy.twoterm import identity_strict

spaces = st.sampled_from([(1,), (2,), (1, 1), (0, 1), (1, 0, 1)])


def rand_system(dims, K, seed, density=0.4):
    return random_dend_system(GradedSpace(dims), K, random.Random(seed), density=density)


def test_degree_zero_and_embedded_examples():
    assert check_dend_infinity(from_dendriform(corpus.a1())).ok
    rep = check_dend_infinity(from_dendriform(corpus.broken()))
    assert not rep.ok
    assert rep.sections["1"].ok and rep.sections["2"].ok and not rep.sections["3"].ok
    E = embed_a_infinity(dga_system(corpus.p1()))
    assert check_dend_infinity(E).ok
    assert np.all(E.ops[2][1] == 0)


def test_two_term_arity_two_conditions():
    # d is a square-zero derivation of both products
    S = identity_strict(corpus.a1()).to_graded()
    assert check_dend_infinity(S).ok
    mu1 = S.op(1)[0]
    assert np.all(mu1.dot(mu1) == 0)


def test_non_homogeneous_tensor_rejected():
    t = np.zeros((2, 2, 2, 2), dtype=object)
    t[:] = 0
    t[0, 1, 0, 0] = 1  # degree 0 x degree 0 -> degree 1
    with pytest.raises(ValueError):
        GradedDendSystem(GradedSpace((1, 1)), {2: t})


@settings(max_examples=30)
@given(spaces, st.integers(1, 3), st.integers(0, 10**6))
def test_shift_round_trip(dims, K, seed):
    S = rand_system(dims, K, seed)
    V = shift(S)
    assert V.shifted and all(V.op_degree(k) == -1 for k in V.ops)
    assert unshift(V) == S


@settings(max_examples=40)
@given(spaces, st.integers(1, 3), st.integers(0, 10**6))
def test_shifted_identities_match_residuals(dims, K, seed):
    S = rand_system(dims, K, seed)
    V = shift(S)
    for n in range(1, 2 * K):
        a = dend_infinity_residual(S, n)
        b = dend_infinity_residual(V, n, shifted=True)
        assert np.all((a == 0) == (b == 0))
        assert np.all((a == b) | (a == -b))
    assert check_dend_infinity(S).ok == check_dend_infinity_shifted(V).ok


@settings(max_examples=30)
@given(spaces, st.integers(1, 3), st.integers(0, 10**6))
def test_label_sum_of_residuals_is_the_associative_residual(dims, K, seed):
    S = rand_system(dims, K, seed)
    T = dend_to_a_infinity(S, require_valid=False)
    for n in range(1, 2 * K):
        assert np.all(dend_infinity_residual(S, n).sum(axis=0) == a_infinity_residual(T, n))
    Sa = shift_a_infinity(T)
    assert check_a_infinity(T).ok == check_a_infinity(Sa).ok


def test_split_of_verified_systems():
    for S in (from_dendriform(corpus.aguiar_p1()), identity_strict(corpus.a2()).to_graded()):
        assert check_a_infinity(dend_to_a_infinity(S)).ok
    with pytest.raises(ValueError):
        dend_to_a_infinity(from_dendriform(corpus.broken()))


def test_direct_sum_keeps_verification():
    S = direct_sum(from_dendriform(corpus.a1()), identity_strict(corpus.a1()).to_graded())
    assert S.space.dims == (2, 1)
    assert check_dend_infinity(S).ok


@settings(max_examples=20)
@given(spaces, st.integers(1, 3), st.integers(0, 10**6))
def test_json_round_trip(dims, K, seed):
    S = rand_system(dims, K, seed)
    for X in (S, shift(S), dend_to_a_infinity(S, require_valid=False)):
        data = system_to_json(X)
        back = system_from_json(data)
        assert type(back) is type(X) and back == X
        assert data["kind"] == X.kind


def test_arity_cap_limits_checked_identities():
    S = rand_system((1, 1), 3, 0)
    assert sorted(check_dend_infinity(S).sections) == ["1", "2", "3", "4", "5"]
    assert sorted(check_dend_infinity(S, 3).sections) == ["1", "2", "3"]
    assert isinstance(dga_system(corpus.p1()), GradedAInfSystem)
