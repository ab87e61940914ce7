from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dendro.exactnum import (
    BrokenComplexError,
    RationalMatrix,
    kernel_basis,
    parse_rational,
    quotient_dim,
    rank,
    rational_array,
    solve,
    tensor_to_json,
    to_rational,
)
from oracles import rref_rank

small = st.integers(-3, 3).map(Fraction)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_parse_rejects_floats():
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_json_round_trip_keeps_shape():
    a = rational_array([[["1/2", 0], [3, "-4/3"]]])
    back = rational_array(tensor_to_json(a))
    assert back.shape == (1, 2, 2)
    assert np.all(back == a)
    assert tensor_to_json(a)[0][1] == ["3", "-4/3"]


@given(matrices())
def test_rank_matches_reference(rows):
    assert rank(rows) == rref_rank(rows)


@given(matrices())
def test_kernel_vectors_are_killed_and_complete(rows):
    M = RationalMatrix(rows)
    K = kernel_basis(M)
    assert len(K) == M.cols - rref_rank(rows)
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if K:
        assert rref_rank(K) == len(K)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_hits_image(rows, x):
    x = x[: len(rows[0])]
    b = [sum(a * c for a, c in zip(r, x)) for r in rows]
    y = solve(RationalMatrix(rows), b)
    assert y is not None
    assert [sum(a * c for a, c in zip(r, y)) for r in rows] == b


def test_solve_reports_inconsistency():
    assert solve(RationalMatrix([[1, 1], [2, 2]]), [1, 3]) is None


def test_quotient_dim_and_broken_complex():
    Z = [[1, 0, 0], [0, 1, 0]]
    assert quotient_dim(Z, [[1, 1, 0]]) == 1
    assert quotient_dim(Z, []) == 2
    with pytest.raises(BrokenComplexError):
        quotient_dim(Z, [[0, 0, 1]])
