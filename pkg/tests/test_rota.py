import numpy as np
import pytest

from dendro import corpus
from dendro.dendriform import InvalidStructureError
from dendro.homotopy.graded import check_a_infinity, check_dend_infinity, dend_to_a_infinity, from_dendriform
from dendro.homotopy.rota import check_rb_a_infinity, dga_system, induced_dend_infinity, module_morphism_complex
from dendro.operadcore import insert_tensor

P, R = corpus.p1(), corpus.p1_operator()


def pipeline(d):
    B = corpus.p1_bimodule()
    return module_morphism_complex(P, R, B, R, B, R, d)


def test_degree_zero_reproduces_aguiar():
    D = induced_dend_infinity(dga_system(P), R)
    assert D == from_dendriform(corpus.aguiar_p1())


@pytest.mark.parametrize("d", [[[1, 0], [0, 1]], [[2, 0], [0, 2]]])
def test_module_morphism_pipeline(d):
    S, Rbar = pipeline(d)
    assert check_a_infinity(S).ok
    assert check_rb_a_infinity(S, Rbar).ok
    D = induced_dend_infinity(S, Rbar)
    assert check_dend_infinity(D).ok
    T = dend_to_a_infinity(D)
    assert check_a_infinity(T).ok
    # label sum: mu_k(R., ..., ., ..., R.) summed over the free slot
    mu2 = S.ops[2]
    expect = insert_tensor(mu2, Rbar, 2) + insert_tensor(mu2, Rbar, 1)
    assert np.all(T.ops[2] == expect)


def test_rejections():
    S, Rbar = pipeline([[1, 0], [0, 1]])
    bad = np.array(Rbar, dtype=object)
    bad[0, 0] = 1
    assert not check_rb_a_infinity(S, bad).ok
    with pytest.raises(InvalidStructureError):
        induced_dend_infinity(S, bad)
    with pytest.raises(InvalidStructureError):
        pipeline([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        check_rb_a_infinity(S, np.eye(3, dtype=int))
