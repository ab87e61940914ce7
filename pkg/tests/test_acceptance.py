"""The thirteen acceptance criteria, each checked exactly.

Every criterion is a function returning ``(passed, detail)``.  Under pytest
each one is a test and its verdict line is printed in the terminal summary;
``python tests/test_acceptance.py`` prints the same lines directly.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from dendro import corpus  # noqa: E402
from dendro.cohomology import (  # noqa: E402
    check_extension_equivalence,
    cocycle_from_extension,
    cohomology_dim,
    dend_coboundary,
    extension_from_cocycle,
    extensions_equivalent,
    hochschild_compare,
    solve_coboundary,
    sum_map_S,
)
from dendro.deformation import (  # noqa: E402
    TruncatedDeformation,
    check_deformation,
    extend_deformation,
    obstruction,
    transport,
    udf_generate,
)
from dendro.dendriform import Representation, semidirect  # noqa: E402
from dendro.diasscoalg import coderivation_square, enumerate_basis, lift_coderivation, verify_coder_lemma  # noqa: E402
from dendro.homotopy.graded import (  # noqa: E402
    GradedSpace,
    check_a_infinity,
    check_dend_infinity,
    dend_to_a_infinity,
    embed_a_infinity,
    from_dendriform,
    random_dend_system,
    shift,
    unshift,
)
from dendro.homotopy.rota import check_rb_a_infinity, dga_system, induced_dend_infinity, module_morphism_complex  # noqa: E402
from dendro.homotopy.twoterm import (  # noqa: E402
    FAMILY_SIGNS,
    CrossedModule,
    check_crossed_module,
    check_two_term,
    crossed_to_strict,
    identity_strict,
    semidirect_two_term,
    skeletal_to_triple,
    strict_to_crossed,
    triple_to_skeletal,
    two_term_family_signs,
)
from dendro.operadcore import (  # noqa: E402
    MultiMap,
    circle,
    d_pi,
    end_partial_compose,
    partial_compose,
    random_multimap,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

A1 = corpus.a1()
ADJ1 = Representation.adjoint(A1)


def core_algebras():
    return {
        "A1": A1,
        "A2": corpus.a2(),
        "aguiar-P1": corpus.aguiar_p1(),
        "semidirect-A1": semidirect(A1, ADJ1),
    }


def _cycles(A, M, n):
    return [MultiMap.from_vector(v, n, A.dim, M.dim_m) for v in cohomology_dim(A, M, n).cycles]


def _combo(rng, vectors, d):
    acc = MultiMap.zero(2, d)
    for v in vectors:
        acc = acc + v * Fraction(rng.randint(-2, 2))
    return acc


# -- criteria ---------------------------------------------------------------------------


def criterion_1():
    rng = random.Random(1)
    start = time.perf_counter()
    for _ in range(200):
        d = rng.randint(1, 2)
        f, g, h = (random_multimap(rng.randint(1, 3), d, rng=rng) for _ in range(3))
        m, n, p = f.arity, g.arity, h.arity
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                if partial_compose(partial_compose(f, g, i), h, i + j - 1) != partial_compose(f, partial_compose(g, h, j), i):
                    return False, "sequential associativity"
            for j in range(i + 1, m + 1):
                if partial_compose(partial_compose(f, g, i), h, j + n - 1) != partial_compose(partial_compose(f, h, j), g, i):
                    return False, "parallel associativity"
        e = MultiMap.identity(d)
        if partial_compose(e, f, 1) != f or any(partial_compose(f, e, i) != f for i in range(1, m + 1)):
            return False, "unit"
        lhs = circle(circle(f, g), h) - circle(f, circle(g, h))
        rhs = circle(circle(f, h), g) - circle(f, circle(h, g))
        if lhs != (rhs if (n - 1) * (p - 1) % 2 == 0 else -rhs):
            return False, "pre-Lie"
    elapsed = time.perf_counter() - start
    return elapsed < 60, f"200 triples in {elapsed:.1f}s"


def criterion_2():
    checked = 0
    for name, A in core_algebras().items():
        M = Representation.adjoint(A)
        for n in (1, 2, 3):
            for f in MultiMap.basis(n, A.dim, A.dim):
                checked += 1
                if not dend_coboundary(dend_coboundary(f, A, M), A, M).is_zero():
                    return False, f"{name}, degree {n}"
    return True, f"{checked} basis cochains"


def criterion_3():
    checked = 0
    for name, A in core_algebras().items():
        M = Representation.adjoint(A)
        for n in (1, 2, 3, 4):
            sign = 1 if (n + 1) % 2 == 0 else -1
            for f in MultiMap.basis(n, A.dim, A.dim):
                checked += 1
                if dend_coboundary(f, A, M) != d_pi(f, A.pi) * sign:
                    return False, f"{name}, degree {n}"
            a = cohomology_dim(A, M, n)
            b = cohomology_dim(A, M, n, differential="dpi")
            if (a.dim_Z, a.dim_B, a.dim_H) != (b.dim_Z, b.dim_B, b.dim_H):
                return False, f"{name}, degree {n}: groups differ"
    return True, f"{checked} basis cochains"


def criterion_4():
    for name, A in core_algebras().items():
        M = Representation.adjoint(A)
        for n in (1, 2, 3):
            if not hochschild_compare(A, M, n).ok:
                return False, f"{name}, degree {n}"
    rng = random.Random(4)
    for _ in range(60):
        d = rng.randint(1, 2)
        f = random_multimap(rng.randint(1, 3), d, rng=rng)
        g = random_multimap(rng.randint(1, 3), d, rng=rng)
        i = rng.randint(1, f.arity)
        if not np.all(sum_map_S(partial_compose(f, g, i)) == end_partial_compose(sum_map_S(f), sum_map_S(g), i)):
            return False, "S does not respect o_i"
    return True, "degrees 1-3 and 60 random pairs"


def criterion_5():
    basis = _cycles(A1, ADJ1, 2)
    for f in basis:
        E = extension_from_cocycle(A1, ADJ1, f)
        if cocycle_from_extension(E, A1, ADJ1) != f:
            return False, "round trip"
    for c in (1, -2, Fraction(1, 3)):
        g = MultiMap.identity(1) * c
        f = basis[0]
        f2 = f - dend_coboundary(g, A1, ADJ1)
        found = extensions_equivalent(A1, ADJ1, f, f2)
        if found is None:
            return False, "no equivalence found"
        E, E2 = extension_from_cocycle(A1, ADJ1, f), extension_from_cocycle(A1, ADJ1, f2)
        if not check_extension_equivalence(E, E2, A1, ADJ1, found).ok:
            return False, "found map is not a morphism"
    return True, f"{len(basis)} basis cocycle(s), 3 cohomologous pairs"


def criterion_6():
    a = cohomology_dim(A1, ADJ1, 2).dim_H
    b = cohomology_dim(A1, ADJ1, 2, differential="dpi").dim_H
    if a != 0 or b != 0:
        return False, f"dim H2 = {a}, {b}"
    for base in _cycles(A1, ADJ1, 2):
        for c in (1, -1, 3, Fraction(2, 5)):
            p1 = base * c
            D = TruncatedDeformation(A1, [p1])
            g = solve_coboundary(p1, A1, ADJ1)
            if g is None or not transport(D, [g]).pi(1).is_zero():
                return False, "order-1 deformation not trivialized"
    return True, "dim H2 = 0 both ways"


def criterion_7():
    rng = random.Random(7)
    algebras = list(core_algebras().values()) + [corpus.zero_algebra(1)]
    z2 = {id(A): _cycles(A, Representation.adjoint(A), 2) for A in algebras}
    count = 0
    while count < 60:
        A = rng.choice(algebras)
        M = Representation.adjoint(A)
        p1 = _combo(rng, z2[id(A)], A.dim)
        D = TruncatedDeformation(A, [p1])
        if rng.random() < 0.6:
            ext = extend_deformation(D)
            if ext.extendable:
                D = D.extended(ext.term + _combo(rng, z2[id(A)], A.dim))
        if not check_deformation(D).ok:
            return False, "generated deformation invalid"
        N = D.order
        obs = MultiMap.zero(3, A.dim)
        for i in range(1, N + 1):
            obs = obs - circle(D.pi(i), D.pi(N + 1 - i))
        if obstruction(D) not in (obs, -obs):
            return False, "library obstruction disagrees with the direct sum"
        if not dend_coboundary(obs, A, M).is_zero():
            return False, "obstruction is not a cocycle"
        count += 1
    return True, f"{count} deformations"


def criterion_8():
    nonzero = False
    for name, A, D1, D2 in corpus.udf_fixtures():
        D = udf_generate(A, D1, D2, 4)
        rep = check_deformation(D)
        if not rep.ok or D.order != 4:
            return False, name
        nonzero |= not D.pi(1).is_zero()
    return nonzero, f"{len(corpus.udf_fixtures())} fixtures, pi_1 != 0 present: {nonzero}"


def module_morphism_fixture():
    B = corpus.p1_bimodule()
    R = corpus.p1_operator()
    return module_morphism_complex(corpus.p1(), R, B, R, B, R, [[1, 0], [0, 1]])


def criterion_9():
    if not corpus.aguiar_p1().is_valid:
        return False, "aguiar(P1)"
    S, Rbar = module_morphism_fixture()
    if not check_rb_a_infinity(S, Rbar).ok:
        return False, "operator"
    D = induced_dend_infinity(S, Rbar)
    if not check_dend_infinity(D).ok:
        return False, "induced system"
    if not check_a_infinity(dend_to_a_infinity(D)).ok:
        return False, "split of induced system"
    return True, "aguiar, operator, induced, split"


def graded_corpus():
    S, Rbar = module_morphism_fixture()
    z3 = _cycles(A1, ADJ1, 3)[0]
    return {
        "A1": from_dendriform(A1),
        "A2": from_dendriform(corpus.a2()),
        "aguiar-P1": from_dendriform(corpus.aguiar_p1()),
        "embedded-P1": embed_a_infinity(dga_system(corpus.p1())),
        "embedded-module-morphism": embed_a_infinity(S),
        "strict-A1": identity_strict(A1).to_graded(),
        "skeletal-A1": triple_to_skeletal(A1, ADJ1, z3).to_graded(),
        "induced-module-morphism": induced_dend_infinity(S, Rbar),
    }


def criterion_10():
    systems = graded_corpus()
    for name, S in systems.items():
        if not check_dend_infinity(S).ok:
            return False, f"{name} is not verified"
        if not check_a_infinity(dend_to_a_infinity(S)).ok:
            return False, f"{name} loses verification"
    return len(systems) >= 5, f"{len(systems)} systems"


def _perturb(S, k, idx, by=1):
    ops = {j: np.array(t, dtype=object) for j, t in S.ops.items()}
    ops[k][idx] += by
    return type(S)(S.space, ops, S.arity_bound)


def criterion_11():
    verified = {
        "A1": from_dendriform(A1),
        "A2": from_dendriform(corpus.a2()),
        "aguiar-P1": from_dendriform(corpus.aguiar_p1()),
        "strict-A1": identity_strict(A1).to_graded(),
        "skeletal-A1": triple_to_skeletal(A1, ADJ1, _cycles(A1, ADJ1, 3)[0]).to_graded(),
    }
    perturbed = {
        "broken": from_dendriform(corpus.broken()),
        "A2+": _perturb(verified["A2"], 2, (1, 1, 0, 1)),
        "strict-A1+": _perturb(verified["strict-A1"], 2, (0, 1, 0, 1), 2),
        "skeletal-A1+": _perturb(verified["skeletal-A1"], 3, (0, 1, 0, 0, 0), 1),
    }
    for name, S in {**verified, **perturbed}.items():
        K = S.arity_bound
        if K > 3 or S.space.total > 2:
            return False, f"{name} outside the size bounds"
        if unshift(shift(S)) != S:
            return False, f"{name}: shift round trip"
        sq = coderivation_square(lift_coderivation(shift(S), 2 * K - 1)).ok
        ident = check_dend_infinity(S).ok
        if sq != ident or ident != (name in verified):
            return False, f"{name}: square zero {sq}, identities {ident}"
    rng = random.Random(11)
    lemma = 0
    for dims in ((1,), (2,), (1, 1)):
        V = random_dend_system(GradedSpace(dims), 3, rng, shifted=True)
        for i in range(1, 4):
            for j in range(1, 4):
                words = [w for w in enumerate_basis(V.space, i + j - 1) if w.weight == i + j - 1]
                for w in rng.sample(words, min(4, len(words))):
                    lemma += 1
                    if not verify_coder_lemma(V, i, j, w).ok:
                        return False, f"lemma at i={i}, j={j}, {w}"
    return True, f"{len(verified)} verified, {len(perturbed)} perturbed, {lemma} lemma words"


def two_term_fixtures():
    z3s = _cycles(A1, ADJ1, 3)
    out = {f"skeletal-{k}": triple_to_skeletal(A1, ADJ1, s) for k, s in enumerate(z3s)}
    for name, A in core_algebras().items():
        out[f"strict-{name}"] = identity_strict(A)
    out["semidirect-f=id"] = semidirect_two_term(A1, ADJ1, ADJ1, [[1]])
    out["semidirect-f=0"] = semidirect_two_term(A1, ADJ1, ADJ1, [[0]])
    bad = np.array(out["strict-A1"].m3, dtype=object)
    bad[0, 0, 0, 0, 0] = 1
    out["strict-A1-perturbed-m3"] = out["strict-A1"].with_block(m3=bad)
    bad2 = np.array(out["strict-A2"].m01, dtype=object)
    bad2[1, 0, 1, 0] += 1
    out["strict-A2-perturbed-m01"] = out["strict-A2"].with_block(m01=bad2)
    return z3s, out


def criterion_12():
    z3s, fixtures = two_term_fixtures()
    if not z3s:
        return False, "no 3-cocycles"
    for s in z3s:
        if skeletal_to_triple(triple_to_skeletal(A1, ADJ1, s)) != (A1, ADJ1, s):
            return False, "skeletal round trip"
    z4s = _cycles(A1, ADJ1, 4)
    for s in z4s:
        S = triple_to_skeletal(A1, ADJ1, s)
        if not check_dend_infinity(S).ok or skeletal_to_triple(S) != (A1, ADJ1, s):
            return False, "skeletal round trip with a gap"
    for name, A in core_algebras().items():
        p = A.pi.components
        X = CrossedModule(A, A, np.eye(A.dim, dtype=int), Representation.from_components(p, p))
        if not check_crossed_module(X).ok:
            return False, f"{name}: crossed module check"
        if crossed_to_strict(X) != identity_strict(A) or strict_to_crossed(crossed_to_strict(X)) != X:
            return False, f"{name}: strict/crossed round trip"
    for name, T in fixtures.items():
        if check_two_term(T).ok != check_dend_infinity(T.to_graded()).ok:
            return False, f"{name}: checkers disagree"
        for fam, s in two_term_family_signs(T).items():
            if s is not None and s != FAMILY_SIGNS[fam]:
                return False, f"{name}: family {fam} has sign {s}"
    return True, f"{len(z3s)} + {len(z4s)} skeletal, {len(core_algebras())} crossed, {len(fixtures)} two-term fixtures"


def criterion_13():
    from test_cli import golden_mismatches

    bad = golden_mismatches()
    return not bad, "all golden files match" if not bad else f"mismatch: {bad}"


CRITERIA = [
    (1, "operad laws", criterion_1),
    (2, "coboundary squares to zero", criterion_2),
    (3, "sign bridge", criterion_3),
    (4, "chain map to Hochschild", criterion_4),
    (5, "extension round trip", criterion_5),
    (6, "rigidity of A1", criterion_6),
    (7, "obstruction is a cocycle", criterion_7),
    (8, "derivation-generated deformations", criterion_8),
    (9, "Rota-Baxter pipeline", criterion_9),
    (10, "splitting preserves verification", criterion_10),
    (11, "shift and coderivation square", criterion_11),
    (12, "two-term correspondences", criterion_12),
    (13, "CLI golden files", criterion_13),
]


def _line(num, title, ok, detail):
    return f"criterion {num}: {'PASS' if ok else 'FAIL'} - {title} ({detail})"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = fn()
    line = _line(num, title, ok, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
