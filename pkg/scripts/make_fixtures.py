"""Write the JSON inputs under tests/fixtures from dendro.corpus.

Run ``python3 scripts/make_fixtures.py`` after changing the corpus, then
``python3 scripts/regen_golden.py``.
"""

from __future__ import annotations

import json
from pathlib import Path

from dendro import corpus
from dendro.cohomology import cochain_to_json, cohomology_dim, extension_from_cocycle
from dendro.deformation import TruncatedDeformation
from dendro.dendriform import Representation
from dendro.exactnum import tensor_to_json
from dendro.homotopy.graded import from_dendriform, system_to_json
from dendro.homotopy.rota import module_morphism_complex
from dendro.homotopy.twoterm import identity_strict, strict_to_crossed, triple_to_skeletal
from dendro.operadcore import MultiMap

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def _cycle(A, M, n: int, k: int = 0) -> MultiMap:
    v = cohomology_dim(A, M, n).cycles[k]
    return MultiMap.from_vector(v, n, A.dim, M.dim_m)


def fixtures() -> dict[str, dict]:
    A1 = corpus.a1()
    adj = Representation.adjoint(A1)
    P = corpus.p1()
    z2 = _cycle(A1, adj, 2)
    z3 = _cycle(A1, adj, 3)
    ident = identity_strict(A1)
    system, Rbar = module_morphism_complex(
        P, corpus.p1_operator(), corpus.p1_bimodule(), corpus.p1_operator(), corpus.p1_bimodule(), corpus.p1_operator(),
        [[1, 0], [0, 1]],
    )
    zero, term = corpus.obstructed_term()
    out = {
        "A1": A1.to_json(),
        "A2": corpus.a2().to_json(),
        "broken": corpus.broken().to_json(),
        "P1": {**P.to_json(), "R": tensor_to_json(corpus.p1_operator())},
        "A1-adjoint": adj.to_json(),
        "A1-z2": cochain_to_json(z2),
        "A1-z3": cochain_to_json(z3),
        "A1-extension": extension_from_cocycle(A1, adj, z2).to_json(),
        "twoterm": ident.to_json(),
        "skeletal": triple_to_skeletal(A1, adj, z3).to_json(),
        "crossed": strict_to_crossed(ident).to_json(),
        "deform-A1": TruncatedDeformation(A1, [z2]).to_json(),
        "deform-obstructed": TruncatedDeformation(zero, [term]).to_json(),
        "graded-A1": system_to_json(from_dendriform(A1)),
        "graded-broken": system_to_json(from_dendriform(corpus.broken())),
        "rb-system": {"system": system_to_json(system), "operator": tensor_to_json(Rbar)},
    }
    for name, A, D1, D2 in corpus.udf_fixtures():
        if name in ("a2-nilpotent", "udf-m2"):
            out[f"udf-{name}".replace("udf-udf", "udf")] = {
                "algebra": A.to_json(), "D1": tensor_to_json(D1), "D2": tensor_to_json(D2)
            }
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in fixtures().items():
        (OUT / f"{name}.json").write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
    print(f"wrote {len(fixtures())} fixtures to {OUT}")


if __name__ == "__main__":
    main()
