"""``dendro`` command line: JSON in, JSON out.

Check verbs print a report ``{"ok", "command", ...}``; make verbs print the
constructed object in the same format the matching check verb reads.  Exit
status is 0 on success, 1 when a check fails or a construction has no
solution, 2 for usage, parse and resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .cohomology import (
    ResourceLimitError,
    cochain_from_json,
    cochain_to_json,
    cocycle_from_extension,
    cohomology_dim,
    extension_from_cocycle,
    hochschild_compare,
    is_cocycle,
    solve_coboundary,
)
from .deformation import (
    TruncatedDeformation,
    check_associative_splitting,
    check_deformation,
    extend_deformation,
    obstruction,
    udf_generate,
)
from .dendriform import (
    AssociativeAlgebra,
    DendriformAlgebra,
    InvalidStructureError,
    Representation,
    aguiar,
    check_representation,
    check_rota_baxter,
    semidirect,
)
from .diasscoalg import coderivation_square, lift_coderivation
from .exactnum import rational_array
from .homotopy.graded import (
    GradedAInfSystem,
    GradedDendSystem,
    check_a_infinity,
    check_dend_infinity,
    check_dend_infinity_shifted,
    dend_to_a_infinity,
    shift,
    shift_a_infinity,
    system_from_json,
    system_to_json,
)
from .homotopy.rota import check_rb_a_infinity, induced_dend_infinity
from .homotopy.twoterm import (
    CrossedModule,
    TwoTermDend,
    check_crossed_module,
    check_two_term,
    crossed_to_strict,
    strict_to_crossed,
    triple_to_skeletal,
)
from .report import CheckReport

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


class Failure(Exception):
    """A mathematical failure carrying the report to print."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "failure"))
        self.payload = payload


# -- input -------------------------------------------------------------------------


def _load(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _algebra(path: str) -> DendriformAlgebra:
    return DendriformAlgebra.from_json(_load(path))


def _rb_pair(data: dict) -> tuple[AssociativeAlgebra, np.ndarray]:
    R = data.get("R", data.get("operator"))
    if R is None:
        raise KeyError("R")
    return AssociativeAlgebra.from_json(data), rational_array(R)


def _coefficients(A: DendriformAlgebra, choice: str) -> Representation:
    if choice == "self":
        return Representation.adjoint(A)
    if choice == "trivial":
        return Representation.trivial(A, 1)
    return Representation.from_json(_load(choice), A.dim)


def _system(data: dict):
    """A graded system or, for two-term JSON, its graded form."""
    if "n0" in data:
        return TwoTermDend.from_json(data).to_graded()
    return system_from_json(data)


def _check_system(S, n_max: int | None = None) -> CheckReport:
    if isinstance(S, GradedAInfSystem):
        return check_a_infinity(S, n_max)
    return check_dend_infinity_shifted(S, n_max) if S.shifted else check_dend_infinity(S, n_max)


# -- verbs ---------------------------------------------------------------------------

Handler = Callable[[argparse.Namespace], tuple[dict, bool]]


def _report(rep: CheckReport, **extra) -> tuple[dict, bool]:
    out = rep.to_json()
    out.update(extra)
    return out, rep.ok


def check_algebra(a):
    return _report(_algebra(a.file).report)


def check_representation_verb(a):
    A = _algebra(a.file)
    M = Representation.from_json(_load(a.rep), A.dim)
    return _report(check_representation(A, M))


def check_rota_baxter_verb(a):
    P, R = _rb_pair(_load(a.file))
    rep = CheckReport("rota_baxter")
    rep.add_section("associative", P.report)
    rep.add_section("operator", check_rota_baxter(P, R))
    return _report(rep)


def check_crossed(a):
    return _report(check_crossed_module(CrossedModule.from_json(_load(a.file))))


def check_two_term_verb(a):
    return _report(check_two_term(TwoTermDend.from_json(_load(a.file))))


def make_semidirect(a):
    A = _algebra(a.file)
    return semidirect(A, _coefficients(A, a.coefficients)).to_json(), True


def make_aguiar(a):
    P, R = _rb_pair(_load(a.file))
    return aguiar(P, R).to_json(), True


def make_extension(a):
    A = _algebra(a.file)
    M = _coefficients(A, a.coefficients)
    return extension_from_cocycle(A, M, cochain_from_json(_load(a.cocycle))).to_json(), True


def make_cocycle(a):
    A = _algebra(a.base)
    M = _coefficients(A, a.coefficients)
    return cochain_to_json(cocycle_from_extension(_algebra(a.file), A, M)), True


def make_skeletal(a):
    A = _algebra(a.file)
    M = _coefficients(A, a.coefficients)
    return triple_to_skeletal(A, M, cochain_from_json(_load(a.cocycle))).to_json(), True


def make_strict(a):
    return crossed_to_strict(CrossedModule.from_json(_load(a.file))).to_json(), True


def make_crossed(a):
    return strict_to_crossed(TwoTermDend.from_json(_load(a.file))).to_json(), True


def make_split(a):
    S = _system(_load(a.file))
    if not isinstance(S, GradedDendSystem):
        raise UsageError("split expects a labelled system")
    return dend_to_a_infinity(S).to_json(), True


def cohomology_verb(a):
    A = _algebra(a.file)
    M = _coefficients(A, a.coefficients)
    res = cohomology_dim(A, M, a.degree, differential=a.differential)
    out = res.to_json()
    out["cocycles"] = [[str(x) for x in v] for v in res.cycles]
    out["differential"] = a.differential
    return out, True


def hochschild_verb(a):
    A = _algebra(a.file)
    M = _coefficients(A, a.coefficients)
    rep = hochschild_compare(A, M, a.degree)
    return _report(rep, degree=a.degree, residual_nonzero=rep.failure_count())


def _deformation(path: str) -> TruncatedDeformation:
    return TruncatedDeformation.from_json(_load(path))


def deform_check(a):
    D = _deformation(a.file)
    rep = CheckReport("deformation")
    rep.add_section("equations", check_deformation(D))
    rep.add_section("associative", check_associative_splitting(D))
    return _report(rep, order=D.order)


def deform_obstruction(a):
    D = _deformation(a.file)
    obs = obstruction(D)
    A = D.algebra
    M = Representation.adjoint(A)
    exact = obs.is_zero() or solve_coboundary(obs, A, M) is not None
    out = {"order": D.order, "obstruction": cochain_to_json(obs), "is_cocycle": is_cocycle(obs, A, M), "is_coboundary": exact}
    return out, True


def deform_extend(a):
    D = _deformation(a.file)
    res = extend_deformation(D)
    if not res.extendable:
        raise Failure({"error": "obstruction is not a coboundary", "obstruction": cochain_to_json(res.obstruction)})
    return D.extended(res.term).to_json(), True


def udf_verb(a):
    data = _load(a.file)
    A = DendriformAlgebra.from_json(data["algebra"])
    D = udf_generate(A, data["D1"], data["D2"], a.order)
    return D.to_json(), check_deformation(D).ok


def homotopy_check(a):
    S = _system(_load(a.file))
    n_max = 2 * a.arity_bound - 1 if a.arity_bound else None
    return _report(_check_system(S, n_max), kind=S.kind, shifted=S.shifted)


def homotopy_shift(a):
    S = system_from_json(_load(a.file))
    if S.shifted:
        raise UsageError("system is already shifted")
    V = shift(S) if isinstance(S, GradedDendSystem) else shift_a_infinity(S)
    return system_to_json(V), True


def homotopy_rb(a):
    data = _load(a.file)
    S = system_from_json(data["system"], labelled=False)
    R = rational_array(data["operator"])
    rep = check_rb_a_infinity(S, R)
    if not rep.ok:
        raise Failure(rep.to_json())
    return induced_dend_infinity(S, R).to_json(), True


def coder_square(a):
    S = _system(_load(a.file))
    if not isinstance(S, GradedDendSystem):
        raise UsageError("coder-square expects a labelled system")
    V = S if S.shifted else shift(S)
    K = a.arity_bound or V.arity_bound
    W = a.weight if a.weight is not None else 2 * K - 1
    res = coderivation_square(lift_coderivation(V, W, [k for k in V.ops if k <= K]))
    out = res.to_json()
    out["weight"] = W
    return out, res.ok


for _fn in (make_semidirect, make_aguiar, make_extension, make_cocycle, make_skeletal, make_strict,
            make_crossed, make_split, deform_extend, udf_verb, homotopy_shift, homotopy_rb):
    _fn.makes = True


# -- parser ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="accepted for scripting; no verb draws random numbers")


def _cmd(sub, name: str, fn: Handler, *args: str, **opts) -> argparse.ArgumentParser:
    p = sub.add_parser(name)
    for arg in args:
        p.add_argument(arg)
    if opts.get("coefficients"):
        p.add_argument("--coefficients", default="self", help="self, trivial, or a representation JSON file")
    if opts.get("degree"):
        p.add_argument("--degree", type=int, required=True)
    _common(p)
    p.set_defaults(handler=fn)
    return p


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="dendro")
    verbs = root.add_subparsers(dest="verb", parser_class=_Parser, required=True)

    check = verbs.add_parser("check").add_subparsers(dest="what", parser_class=_Parser, required=True)
    _cmd(check, "algebra", check_algebra, "file")
    _cmd(check, "representation", check_representation_verb, "file", "rep")
    _cmd(check, "rota-baxter", check_rota_baxter_verb, "file")
    _cmd(check, "crossed-module", check_crossed, "file")
    _cmd(check, "two-term", check_two_term_verb, "file")

    make = verbs.add_parser("make").add_subparsers(dest="what", parser_class=_Parser, required=True)
    _cmd(make, "semidirect", make_semidirect, "file", coefficients=True)
    _cmd(make, "aguiar", make_aguiar, "file")
    _cmd(make, "extension", make_extension, "file", "cocycle", coefficients=True)
    _cmd(make, "cocycle", make_cocycle, "file", "base", coefficients=True)
    _cmd(make, "skeletal", make_skeletal, "file", "cocycle", coefficients=True)
    _cmd(make, "strict", make_strict, "file")
    _cmd(make, "crossed", make_crossed, "file")
    _cmd(make, "split", make_split, "file")

    p = _cmd(verbs, "cohomology", cohomology_verb, "file", coefficients=True, degree=True)
    p.add_argument("--differential", choices=("dend", "dpi"), default="dend")
    _cmd(verbs, "hochschild-compare", hochschild_verb, "file", coefficients=True, degree=True)

    deform = verbs.add_parser("deform").add_subparsers(dest="what", parser_class=_Parser, required=True)
    _cmd(deform, "check", deform_check, "file")
    _cmd(deform, "obstruction", deform_obstruction, "file")
    _cmd(deform, "extend", deform_extend, "file")
    _cmd(verbs, "udf", udf_verb, "file").add_argument("--order", type=int, default=4)

    hom = verbs.add_parser("homotopy").add_subparsers(dest="what", parser_class=_Parser, required=True)
    _cmd(hom, "check", homotopy_check, "file").add_argument(
        "--arity-bound", type=int, help="check identities only up to arity 2K - 1 for this K"
    )
    _cmd(hom, "shift", homotopy_shift, "file")
    _cmd(hom, "split", make_split, "file")
    _cmd(hom, "rb", homotopy_rb, "file")
    p = _cmd(verbs, "coder-square", coder_square, "file")
    p.add_argument("--weight", type=int, help="largest word weight (default 2K - 1)")
    p.add_argument("--arity-bound", type=int, help="lift only operations of arity <= K")

    return root


def _command_name(argv: list[str]) -> str:
    words = []
    for w in argv:
        if w.startswith("-"):
            break
        words.append(w)
        if len(words) == 2 and words[0] in ("check", "make", "deform", "homotopy"):
            break
        if len(words) == 1 and words[0] not in ("check", "make", "deform", "homotopy"):
            break
    return " ".join(words)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str]) -> int:
    parser = build_parser()
    out = None
    args = None
    try:
        args = parser.parse_args(argv)
        out = args.out
        payload, ok = args.handler(args)
        code = 0 if ok else 1
    except UsageError as exc:
        payload, code = {"ok": False, "error": str(exc)}, 2
    except Failure as exc:
        payload, code = {"ok": False, **exc.payload}, 1
    except (InvalidStructureError, ArithmeticError) as exc:
        payload, code = {"ok": False, "error": str(exc)}, 1
    except ResourceLimitError as exc:
        payload, code = {"ok": False, "error": str(exc)}, 2
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        payload, code = {"ok": False, "error": msg}, 2
    if code != 0 or args is None or not getattr(args.handler, "makes", False):
        payload.setdefault("ok", code == 0)
        payload.setdefault("command", _command_name(argv))
    if code == 2:
        sys.stderr.write(f"dendro: {payload['error']}\n")
    _emit(payload, out)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
