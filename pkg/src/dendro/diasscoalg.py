"""The free diassociative coalgebra TV (x) V (x) TV, truncated at weight W.

A basis word ``v_1 ... v_n (x) v (x) w_1 ... w_m`` is a :class:`TensorWord` of
basis indices of V.  Formal sums are dicts from words (or tuples of words) to
Fractions with zero coefficients dropped.  The labelled degree -1 maps
rho_{k,[r]} come as a :class:`~dendro.homotopy.GradedDendSystem` whose
operations all have degree -1 (see :func:`dendro.homotopy.shift`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, NamedTuple

import numpy as np

from .combimaps import inner_labels, r_zero
from .homotopy.graded import GradedDendSystem, GradedSpace
from .report import CheckReport

__all__ = [
    "TensorWord",
    "BASIS_CAP",
    "enumerate_basis",
    "delta1",
    "delta2",
    "check_coalgebra_axioms",
    "Coderivation",
    "lift_coderivation",
    "check_coderivation",
    "coderivation_square",
    "SquareResult",
    "verify_coder_lemma",
]

BASIS_CAP = 50_000

Sum = dict


class TensorWord(NamedTuple):
    left: tuple[int, ...]
    middle: int
    right: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.left) + 1 + len(self.right)

    @property
    def letters(self) -> tuple[int, ...]:
        return self.left + (self.middle,) + self.right

    def degree(self, space: GradedSpace) -> int:
        deg = space.degrees
        return int(sum(deg[x] for x in self.letters))

    def __str__(self) -> str:
        def part(xs):
            return " ".join(f"v{x}" for x in xs) if xs else "1"

        return f"{part(self.left)} (x) v{self.middle} (x) {part(self.right)}"


def _word(letters: tuple[int, ...], mid: int) -> TensorWord:
    return TensorWord(letters[:mid], letters[mid], letters[mid + 1 :])


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def basis_count(dim: int, W: int) -> int:
    return sum(w * dim**w for w in range(1, W + 1))


def enumerate_basis(V: GradedSpace, W: int) -> list[TensorWord]:
    """Words of weight 1..W, ordered by weight, then left length, then indices."""
    if W < 1:
        raise ValueError("weight bound must be at least 1")
    N = V.total
    count = basis_count(N, W)
    if count > BASIS_CAP:
        raise ValueError(f"{count} basis words exceeds the cap of {BASIS_CAP}")
    out = []
    for w in range(1, W + 1):
        for p in range(w):
            for letters in product(range(N), repeat=w):
                out.append(_word(letters, p))
    return out


def delta1(w: TensorWord) -> Sum:
    """Split the right part: (left (x) v (x) w_1..w_i) (x) (w_{i+1}..w_{i+j} (x) w_{i+j+1} (x) ...)."""
    out: Sum = {}
    m = len(w.right)
    for i in range(m):
        for j in range(m - i):
            a = TensorWord(w.left, w.middle, w.right[:i])
            b = TensorWord(w.right[i : i + j], w.right[i + j], w.right[i + j + 1 :])
            _add(out, (a, b), 1)
    return out


def delta2(w: TensorWord) -> Sum:
    """Split the left part: (v_1..v_i (x) v_{i+1} (x) v_{i+2}..v_{i+j+1}) (x) (... (x) v (x) right)."""
    out: Sum = {}
    n = len(w.left)
    for i in range(n):
        for j in range(n - i):
            a = TensorWord(w.left[:i], w.left[i], w.left[i + 1 : i + j + 1])
            b = TensorWord(w.left[i + j + 1 :], w.middle, w.right)
            _add(out, (a, b), 1)
    return out


_DELTAS = {1: delta1, 2: delta2}


def _left_then(first: int, second: int, w: TensorWord) -> Sum:
    """(Delta_second (x) id) Delta_first."""
    out: Sum = {}
    for (a, b), c in _DELTAS[first](w).items():
        for (x, y), c2 in _DELTAS[second](a).items():
            _add(out, (x, y, b), c * c2)
    return out


def _right_then(first: int, second: int, w: TensorWord) -> Sum:
    """(id (x) Delta_second) Delta_first."""
    out: Sum = {}
    for (a, b), c in _DELTAS[first](w).items():
        for (x, y), c2 in _DELTAS[second](b).items():
            _add(out, (a, x, y), c * c2)
    return out


# each entry: name and the two composites that must agree
_AXIOMS = (
    ("(id x D1)D1 = (D1 x id)D1", lambda w: _right_then(1, 1, w), lambda w: _left_then(1, 1, w)),
    ("(D1 x id)D1 = (id x D2)D1", lambda w: _left_then(1, 1, w), lambda w: _right_then(1, 2, w)),
    ("(D2 x id)D1 = (id x D1)D2", lambda w: _left_then(1, 2, w), lambda w: _right_then(2, 1, w)),
    ("(D1 x id)D2 = (id x D2)D2", lambda w: _left_then(2, 1, w), lambda w: _right_then(2, 2, w)),
    ("(id x D2)D2 = (D2 x id)D2", lambda w: _right_then(2, 2, w), lambda w: _left_then(2, 2, w)),
)


def _sum_failure(report: CheckReport, identity: str, lhs: Sum, rhs: Sum, word: TensorWord) -> None:
    report.checked += 1
    diff = dict(lhs)
    for k, c in rhs.items():
        _add(diff, k, -c)
    if diff:
        key = min(diff, key=str)
        report.failures.append(
            {"identity": identity, "word": str(word), "term": [str(x) for x in key], "residual": str(diff[key])}
        )


def check_coalgebra_axioms(V: GradedSpace, W: int) -> CheckReport:
    """The five coassociativity equalities on every basis word up to weight W."""
    rep = CheckReport("diassociative_coalgebra")
    for name, lhs, rhs in _AXIOMS:
        sec = CheckReport(name)
        for w in enumerate_basis(V, W):
            _sum_failure(sec, name, lhs(w), rhs(w), w)
        rep.add_section(name, sec)
    return rep


# -- coderivations --------------------------------------------------------------


def _parity(space: GradedSpace, letters: Iterable[int]) -> int:
    deg = space.degrees
    return int(sum(deg[x] for x in letters)) % 2


@dataclass
class Coderivation:
    """Sparse matrix over the truncated word basis: ``cols[word]`` is the image of word."""

    space: GradedSpace
    weight: int
    cols: dict[TensorWord, Sum]

    def apply(self, x: Sum) -> Sum:
        out: Sum = {}
        for w, c in x.items():
            for w2, c2 in self.cols.get(w, {}).items():
                _add(out, w2, c * c2)
        return out

    def compose(self, other: "Coderivation") -> "Coderivation":
        """self o other."""
        return Coderivation(self.space, self.weight, {w: self.apply(col) for w, col in other.cols.items()})

    def nonzero_count(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def to_dense(self, basis: list[TensorWord]) -> np.ndarray:
        pos = {w: i for i, w in enumerate(basis)}
        M = np.full((len(basis), len(basis)), Fraction(0), dtype=object)
        for w, col in self.cols.items():
            for w2, c in col.items():
                M[pos[w2], pos[w]] = c
        return M


def _rho_value(S: GradedDendSystem, k: int, label: int | None, block: tuple[int, ...]) -> np.ndarray:
    """rho_{k,[label]}(block) as a vector; label None means the sum over all labels."""
    T = S.op(k)
    comp = T.sum(axis=0) if label is None else T[label]
    return comp[(slice(None),) + block]


def _lift_one(S: GradedDendSystem, k: int, w: TensorWord) -> Sum:
    """rho~_k on a single word: every block of k consecutive letters, signed by what precedes it."""
    out: Sum = {}
    letters = w.letters
    p = len(w.left)
    n = len(letters)
    for l in range(0, n - k + 1):
        block = letters[l : l + k]
        sign = -1 if _parity(S.space, letters[:l]) else 1
        if l <= p < l + k:
            vec = _rho_value(S, k, p - l, block)
            new_mid = l
        else:
            vec = _rho_value(S, k, None, block)
            new_mid = p if p < l else p - k + 1
        for x, c in enumerate(vec):
            if c:
                _add(out, _word(letters[:l] + (x,) + letters[l + k :], new_mid), sign * c)
    return out


def lift_coderivation(S: GradedDendSystem, W: int, arities: Iterable[int] | None = None) -> Coderivation:
    """Sum of rho~_k over the stored arities (or the given ones) on words of weight <= W."""
    if not S.shifted:
        raise ValueError("lifted maps must have degree -1 (shift the system first)")
    ks = sorted(S.ops) if arities is None else sorted(arities)
    cols: dict[TensorWord, Sum] = {}
    for w in enumerate_basis(S.space, W):
        col: Sum = {}
        for k in ks:
            if k <= w.weight and k in S.ops:
                for w2, c in _lift_one(S, k, w).items():
                    _add(col, w2, c)
        cols[w] = col
    return Coderivation(S.space, W, cols)


def _tensor_apply(D: Coderivation, pairs: Sum) -> Sum:
    """(id (x) D + D (x) id) with the Koszul sign (-1)^{|x|} on id (x) D."""
    out: Sum = {}
    for (a, b), c in pairs.items():
        sa = -1 if _parity(D.space, a.letters) else 1
        for b2, c2 in D.cols.get(b, {}).items():
            _add(out, (a, b2), sa * c * c2)
        for a2, c2 in D.cols.get(a, {}).items():
            _add(out, (a2, b), c * c2)
    return out


def check_coderivation(D: Coderivation) -> CheckReport:
    """Delta_a o D = (id (x) D + D (x) id) o Delta_a for a = 1, 2 on every basis word."""
    rep = CheckReport("coderivation")
    for a, delta in _DELTAS.items():
        sec = CheckReport(f"delta{a}")
        for w, col in D.cols.items():
            lhs: Sum = {}
            for w2, c in col.items():
                for key, c2 in delta(w2).items():
                    _add(lhs, key, c * c2)
            _sum_failure(sec, f"delta{a}", lhs, _tensor_apply(D, delta(w)), w)
        rep.add_section(f"delta{a}", sec)
    return rep


@dataclass
class SquareResult:
    nonzero: int
    first_word: TensorWord | None
    square: Coderivation

    @property
    def ok(self) -> bool:
        return self.nonzero == 0

    def to_json(self) -> dict:
        out = {"ok": self.ok, "nonzero_entries": self.nonzero}
        out["first_offending_word"] = None if self.first_word is None else str(self.first_word)
        if self.first_word is not None:
            out["first_offending_weight"] = self.first_word.weight
        return out


def coderivation_square(D: Coderivation) -> SquareResult:
    sq = D.compose(D)
    first = None
    for w in enumerate_basis(D.space, D.weight):
        if sq.cols.get(w):
            first = w
            break
    return SquareResult(sq.nonzero_count(), first, sq)


def verify_coder_lemma(S: GradedDendSystem, i: int, j: int, word: TensorWord) -> CheckReport:
    """rho~_j o rho~_i on a weight i + j - 1 word against the labelled composite."""
    n = word.weight
    if i < 1 or j < 1 or i + j != n + 1:
        raise ValueError(f"need i + j = weight + 1, got i={i}, j={j}, weight={n}")
    # left side: two lifts
    first = _lift_one(S, i, word) if i in S.ops else {}
    lhs: Sum = {}
    for w2, c in first.items():
        if j in S.ops:
            for w3, c2 in _lift_one(S, j, w2).items():
                _add(lhs, w3, c * c2)
    # right side: sum over lambda with label routing, evaluated letter by letter
    r = len(word.left) + 1
    v = word.letters
    N = S.space.total
    rhs_vec = [Fraction(0)] * N
    Ti, Tj = S.op(i), S.op(j)
    for lam in range(1, j + 1):
        sign = -1 if _parity(S.space, v[: lam - 1]) else 1
        outer = r_zero(j, lam, i, r)
        inner = inner_labels(j, lam, i, r)
        inner_val = sum(Ti[lab - 1][(slice(None),) + v[lam - 1 : lam - 1 + i]] for lab in inner)
        for x, cx in enumerate(inner_val):
            if cx:
                args = v[: lam - 1] + (x,) + v[lam - 1 + i :]
                col = Tj[outer - 1][(slice(None),) + args]
                for y in range(N):
                    rhs_vec[y] += sign * cx * col[y]
    rhs = {TensorWord((), y, ()): c for y, c in enumerate(rhs_vec) if c}
    rep = CheckReport("coder_lemma")
    _sum_failure(rep, f"i={i}, j={j}", lhs, rhs, word)
    return rep
