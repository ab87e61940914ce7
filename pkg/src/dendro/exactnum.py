"""Exact rational scalars and dense linear algebra over Q.

Scalars are :class:`fractions.Fraction`; matrices wrap 2-d numpy object
arrays so that the tensor code elsewhere can hand them over without copies.
Elimination always takes the first nonzero entry of a column as pivot, which
keeps kernel bases and solutions reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "BrokenComplexError",
    "to_rational",
    "rational_array",
    "format_rational",
    "parse_rational",
    "tensor_to_json",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "span_rank",
    "quotient_dim",
    "extend_to_quotient_basis",
]


class BrokenComplexError(ValueError):
    """Raised when a claimed boundary space is not inside the cycle space."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rational_array(data, shape=None) -> np.ndarray:
    """Object array of Fractions built from nested lists / arrays / strings."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for idx in range(flat_in.size):
        flat_out[idx] = to_rational(flat_in[idx])
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def format_rational(q) -> str:
    return str(to_rational(q))


def tensor_to_json(t) -> list | str:
    """Nested lists of rational strings, preserving the array shape."""
    a = np.asarray(t, dtype=object)
    if a.ndim == 0:
        return format_rational(a[()])
    return [tensor_to_json(a[k]) for k in range(a.shape[0])]


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


class RationalMatrix:
    """Immutable dense matrix of Fractions (row-major)."""

    __slots__ = ("_a",)

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        if isinstance(entries, RationalMatrix):
            a = entries._a
        else:
            a = rational_array(entries)
            if rows is not None and cols is not None:
                a = a.reshape(rows, cols)
            elif a.ndim == 1 and a.size == 0:
                a = a.reshape(rows or 0, cols or 0)
        if a.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(zeros((rows, cols)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        a = zeros((n, n))
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls(a)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        a = zeros((rows, len(columns)))
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                a[i, j] = to_rational(x)
        return cls(a)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        return self._a

    def entries(self) -> list[Fraction]:
        return list(self._a.reshape(-1))

    def __getitem__(self, key):
        return self._a[key]

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return RationalMatrix(self._a.dot(other._a))
        v = np.asarray(other, dtype=object)
        return self._a.dot(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._a)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._a.reshape(-1))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self._a]


def _rows_of(M) -> tuple[list[list[Fraction]], int]:
    if isinstance(M, RationalMatrix):
        a = M.array
    else:
        a = rational_array(M)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return [list(row) for row in a], a.shape[1]


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot choice is the first row (from the current pivot row down) with a
    nonzero entry in the column.
    """
    rows, pivots, _ = _rref(M)
    return rows, pivots


def _rref(M):
    rows, ncols = _rows_of(M)
    pivots: list[int] = []
    prow = 0
    nrows = len(rows)
    for c in range(ncols):
        if prow >= nrows:
            break
        sel = None
        for r in range(prow, nrows):
            if rows[r][c] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv_row = rows[prow]
        inv = 1 / piv_row[c]
        if inv != 1:
            piv_row = rows[prow] = [x * inv for x in piv_row]
        nz = [k for k in range(c, ncols) if piv_row[k] != 0]
        for r in range(nrows):
            if r == prow:
                continue
            row = rows[r]
            fac = row[c]
            if fac == 0:
                continue
            for k in nz:
                row[k] -= fac * piv_row[k]
        pivots.append(c)
        prow += 1
    return rows, pivots, ncols


def rank(M) -> int:
    return len(rref(M)[1])


def kernel_basis(M) -> list[list[Fraction]]:
    """Basis of {x : Mx = 0}, one vector per free column in increasing order."""
    rows, pivots, ncols = _rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][free]
        basis.append(v)
    return basis


def solve(M, b: Sequence) -> list[Fraction] | None:
    """Some x with Mx = b, or None when b is outside the column space.

    Free variables are set to zero; the result is checked by substitution.
    """
    A = M if isinstance(M, RationalMatrix) else RationalMatrix(M)
    bvec = [to_rational(x) for x in b]
    if len(bvec) != A.rows:
        raise ValueError(f"right-hand side has length {len(bvec)}, expected {A.rows}")
    aug = zeros((A.rows, A.cols + 1))
    aug[:, : A.cols] = A.array
    aug[:, A.cols] = bvec
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for pr, pc in enumerate(pivots):
        x[pc] = rows[pr][A.cols]
    check = A.array.dot(np.array(x, dtype=object)) if A.cols else [Fraction(0)] * A.rows
    if any(check[i] != bvec[i] for i in range(A.rows)):
        raise ArithmeticError("back-substitution check failed")
    return x


def span_rank(vectors: Iterable[Sequence]) -> int:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    return rank(vecs)


def _check_lengths(*groups) -> None:
    lengths = {len(v) for g in groups for v in g}
    if len(lengths) > 1:
        raise ValueError(f"vectors of mixed lengths {sorted(lengths)}")


def quotient_dim(Z: Sequence[Sequence], B: Sequence[Sequence]) -> int:
    """dim span(Z) - dim span(B), after checking span(B) is inside span(Z)."""
    _check_lengths(Z, B)
    rz = span_rank(Z)
    rb = span_rank(B)
    if B and span_rank(list(Z) + list(B)) != rz:
        raise BrokenComplexError("boundary vectors are not contained in the cycle space")
    return rz - rb


def extend_to_quotient_basis(Z: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[Fraction]]:
    """Vectors of Z (in order) that extend a basis of span(B) to one of span(B + Z)."""
    _check_lengths(Z, B)
    reps: list[list[Fraction]] = []
    current = [list(v) for v in B]
    r = span_rank(current)
    for z in Z:
        trial = current + [list(z)]
        rt = span_rank(trial)
        if rt > r:
            reps.append([to_rational(x) for x in z])
            current = trial
            r = rt
    return reps
