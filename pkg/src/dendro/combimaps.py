"""Label calculus on the sets C_n = {[1], ..., [n]}.

Substituting an n-ary operation into slot ``i`` of an m-ary one produces an
(m+n-1)-ary operation.  ``r_zero`` tells which label of the outer operation a
label [r] of the result comes from; ``r_inner`` tells which combination of
labels of the inner operation is used.  Labels are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = ["Label", "LabelSum", "r_zero", "r_inner", "inner_labels", "branch"]


@dataclass(frozen=True)
class Label:
    n: int
    r: int

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise ValueError(f"label [{self.r}] not in C_{self.n}")


@dataclass(frozen=True)
class LabelSum:
    """Element sum_r c_r [r] of K[C_n]."""

    n: int
    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for r, _ in self.terms:
            if not 1 <= r <= self.n:
                raise ValueError(f"label [{r}] not in C_{self.n}")
            if r in seen:
                raise ValueError(f"duplicate label [{r}]")
            seen.add(r)

    @classmethod
    def single(cls, n: int, r: int) -> "LabelSum":
        return cls(n, ((r, Fraction(1)),))

    @classmethod
    def full(cls, n: int) -> "LabelSum":
        return cls(n, tuple((r, Fraction(1)) for r in range(1, n + 1)))

    @classmethod
    def of(cls, n: int, coeffs: dict[int, object]) -> "LabelSum":
        return cls(n, tuple(sorted((r, Fraction(c)) for r, c in coeffs.items())))

    def is_singleton(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    def labels(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.terms)

    def __str__(self) -> str:
        parts = []
        for r, c in self.terms:
            parts.append(f"[{r}]" if c == 1 else f"{c}*[{r}]")
        return " + ".join(parts) if parts else "0"


def _check(m: int, i: int, n: int, r: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"arities must be positive, got m={m}, n={n}")
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} out of range 1..{m}")
    if not 1 <= r <= m + n - 1:
        raise ValueError(f"label [{r}] not in C_{m + n - 1}")


def branch(m: int, i: int, n: int, r: int) -> int:
    """0 if [r] lies before the inserted block, 1 inside it, 2 after it."""
    _check(m, i, n, r)
    if r <= i - 1:
        return 0
    if r <= i + n - 1:
        return 1
    return 2


@lru_cache(maxsize=None)
def r_zero(m: int, i: int, n: int, r: int) -> int:
    """R_0(m; 1,...,n,...,1)[r] with n in slot i, as an index in 1..m."""
    b = branch(m, i, n, r)
    if b == 0:
        return r
    if b == 1:
        return i
    return r - n + 1


@lru_cache(maxsize=None)
def inner_labels(m: int, i: int, n: int, r: int) -> tuple[int, ...]:
    """Labels (all with coefficient 1) making up R_i(m; 1,...,n,...,1)[r]."""
    if branch(m, i, n, r) == 1:
        return (r - (i - 1),)
    return tuple(range(1, n + 1))


def r_inner(m: int, i: int, n: int, r: int) -> LabelSum:
    """R_i(m; 1,...,n,...,1)[r] as an element of K[C_n]."""
    return LabelSum(n, tuple((s, Fraction(1)) for s in inner_labels(m, i, n, r)))
