"""The operad O(n) = Hom(K[C_n] (x) A^(x)n, A) and its multiplication calculus.

A :class:`MultiMap` of arity n stores one coefficient tensor per label.  The
component array has shape ``(n, dim_out, dim_in, ..., dim_in)``: axis 0 is the
label ``[r] - 1``, axis 1 the output coordinate, and the remaining axes the
input coordinates of the n arguments.

The low-level :func:`compose_components` works on raw component arrays whose
slots may have different dimensions; the representation actions and mixed
cochains in :mod:`dendro.cohomology` reuse it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combimaps import LabelSum, inner_labels, r_zero
from .exactnum import rational_array, tensor_to_json, zeros

__all__ = [
    "MultiMap",
    "compose_components",
    "insert_tensor",
    "partial_compose",
    "circle",
    "bracket",
    "cup",
    "cup_sign",
    "d_pi",
    "is_multiplication",
    "end_partial_compose",
    "end_circle",
    "random_multimap",
]


def insert_tensor(outer: np.ndarray, inner: np.ndarray, i: int) -> np.ndarray:
    """Feed the output of ``inner`` into input slot ``i`` (1-based) of ``outer``.

    ``outer`` has shape (out, in_1, ..., in_m) and ``inner`` shape
    (in_i, g_1, ..., g_n); the result has shape
    (out, in_1, ..., in_{i-1}, g_1, ..., g_n, in_{i+1}, ..., in_m).
    """
    m = outer.ndim - 1
    n = inner.ndim - 1
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} out of range 1..{m}")
    if outer.shape[i] != inner.shape[0]:
        raise ValueError(
            f"cannot insert output of dimension {inner.shape[0]} into slot of dimension {outer.shape[i]}"
        )
    t = np.tensordot(outer, inner, axes=([i], [0]))
    if n and i != m:
        t = np.moveaxis(t, list(range(m, m + n)), list(range(i, i + n)))
    return t


def compose_components(F: np.ndarray, G: np.ndarray, i: int) -> np.ndarray:
    """Labelled partial composition on component arrays (label axis first)."""
    m, n = F.shape[0], G.shape[0]
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} out of range 1..{m}")
    g_full = G.sum(axis=0) if n > 1 else G[0]
    parts = []
    for r in range(1, m + n):
        outer = F[r_zero(m, i, n, r) - 1]
        labs = inner_labels(m, i, n, r)
        g = G[labs[0] - 1] if len(labs) == 1 else g_full
        parts.append(insert_tensor(outer, g, i))
    return np.stack(parts)


class MultiMap:
    """Element of O(n): n labelled multilinear components.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("components",)

    def __init__(self, components):
        comps = components if isinstance(components, np.ndarray) and components.dtype == object else rational_array(components)
        if comps.ndim < 2:
            raise ValueError("components need a label axis and an output axis")
        n = comps.shape[0]
        if n < 1 or comps.ndim != n + 2:
            raise ValueError(f"component array of shape {comps.shape} does not describe an arity-{n} map")
        if len(set(comps.shape[2:])) > 1:
            raise ValueError(f"all inputs must share one dimension, got {comps.shape[2:]}")
        comps.setflags(write=False)
        self.components = comps

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, arity: int, dim_in: int, dim_out: int | None = None) -> "MultiMap":
        dim_out = dim_in if dim_out is None else dim_out
        return cls(zeros((arity, dim_out) + (dim_in,) * arity))

    @classmethod
    def identity(cls, dim: int) -> "MultiMap":
        c = zeros((1, dim, dim))
        for k in range(dim):
            c[0, k, k] = Fraction(1)
        return cls(c)

    @classmethod
    def from_matrix(cls, mat) -> "MultiMap":
        """Arity-1 map from a matrix acting on column vectors."""
        a = rational_array(mat)
        return cls(a.reshape((1,) + a.shape))

    @classmethod
    def from_labels(cls, tensors: Sequence) -> "MultiMap":
        return cls(np.stack([rational_array(t) for t in tensors]))

    # -- shape ----------------------------------------------------------
    @property
    def arity(self) -> int:
        return self.components.shape[0]

    @property
    def dim_out(self) -> int:
        return self.components.shape[1]

    @property
    def dim_in(self) -> int:
        # arity >= 1 always, so at least one input axis exists
        return self.components.shape[2]

    def component(self, r: int) -> np.ndarray:
        return self.components[r - 1]

    def label_sum(self) -> np.ndarray:
        """f_[1] + ... + f_[n] as a plain tensor of shape (dim_out, dim_in^n)."""
        return self.components.sum(axis=0)

    def is_square(self) -> bool:
        return self.dim_in == self.dim_out

    # -- evaluation -------------------------------------------------------
    def eval(self, xi: LabelSum | int, *args) -> np.ndarray:
        if isinstance(xi, int):
            xi = LabelSum.single(self.arity, xi)
        if xi.n != self.arity:
            raise ValueError(f"label sum over C_{xi.n} applied to arity {self.arity}")
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        vecs = [rational_array(a) for a in args]
        for v in vecs:
            if v.shape != (self.dim_in,):
                raise ValueError(f"argument of shape {v.shape}, expected ({self.dim_in},)")
        out = zeros((self.dim_out,))
        for r, c in xi.terms:
            t = self.components[r - 1]
            for v in reversed(vecs):
                t = t.dot(v)
            out = out + c * t
        return out

    # -- linear structure ---------------------------------------------
    def _same_shape(self, other: "MultiMap") -> None:
        if self.components.shape != other.components.shape:
            raise ValueError(f"shape mismatch {self.components.shape} vs {other.components.shape}")

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._same_shape(other)
        return MultiMap(self.components + other.components)

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        self._same_shape(other)
        return MultiMap(self.components - other.components)

    def __neg__(self) -> "MultiMap":
        return MultiMap(-self.components)

    def __mul__(self, c) -> "MultiMap":
        return MultiMap(self.components * Fraction(c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiMap):
            return NotImplemented
        return self.components.shape == other.components.shape and bool(
            np.all(self.components == other.components)
        )

    def __hash__(self):
        return hash((self.components.shape, tuple(self.components.reshape(-1))))

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self.components.reshape(-1))

    def nonzero_count(self) -> int:
        return sum(1 for x in self.components.reshape(-1) if x != 0)

    def __repr__(self) -> str:
        return f"MultiMap(arity={self.arity}, dim_in={self.dim_in}, dim_out={self.dim_out})"

    # -- coordinates ------------------------------------------------------
    def to_vector(self) -> list[Fraction]:
        return list(self.components.reshape(-1))

    @classmethod
    def from_vector(cls, vec, arity: int, dim_in: int, dim_out: int) -> "MultiMap":
        return cls(rational_array(list(vec)).reshape((arity, dim_out) + (dim_in,) * arity))

    @staticmethod
    def coordinate_count(arity: int, dim_in: int, dim_out: int) -> int:
        return arity * dim_out * dim_in**arity

    @classmethod
    def basis(cls, arity: int, dim_in: int, dim_out: int):
        size = cls.coordinate_count(arity, dim_in, dim_out)
        for k in range(size):
            vec = [Fraction(0)] * size
            vec[k] = Fraction(1)
            yield cls.from_vector(vec, arity, dim_in, dim_out)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "dim_in": self.dim_in,
            "dim_out": self.dim_out,
            "components": tensor_to_json(self.components),
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiMap":
        comps = rational_array(data["components"])
        n, d_in, d_out = data["arity"], data["dim_in"], data["dim_out"]
        comps = comps.reshape((n, d_out) + (d_in,) * n)
        return cls(comps)


# -- operad operations ----------------------------------------------------


def partial_compose(f: MultiMap, g: MultiMap, i: int) -> MultiMap:
    if g.dim_out != f.dim_in:
        raise ValueError(f"g lands in dimension {g.dim_out}, f expects {f.dim_in}")
    return MultiMap(compose_components(f.components, g.components, i))


def _require_square(*maps: MultiMap) -> None:
    for f in maps:
        if not f.is_square():
            raise ValueError(f"operation needs target = source, got {f!r}")
    if len({f.dim_in for f in maps}) > 1:
        raise ValueError("maps live on different spaces")


def circle(f: MultiMap, g: MultiMap) -> MultiMap:
    """f o g = sum_i (-1)^((i-1)(n-1)) f o_i g."""
    _require_square(f, g)
    m, n = f.arity, g.arity
    acc = None
    for i in range(1, m + 1):
        term = compose_components(f.components, g.components, i)
        if (i - 1) * (n - 1) % 2:
            term = -term
        acc = term if acc is None else acc + term
    return MultiMap(acc)


def bracket(f: MultiMap, g: MultiMap) -> MultiMap:
    m, n = f.arity, g.arity
    sign = -1 if (m - 1) * (n - 1) % 2 else 1
    return circle(f, g) - sign * circle(g, f)


def cup_sign(m: int, n: int) -> int:
    # fixed by the Leibniz rule for d_pi; equals +1 when m = n = 1
    return -1 if (m * n + 1) % 2 else 1


def cup(f: MultiMap, g: MultiMap, pi: MultiMap) -> MultiMap:
    """f . g = cup_sign(m, n) * (pi o_2 g) o_1 f."""
    _require_square(f, g, pi)
    if pi.arity != 2:
        raise ValueError("pi must have arity 2")
    raw = partial_compose(partial_compose(pi, g, 2), f, 1)
    return raw * cup_sign(f.arity, g.arity)


def d_pi(f: MultiMap, pi: MultiMap) -> MultiMap:
    """d_pi f = pi o f - (-1)^(k-1) f o pi."""
    k = f.arity
    left = circle(pi, f)
    right = circle(f, pi)
    return left + right if (k - 1) % 2 else left - right


def is_multiplication(pi: MultiMap) -> tuple[bool, MultiMap]:
    """Whether pi o_1 pi = pi o_2 pi; also returns that difference."""
    if pi.arity != 2:
        raise ValueError("a multiplication has arity 2")
    _require_square(pi)
    residual = partial_compose(pi, pi, 1) - partial_compose(pi, pi, 2)
    return residual.is_zero(), residual


# -- End_A: unlabelled cochains -------------------------------------------


def end_partial_compose(F: np.ndarray, G: np.ndarray, i: int) -> np.ndarray:
    """Partial composition o_i on plain multilinear tensors (out axis first)."""
    return insert_tensor(F, G, i)


def end_circle(F: np.ndarray, G: np.ndarray) -> np.ndarray:
    m, n = F.ndim - 1, G.ndim - 1
    acc = None
    for i in range(1, m + 1):
        term = insert_tensor(F, G, i)
        if (i - 1) * (n - 1) % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def random_multimap(
    arity: int,
    dim_in: int,
    dim_out: int | None = None,
    rng: random.Random | None = None,
    *,
    lo: int = -3,
    hi: int = 3,
    fractions: bool = True,
    density: float = 1.0,
) -> MultiMap:
    """Random element of O(arity) with small rational entries."""
    rng = rng or random.Random(0)
    dim_out = dim_in if dim_out is None else dim_out
    size = MultiMap.coordinate_count(arity, dim_in, dim_out)
    vec = []
    for _ in range(size):
        if rng.random() > density:
            vec.append(Fraction(0))
            continue
        num = rng.randint(lo, hi)
        den = rng.choice((1, 1, 2, 3)) if fractions else 1
        vec.append(Fraction(num, den))
    return MultiMap.from_vector(vec, arity, dim_in, dim_out)
