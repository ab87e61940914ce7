"""Graded spaces and labelled graded operations at bounded degree and arity.

A :class:`GradedSpace` has a basis ordered by degree (lowest first).  An
operation of arity k is stored densely over that basis, with axis layout
``(label, out, in_1, ..., in_k)`` exactly as for :class:`~dendro.operadcore.MultiMap`;
homogeneity (output degree = sum of input degrees + shift) is validated
rather than encoded, so entries between the wrong degrees must be zero.
Outputs that would land outside the stored degree range simply do not exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable

import numpy as np

from ..exactnum import rational_array, tensor_to_json, zeros
from ..operadcore import compose_components, insert_tensor
from ..report import CheckReport

__all__ = [
    "GradedSpace",
    "GradedDendSystem",
    "GradedAInfSystem",
    "IDENTITY_ARITY_CAP",
    "check_dend_infinity",
    "check_dend_infinity_shifted",
    "check_a_infinity",
    "dend_infinity_residual",
    "a_infinity_residual",
    "shift",
    "unshift",
    "shift_a_infinity",
    "direct_sum",
    "embed_a_infinity",
    "from_dendriform",
    "dend_to_a_infinity",
    "random_dend_system",
    "sign_mask",
    "system_from_json",
    "system_to_json",
]

IDENTITY_ARITY_CAP = 5


@dataclass(frozen=True)
class GradedSpace:
    """Dimensions of the pieces in degrees low, low + 1, ..., low + len(dims) - 1."""

    dims: tuple[int, ...]
    low: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")

    @property
    def high(self) -> int:
        return self.low + len(self.dims) - 1

    @property
    def total(self) -> int:
        return sum(self.dims)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree of each basis vector, as an int array."""
        return np.array([self.low + k for k, d in enumerate(self.dims) for _ in range(d)], dtype=int)

    def offset(self, degree: int) -> int:
        return sum(self.dims[: degree - self.low])

    def dim(self, degree: int) -> int:
        if self.low <= degree <= self.high:
            return self.dims[degree - self.low]
        return 0

    def indices(self, degree: int) -> range:
        o = self.offset(degree) if self.low <= degree <= self.high else 0
        return range(o, o + self.dim(degree))

    def shifted(self, by: int = 1) -> "GradedSpace":
        return GradedSpace(self.dims, self.low + by)

    def to_json(self) -> dict:
        out = {"dims": list(self.dims)}
        if self.low:
            out["low"] = self.low
        return out


def sign_mask(degrees: np.ndarray, nslots: int, total_axes: int, lead: int, factor: int = 1) -> np.ndarray | None:
    """(-1)^(factor * sum of degrees in the first ``nslots`` input axes), broadcastable.

    ``lead`` leading axes (label/output) come first; ``total_axes`` input axes follow.
    """
    if nslots == 0 or factor % 2 == 0:
        return None
    par = np.zeros((len(degrees),) * nslots, dtype=int)
    for ax in range(nslots):
        shape = [1] * nslots
        shape[ax] = len(degrees)
        par = par + degrees.reshape(shape)
    sgn = np.where(par % 2 == 0, 1, -1).astype(object)
    return sgn.reshape((1,) * lead + sgn.shape + (1,) * (total_axes - nslots))


def _homogeneity_failures(space: GradedSpace, tensor: np.ndarray, shift_deg: int, lead: int) -> list[tuple]:
    deg = space.degrees
    bad = []
    nz = np.argwhere(np.vectorize(lambda x: x != 0, otypes=[bool])(tensor)) if tensor.size else []
    for idx in nz:
        out = idx[lead]
        ins = idx[lead + 1 :]
        if deg[out] != sum(deg[i] for i in ins) + shift_deg:
            bad.append(tuple(int(x) for x in idx))
    return bad


class _GradedSystem:
    _lead = 1  # number of axes before the output axis

    def __init__(self, space: GradedSpace, ops: dict[int, np.ndarray], arity_bound: int | None = None, shifted: bool = False):
        """``shifted`` systems carry operations of degree -1 in every arity instead of k - 2."""
        self.space = space
        K = max(ops) if ops else 1
        self.arity_bound = arity_bound if arity_bound is not None else K
        if ops and max(ops) > self.arity_bound:
            raise ValueError(f"operation of arity {max(ops)} above bound {self.arity_bound}")
        self.shifted = bool(shifted)
        self.ops: dict[int, np.ndarray] = {}
        N = space.total
        for k, t in ops.items():
            a = t if isinstance(t, np.ndarray) and t.dtype == object else rational_array(t)
            want = self._shape(k, N)
            if a.shape != want:
                raise ValueError(f"arity-{k} tensor has shape {a.shape}, expected {want}")
            bad = _homogeneity_failures(space, a, self.op_degree(k), self._lead)
            if bad:
                raise ValueError(f"arity-{k} operation is not homogeneous of degree {self.op_degree(k)}: entry {bad[0]}")
            a.setflags(write=False)
            self.ops[k] = a

    def _shape(self, k: int, N: int) -> tuple:
        raise NotImplementedError

    def op(self, k: int) -> np.ndarray:
        if k in self.ops:
            return self.ops[k]
        return zeros(self._shape(k, self.space.total))

    def op_degree(self, k: int) -> int:
        return -1 if self.shifted else k - 2

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        if self.space != other.space or self.shifted != other.shifted:
            return False
        keys = set(self.ops) | set(other.ops)
        return all(np.all(self.op(k) == other.op(k)) for k in keys)

    def is_zero(self) -> bool:
        return all(x == 0 for t in self.ops.values() for x in t.reshape(-1))


class GradedDendSystem(_GradedSystem):
    """Labelled operations mu_{k,[r]}: ``ops[k]`` has shape (k, N, N, ..., N)."""

    _lead = 1
    kind = "dend"

    def _shape(self, k, N):
        return (k, N) + (N,) * k

    def to_json(self) -> dict:
        return _system_json(self, labelled=True)

    def __repr__(self) -> str:
        return f"GradedDendSystem(dims={self.space.dims}, low={self.space.low}, K={self.arity_bound})"


class GradedAInfSystem(_GradedSystem):
    """Unlabelled operations mu_k: ``ops[k]`` has shape (N, N, ..., N)."""

    _lead = 0
    kind = "a_infinity"

    def _shape(self, k, N):
        return (N,) + (N,) * k

    def to_json(self) -> dict:
        return _system_json(self, labelled=False)

    def __repr__(self) -> str:
        return f"GradedAInfSystem(dims={self.space.dims}, low={self.space.low}, K={self.arity_bound})"


def _degree_blocks(space: GradedSpace, k: int) -> Iterable[tuple[int, ...]]:
    degs = [space.low + i for i in range(len(space.dims)) if space.dims[i]]
    return product(degs, repeat=k)


def _system_json(S: _GradedSystem, labelled: bool) -> dict:
    sp = S.space
    ops = []
    for k in sorted(S.ops):
        T = S.ops[k]
        labels = range(1, k + 1) if labelled else [None]
        for r in labels:
            comp = T[r - 1] if labelled else T
            for degs in _degree_blocks(sp, k):
                out_deg = sum(degs) + S.op_degree(k)
                if sp.dim(out_deg) == 0:
                    continue
                block = comp[np.ix_(list(sp.indices(out_deg)), *[list(sp.indices(d)) for d in degs])]
                if all(x == 0 for x in block.reshape(-1)):
                    continue
                entry = {"k": k, "deg_in": list(degs), "tensor": tensor_to_json(block)}
                if labelled:
                    entry["label"] = r
                ops.append(entry)
    out = sp.to_json()
    out["kind"] = S.kind
    if S.shifted:
        out["shifted"] = True
    out["arity_bound"] = S.arity_bound
    out["ops"] = ops
    return out


def system_to_json(S: _GradedSystem) -> dict:
    return _system_json(S, isinstance(S, GradedDendSystem))


def system_from_json(data: dict, labelled: bool | None = None):
    """Parse either kind of graded system; ``labelled`` defaults to whether labels appear."""
    sp = GradedSpace(tuple(data["dims"]), data.get("low", 0))
    K = data.get("arity_bound")
    entries = data.get("ops", [])
    if labelled is None:
        kind = data.get("kind")
        labelled = kind == "dend" if kind else any("label" in e for e in entries)
    shifted = bool(data.get("shifted"))
    N = sp.total
    ops: dict[int, np.ndarray] = {}
    for e in entries:
        k = e["k"]
        if k not in ops:
            ops[k] = zeros((k, N) + (N,) * k) if labelled else zeros((N,) + (N,) * k)
        degs = e["deg_in"]
        if len(degs) != k:
            raise ValueError(f"deg_in {degs} does not match arity {k}")
        out_deg = sum(degs) + (-1 if shifted else k - 2)
        idx = np.ix_(list(sp.indices(out_deg)), *[list(sp.indices(d)) for d in degs])
        block = rational_array(e["tensor"])
        target = ops[k][e["label"] - 1] if labelled else ops[k]
        if block.shape != target[idx].shape:
            raise ValueError(f"block for k={k}, deg_in={degs} has shape {block.shape}, expected {target[idx].shape}")
        target[idx] = target[idx] + block
    cls = GradedDendSystem if labelled else GradedAInfSystem
    return cls(sp, ops, K if K is not None else (max(ops) if ops else 1), shifted)


# -- identities ----------------------------------------------------------------


def _identity_arities(S: _GradedSystem, n_max: int | None) -> range:
    top = min(2 * S.arity_bound - 1, IDENTITY_ARITY_CAP)
    if n_max is not None:
        top = min(top, n_max)
    return range(1, top + 1)


def dend_infinity_residual(S: GradedDendSystem, n: int, *, shifted: bool = False) -> np.ndarray:
    """Left side of the identity with n inputs, shape (n, N, N^n).

    Unshifted sign: (-1)^(lambda (i+1) + i (|a_1| + ... + |a_{lambda-1}|)).
    Shifted (all operations of degree -1): (-1)^(|v_1| + ... + |v_{lambda-1}|).
    """
    deg = S.space.degrees
    N = S.space.total
    acc = zeros((n, N) + (N,) * n)
    for i in range(1, n + 1):
        j = n + 1 - i
        if i not in S.ops or j not in S.ops:
            continue
        for lam in range(1, j + 1):
            term = compose_components(S.ops[j], S.ops[i], lam)
            if shifted:
                mask = sign_mask(deg, lam - 1, n, 2)
                const = 1
            else:
                mask = sign_mask(deg, lam - 1, n, 2, factor=i)
                const = -1 if (lam * (i + 1)) % 2 else 1
            if mask is not None:
                term = term * mask
            acc = acc + term if const == 1 else acc - term
    return acc


def a_infinity_residual(S: GradedAInfSystem, n: int, *, shifted: bool = False) -> np.ndarray:
    deg = S.space.degrees
    N = S.space.total
    acc = zeros((N,) + (N,) * n)
    for i in range(1, n + 1):
        j = n + 1 - i
        if i not in S.ops or j not in S.ops:
            continue
        for lam in range(1, j + 1):
            term = insert_tensor(S.ops[j], S.ops[i], lam)
            if shifted:
                mask = sign_mask(deg, lam - 1, n, 1)
                const = 1
            else:
                mask = sign_mask(deg, lam - 1, n, 1, factor=i)
                const = -1 if (lam * (i + 1)) % 2 else 1
            if mask is not None:
                term = term * mask
            acc = acc + term if const == 1 else acc - term
    return acc


def check_dend_infinity(S: GradedDendSystem, n_max: int | None = None) -> CheckReport:
    """All labelled identities with n <= min(2K - 1, cap) inputs; one section per n."""
    rep = CheckReport("dend_infinity")
    for n in _identity_arities(S, n_max):
        sec = CheckReport(f"n={n}")
        res = dend_infinity_residual(S, n)
        for r in range(n):
            sec.add_residual("dend_infinity", res[r], n=n, label=r + 1)
        rep.add_section(str(n), sec)
    return rep


def check_dend_infinity_shifted(S: GradedDendSystem, n_max: int | None = None) -> CheckReport:
    """Identities of the degree-shifted presentation (all operations of degree -1)."""
    if not S.shifted:
        raise ValueError("shifted identities need degree -1 operations")
    rep = CheckReport("dend_infinity_shifted")
    for n in _identity_arities(S, n_max):
        sec = CheckReport(f"n={n}")
        res = dend_infinity_residual(S, n, shifted=True)
        for r in range(n):
            sec.add_residual("dend_infinity_shifted", res[r], n=n, label=r + 1)
        rep.add_section(str(n), sec)
    return rep


def check_a_infinity(S: GradedAInfSystem, n_max: int | None = None) -> CheckReport:
    rep = CheckReport("a_infinity")
    shifted = S.shifted
    for n in _identity_arities(S, n_max):
        sec = CheckReport(f"n={n}")
        sec.add_residual("a_infinity", a_infinity_residual(S, n, shifted=shifted), n=n)
        rep.add_section(str(n), sec)
    return rep


# -- suspension -------------------------------------------------------------------


def _koszul_inputs(degrees: np.ndarray, k: int, lead: int) -> np.ndarray:
    """(-1)^(sum_i (k - i)|x_i|) over k input axes: the sign of applying k odd maps."""
    N = len(degrees)
    par = np.zeros((N,) * k, dtype=int)
    for ax in range(k):
        shape = [1] * k
        shape[ax] = N
        par = par + (k - 1 - ax) * degrees.reshape(shape)
    sgn = np.where(par % 2 == 0, 1, -1).astype(object)
    return sgn.reshape((1,) * (lead + 1) + sgn.shape)


def _shift_ops(S: _GradedSystem, lead: int) -> dict[int, np.ndarray]:
    # rho_k(v_1, ..., v_k) = (-1)^(sum_i (k - i)|v_i|) s mu_k(s^-1 v_1, ..., s^-1 v_k),
    # |v_i| the shifted degrees.  Written with (-1)^(k(k-1)/2) in front, the same
    # map has the Koszul sign evaluated on the unshifted degrees instead.
    V = S.space.shifted(1)
    return {k: T * _koszul_inputs(V.degrees, k, lead) for k, T in S.ops.items()}


def shift(S: GradedDendSystem) -> GradedDendSystem:
    """Suspension: the labelled operations on V = sA, all of degree -1."""
    return GradedDendSystem(S.space.shifted(1), _shift_ops(S, 1), S.arity_bound, shifted=True)


def shift_a_infinity(S: GradedAInfSystem) -> GradedAInfSystem:
    return GradedAInfSystem(S.space.shifted(1), _shift_ops(S, 0), S.arity_bound, shifted=True)


def unshift(V: GradedDendSystem) -> GradedDendSystem:
    """Inverse of :func:`shift` (the sign mask squares to one)."""
    if not V.shifted:
        raise ValueError("unshift expects a shifted system")
    ops = {k: T * _koszul_inputs(V.space.degrees, k, 1) for k, T in V.ops.items()}
    return GradedDendSystem(V.space.shifted(-1), ops, V.arity_bound)


# -- constructions ------------------------------------------------------------------


def from_dendriform(A) -> GradedDendSystem:
    """A dendriform algebra as a system concentrated in degree zero."""
    return GradedDendSystem(GradedSpace((A.dim,)), {2: A.pi.components}, 2)


def embed_a_infinity(S: GradedAInfSystem, label: str = "first") -> GradedDendSystem:
    """mu_{k,[1]} = mu_k (or mu_{k,[k]} = mu_k with label="last"), other labels zero."""
    N = S.space.total
    ops = {}
    for k, T in S.ops.items():
        t = zeros((k, N) + (N,) * k)
        t[0 if label == "first" else k - 1] = T
        ops[k] = t
    return GradedDendSystem(S.space, ops, S.arity_bound)


def dend_to_a_infinity(S: GradedDendSystem, require_valid: bool = True) -> GradedAInfSystem:
    """mu_k = mu_{k,[1]} + ... + mu_{k,[k]}."""
    if require_valid:
        rep = check_dend_infinity(S)
        if not rep.ok:
            raise ValueError(f"input is not a Dend-infinity system: {rep.first_failure()}")
    ops = {k: T.sum(axis=0) for k, T in S.ops.items()}
    return GradedAInfSystem(S.space, ops, S.arity_bound)


def _merge_spaces(a: GradedSpace, b: GradedSpace) -> tuple[GradedSpace, list[int], list[int]]:
    lo = min(a.low, b.low)
    hi = max(a.high, b.high)
    dims = []
    ia: list[int] = []
    ib: list[int] = []
    pos = 0
    for deg in range(lo, hi + 1):
        da, db = a.dim(deg), b.dim(deg)
        ia.extend(range(pos, pos + da))
        ib.extend(range(pos + da, pos + da + db))
        pos += da + db
        dims.append(da + db)
    return GradedSpace(tuple(dims), lo), ia, ib


def direct_sum(S: GradedDendSystem, T: GradedDendSystem) -> GradedDendSystem:
    """Operations act blockwise; any mixed input gives zero."""
    sp, ia, ib = _merge_spaces(S.space, T.space)
    N = sp.total
    ops = {}
    for k in set(S.ops) | set(T.ops):
        t = zeros((k, N) + (N,) * k)
        for src, idx in ((S, ia), (T, ib)):
            if k in src.ops and idx:
                t[np.ix_(range(k), idx, *([idx] * k))] = src.ops[k]
        ops[k] = t
    return GradedDendSystem(sp, ops, max(S.arity_bound, T.arity_bound))


def random_dend_system(space: GradedSpace, K: int, rng, *, lo: int = -2, hi: int = 2, density: float = 1.0, shifted: bool = False) -> GradedDendSystem:
    """Homogeneous labelled operations with random small integer entries."""
    N = space.total
    deg = space.degrees
    od = (lambda k: -1) if shifted else (lambda k: k - 2)
    ops = {}
    for k in range(1, K + 1):
        t = zeros((k, N) + (N,) * k)
        for idx in np.ndindex(t.shape):
            out, ins = idx[1], idx[2:]
            if deg[out] == sum(deg[i] for i in ins) + od(k) and rng.random() < density:
                t[idx] = Fraction(rng.randint(lo, hi))
        ops[k] = t
    return GradedDendSystem(space, ops, K, shifted)
