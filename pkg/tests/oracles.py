"""Loop-based reference implementations sharing no code with ``dendro``.

Everything works on plain dicts and nested lists of Fractions so a bug in the
tensor substrate cannot hide itself.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def as_dict(components) -> dict[tuple, Fraction]:
    """Labelled tensor (label, out, in...) to {(r, out, ins...): value}, nonzero only, r from 1."""
    out = {}

    def walk(node, idx):
        if isinstance(node, (list, tuple)) or hasattr(node, "shape") and getattr(node, "ndim", 0) > 0:
            for k in range(len(node)):
                walk(node[k], idx + (k,))
        else:
            v = Fraction(node)
            if v:
                out[(idx[0] + 1,) + idx[1:]] = v

    walk(components, ())
    return out


def route(m: int, i: int, n: int, r: int) -> tuple[int, tuple[int, ...]]:
    """Label of the outer map and labels of the inner one for output label r."""
    if i <= r <= i + n - 1:
        return i, (r - i + 1,)
    if r < i:
        return r, tuple(range(1, n + 1))
    return r - n + 1, tuple(range(1, n + 1))


def partial(f: dict, m: int, g: dict, n: int, i: int, dim: int) -> dict:
    """(f o_i g)[r](x_1, ..., x_{m+n-1}) on basis inputs, straight from the routing rule."""
    out: dict[tuple, Fraction] = {}
    k = m + n - 1
    for r in range(1, k + 1):
        r0, inner = route(m, i, n, r)
        for xs in product(range(dim), repeat=k):
            head, mid, tail = xs[: i - 1], xs[i - 1 : i - 1 + n], xs[i - 1 + n :]
            acc: dict[int, Fraction] = {}
            for s in inner:
                for y in range(dim):
                    c = g.get((s, y) + mid, 0)
                    if c:
                        for o in range(dim):
                            c2 = f.get((r0, o) + head + (y,) + tail, 0)
                            if c2:
                                acc[o] = acc.get(o, 0) + c * c2
            for o, v in acc.items():
                if v:
                    out[(r, o) + xs] = v
    return out


def dendriform_ok(dim: int, prec: dict, succ: dict) -> bool:
    """The three identities via explicit triple loops; products as {(a, b, out): c}."""

    def mul(t, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for o in range(dim):
                    c = t.get((a, b, o), 0)
                    if c:
                        out[o] = out.get(o, 0) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    def add(*xs):
        out: dict[int, Fraction] = {}
        for x in xs:
            for k, v in x.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    star = {k: prec.get(k, 0) + succ.get(k, 0) for k in set(prec) | set(succ)}
    for a, b, c in product(range(dim), repeat=3):
        x, y, z = {a: Fraction(1)}, {b: Fraction(1)}, {c: Fraction(1)}
        if mul(prec, mul(prec, x, y), z) != mul(prec, x, mul(star, y, z)):
            return False
        if mul(prec, mul(succ, x, y), z) != mul(succ, x, mul(prec, y, z)):
            return False
        if mul(succ, mul(star, x, y), z) != mul(succ, x, mul(succ, y, z)):
            return False
    return True


def product_dict(tensor) -> dict:
    """Structure constants t[a][b][out] as a dict."""
    out = {}
    for a, row in enumerate(tensor):
        for b, col in enumerate(row):
            for o, v in enumerate(col):
                if Fraction(v):
                    out[(a, b, o)] = Fraction(v)
    return out


def rref_rank(rows: list[list[Fraction]]) -> int:
    """Rank by plain Gaussian elimination over Fractions."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
