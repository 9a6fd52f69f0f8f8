"""The (degree, inversion) operad built from binary trees with internal labels a and b.

inv(T) counts pairs (v1, v2) of internal vertices with v1 labelled b, v2
labelled a and v2 below v1.  Grafting T'' (degree e) into a leaf of T' adds
e times the number of b-ancestors of that leaf, so the maximum in the
composition only needs, for each (arity, d, v), the largest number of
b-ancestors of a leaf over realizing trees.  Leaf labels are free (the
underlying free operad is symmetric), so any leaf may serve as leaf i.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

from ..errors import ArityTooLarge, IndexOutOfRange
from ..lattice_core import Lattice
from ..operad_core import At, Operad

# m + n - 1 above this raises ArityTooLarge
BUDGET = 8

LTree = Optional[tuple]  # None = leaf, (label, left, right)


def labelled_trees(n: int) -> Iterator[LTree]:
    if n == 1:
        yield None
        return
    for k in range(1, n):
        for left in labelled_trees(k):
            for right in labelled_trees(n - k):
                yield ("a", left, right)
                yield ("b", left, right)


def degree(t: LTree) -> int:
    return 0 if t is None else (t[0] == "a") + degree(t[1]) + degree(t[2])


def inv(t: LTree) -> int:
    def rec(node, b_above):
        if node is None:
            return 0
        here = b_above if node[0] == "a" else 0
        nb = b_above + (node[0] == "b")
        return here + rec(node[1], nb) + rec(node[2], nb)

    return rec(t, 0)


def leaf_b_ancestors(t: LTree) -> list[int]:
    out: list[int] = []

    def rec(node, b):
        if node is None:
            out.append(b)
            return
        nb = b + (node[0] == "b")
        rec(node[1], nb)
        rec(node[2], nb)

    rec(t, 0)
    return out


def graft(s: LTree, i: int, t: LTree) -> LTree:
    def rec(node, i):
        if node is None:
            return (t, i - 1) if i == 1 else (None, i - 1)
        left, i = rec(node[1], i)
        right, i = rec(node[2], i)
        return (node[0], left, right), i

    return rec(s, i)[0]


@lru_cache(maxsize=None)
def _profile(n: int) -> dict:
    """(d, v) -> max b-ancestors of a leaf, over trees with n leaves."""
    best: dict = {}
    for t in labelled_trees(n):
        key = (degree(t), inv(t))
        b = max(leaf_b_ancestors(t))
        if best.get(key, -1) < b:
            best[key] = b
    return best


def component_pairs(n: int) -> list[tuple[int, int]]:
    return [(d, v) for d in range(n) for v in range((n - d - 1) * d + 1)]


def inv_compose(p: At, i: int, q: At) -> At:
    m, n = p.arity, q.arity
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"slot {i} outside 1..{m}")
    if m + n - 1 > BUDGET:
        raise ArityTooLarge(f"arity {m + n - 1} exceeds the enumeration budget {BUDGET}")
    (d, v), (e, w) = p.value, q.value
    b = _profile(m)[(d, v)]
    return At(m + n - 1, (d + e, v + w + e * b))


def _fmt(x: At) -> str:
    return f"{x.value[0]},{x.value[1]}@{x.arity}"


def _parse(text: str) -> At:
    body, n = text.split("@")
    d, v = (int(t) for t in body.split(","))
    return At(int(n), (d, v))


def inversion_operad() -> Operad:
    def component(n):
        els = [At(n, dv) for dv in component_pairs(n)]
        return Lattice(min, max, els, leq=lambda a, b: a <= b, bottom=els[0], top=els[-1],
                       fmt=_fmt, name=f"Finv({n})")

    return Operad("inv", inv_compose, component, lambda x: x.arity, fmt=_fmt, parse=_parse,
                  act=lambda x, s: x, unit=At(1, (0, 0)), name="F^inv")
