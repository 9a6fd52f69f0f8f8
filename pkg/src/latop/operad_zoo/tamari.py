"""The Tamari operad on weight sequences of planar binary trees.

Trees are ``None`` (a leaf) or a pair ``(left, right)``.  The weight sequence
lists, in in-order, the number of leaves of each internal node's left
subtree, followed by the total leaf count n.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

from ..errors import IndexOutOfRange, LengthMismatch, NotAWeightSequence, NotInL
from ..lattice_core import Lattice
from ..operad_core import Operad

Tree = Optional[tuple]


def leaves(t: Tree) -> int:
    return 1 if t is None else leaves(t[0]) + leaves(t[1])


def trees(n: int) -> Iterator[Tree]:
    """All planar binary trees with n leaves."""
    if n == 1:
        yield None
        return
    for k in range(1, n):
        for left in trees(k):
            for right in trees(n - k):
                yield (left, right)


def graft(s: Tree, i: int, t: Tree) -> Tree:
    """Replace the i-th leaf of s by t."""
    def rec(node, i):
        if node is None:
            return (t, i - 1) if i == 1 else (None, i - 1)
        left, i = rec(node[0], i)
        right, i = rec(node[1], i)
        return (left, right), i

    if not 1 <= i <= leaves(s):
        raise IndexOutOfRange(f"leaf {i} outside 1..{leaves(s)}")
    return rec(s, i)[0]


def tree_to_weights(t: Tree) -> tuple[int, ...]:
    out: list[int] = []

    def rec(node):
        if node is None:
            return 1
        k = rec(node[0])
        out.append(k)
        return k + rec(node[1])

    n = rec(t)
    return tuple(out) + (n,)


def is_weight_sequence(w) -> bool:
    n = len(w)
    if n == 0 or w[-1] != n or any(not 1 <= w[j - 1] <= j for j in range(1, n + 1)):
        return False
    for i in range(1, n):
        for j in range(max(1, i - w[i - 1] + 1), i):
            if i - j > w[i - 1] - w[j - 1]:
                return False
    return True


def weights_to_tree(w) -> Tree:
    """Inverse of tree_to_weights; the root sits at the last position r < n with w_r = r."""
    w = tuple(w)
    if not is_weight_sequence(w):
        raise NotAWeightSequence(f"{w} violates the slope condition")
    return _decode(w)


def _decode(w: tuple) -> Tree:
    n = len(w)
    if n == 1:
        return None
    r = max(p for p in range(1, n) if w[p - 1] == p)
    return (_decode(w[:r]), _decode(w[r:n - 1] + (n - r,)))


def split(w) -> tuple[tuple, tuple]:
    """Weight sequences of the root's left and right subtrees."""
    t = weights_to_tree(w)
    return tree_to_weights(t[0]), tree_to_weights(t[1])


def tamari_compose(u: tuple, i: int, v: tuple) -> tuple:
    m, n = len(u), len(v)
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"slot {i} outside 1..{m}")
    tail = tuple(u[j - 1] + n - 1 if u[j - 1] >= j - i + 1 else u[j - 1] for j in range(i, m + 1))
    return tuple(u[:i - 1]) + tuple(v[:-1]) + tail


def in_L(u) -> bool:
    n = len(u)
    return n >= 1 and u[0] == 1 and u[-1] == n and all(1 <= u[j - 1] <= j for j in range(1, n + 1))


def normalize_h(u) -> tuple[int, ...]:
    """Least weight sequence above u in the product order."""
    u = tuple(u)
    if not in_L(u):
        raise NotInL(f"{u} is not of the form (1, w_2, .., n) with 1 <= w_j <= j")
    z = list(u)
    for i in range(1, len(u) + 1):
        best = u[i - 1]
        for j in range(max(1, i - u[i - 1] + 1), i):
            best = max(best, z[j - 1] + i - j)
        z[i - 1] = best
    return tuple(z)


def tamari_meet(u, v) -> tuple:
    if len(u) != len(v):
        raise LengthMismatch(f"{len(u)} != {len(v)}")
    return tuple(map(min, u, v))


def tamari_join(u, v) -> tuple:
    if len(u) != len(v):
        raise LengthMismatch(f"{len(u)} != {len(v)}")
    return normalize_h(tuple(map(max, u, v)))


@lru_cache(maxsize=None)
def weight_sequences(n: int) -> tuple[tuple, ...]:
    return tuple(sorted(tree_to_weights(t) for t in trees(n)))


def rotation_covers(t: Tree) -> list[Tree]:
    """Trees obtained by one right rotation ((A,B),C) -> (A,(B,C)) anywhere in t."""
    out = []
    if t is None:
        return out
    left, right = t
    if left is not None:
        out.append((left[0], (left[1], right)))
    out.extend((x, right) for x in rotation_covers(left))
    out.extend((left, x) for x in rotation_covers(right))
    return out


def _fmt(w) -> str:
    return ",".join(map(str, w))


def _parse(text: str) -> tuple:
    w = tuple(int(t) for t in text.split(","))
    if not is_weight_sequence(w):
        raise NotAWeightSequence(f"{w} violates the slope condition")
    return w


def tamari() -> Operad:
    def component(n):
        return Lattice(tamari_meet, tamari_join, weight_sequences(n),
                       leq=lambda a, b: all(x <= y for x, y in zip(a, b)),
                       bottom=(1,) * (n - 1) + (n,) if n > 1 else (1,),
                       top=tuple(range(1, n + 1)), fmt=_fmt, name=f"W({n})")

    return Operad("tamari", tamari_compose, component, len, fmt=_fmt, parse=_parse, unit=(1,),
                  name="Tamari")
