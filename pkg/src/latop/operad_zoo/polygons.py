"""Face lattices of polygons with the gluing maps, and the subdivision operad PT.

Faces of the n-gon are ('v', i) and ('e', j) for i, j in Z_n plus the adjoined
ZERO and ONE; v_i lies on e_j iff i = j - 1 or i = j.  PT(n) consists of the
sets of pairwise non-crossing diagonals of the (n+1)-gon with vertices 0..n,
ordered by reverse inclusion, with an extra bottom E.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from ..errors import IndexOutOfRange, PolygonMismatch
from ..lattice_core import ONE, ZERO, Adjoined, Lattice, from_poset, product
from ..operad_core import At, Operad, Special
from .tamari import Tree, leaves

E = "E"


# ------------------------------------------------------------- polygon faces

def polygon_faces(n: int) -> list:
    return [ZERO] + [("v", i) for i in range(n)] + [("e", j) for j in range(n)] + [ONE]


def fmt_face(x) -> str:
    if isinstance(x, Adjoined):
        return str(x)
    if isinstance(x[0], int):  # tagged by a disjoint union
        return fmt_face(x[1]) + ("'" if x[0] else "")
    return f"{x[0]}{x[1]}"


@lru_cache(maxsize=None)
def polygon_lattice(n: int) -> Lattice:
    def leq(x, y):
        if x == y or x == ZERO or y == ONE:
            return True
        if x == ONE or y == ZERO:
            return False
        return x[0] == "v" and y[0] == "e" and x[1] in ((y[1] - 1) % n, y[1])

    return from_poset(polygon_faces(n), leq, name=f"P({n})", fmt=fmt_face)


def glued_source(n: int, m: int) -> Lattice:
    """P(n) disjoint-union P(m): tags 0 and 1 mark the two polygons."""
    return product("disjoint_union", polygon_lattice(n), polygon_lattice(m))


def polygon_compose(n: int, a: int, b: int, m: int, t):
    """Image of a face of P(n) (tag 0) or P(m) (tag 1) in P(n+m-2) under gluing e_a to e'_b."""
    if not (0 <= a < n and 0 <= b < m):
        raise IndexOutOfRange(f"edge indices {a} (mod {n}) and {b} (mod {m})")
    N = n + m - 2
    if t in (ZERO, ONE):
        return t
    side, (kind, j) = t
    if side == 0:
        k = (j - a) % n
        if kind == "e":
            return ONE if k == 0 else ("e", (a + k - n) % N)
        if k == n - 1:
            return ("v", (a - 1) % N)
        if k == 0:
            return ("v", (a + m - 2) % N)
        return ("v", (a + k - n) % N)
    k = (j - b) % m
    if kind == "e":
        return ONE if k == 0 else ("e", (a - 1 + k) % N)
    if k == 0:
        return ("v", (a - 1) % N)
    if k == m - 1:
        return ("v", (a + m - 2) % N)
    return ("v", (a - 1 + k) % N)


# -------------------------------------------------------------- subdivisions

def _to_interval(d):
    a, b = d
    return (a + 1, b)


def _to_diag(iv):
    l, r = iv
    return (l - 1, r)


def diagonals(n: int) -> list[tuple[int, int]]:
    """Diagonals (a, b) of the (n+1)-gon, a < b, excluding sides and the root side (0, n)."""
    return [(a, b) for a in range(n + 1) for b in range(a + 2, n + 1) if (a, b) != (0, n)]


def crossing(d1, d2) -> bool:
    (a, b), (c, d) = sorted((d1, d2))
    return a < c < b < d


def non_crossing(ds) -> bool:
    return all(not crossing(x, y) for x, y in itertools.combinations(ds, 2))


@lru_cache(maxsize=None)
def subdivisions(n: int) -> tuple:
    ds = diagonals(n)
    out = []
    for k in range(len(ds) + 1):
        for combo in itertools.combinations(ds, k):
            if non_crossing(combo):
                out.append(At(n, frozenset(combo)))
    return tuple(out)


def subdivision_meet(x, y):
    if isinstance(x, Special) or isinstance(y, Special):
        return Special(E, x.arity)
    if x.arity != y.arity:
        raise PolygonMismatch(f"{x.arity + 1}-gon vs {y.arity + 1}-gon")
    u = x.value | y.value
    return At(x.arity, u) if non_crossing(u) else Special(E, x.arity)


def subdivision_join(x, y):
    if isinstance(x, Special):
        return y
    if isinstance(y, Special):
        return x
    if x.arity != y.arity:
        raise PolygonMismatch(f"{x.arity + 1}-gon vs {y.arity + 1}-gon")
    return At(x.arity, x.value & y.value)


def subdivision_leq(x, y) -> bool:
    if isinstance(x, Special):
        return True
    if isinstance(y, Special):
        return False
    return y.value <= x.value


def subdivision_compose(t, i: int, s):
    """Graft s into leaf i of t, read on leaf intervals [a+1, b] of diagonals (a, b)."""
    n = t.arity
    m = s.arity
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"slot {i} outside 1..{n}")
    if isinstance(t, Special) or isinstance(s, Special):
        return Special(E, n + m - 1)
    out = set()
    for l, r in map(_to_interval, t.value):
        out.add((l if l <= i else l + m - 1, r + m - 1 if r >= i else r))
    for l, r in map(_to_interval, s.value):
        out.add((l + i - 1, r + i - 1))
    if m >= 2 and n >= 2:
        out.add((i, i + m - 1))
    return At(n + m - 1, frozenset(_to_diag(iv) for iv in out))


def tree_to_subdivision(t: Tree) -> At:
    """Binary tree -> triangulation: one diagonal per non-root internal vertex."""
    n = leaves(t)
    out = set()

    def rec(node, start):
        if node is None:
            return start + 1
        mid = rec(node[0], start)
        end = rec(node[1], mid)
        if (start, end - 1) != (1, n):
            out.add(_to_diag((start, end - 1)))
        return end

    rec(t, 1)
    return At(n, frozenset(out))


def subdivision_to_tree(x: At):
    """Reduced planar tree as nested tuples; a leaf is None."""
    n = x.arity
    ivs = sorted(map(_to_interval, x.value), key=lambda iv: (iv[0], -iv[1]))

    def build(l, r):
        kids, k = [], l
        inner = [iv for iv in ivs if l <= iv[0] and iv[1] <= r and iv != (l, r)]
        while k <= r:
            top = [iv for iv in inner if iv[0] == k and not any(o[0] <= iv[0] and iv[1] <= o[1] and o != iv
                                                              for o in inner)]
            if top:
                lo, hi = top[0]
                kids.append(build(lo, hi))
                k = hi + 1
            else:
                kids.append(None)
                k += 1
        return tuple(kids)

    return None if n == 1 else build(1, n)


def fmt_subdivision(x) -> str:
    if isinstance(x, Special):
        return x.symbol
    return "[" + ",".join(f"{a}-{b}" for a, b in sorted(x.value)) + f"]@{x.arity}"


def parse_subdivision(text: str):
    if text == E or text.startswith(E + "@"):
        return Special(E, int(text.split("@")[1]) if "@" in text else None)
    body, _, n = text.partition("@")
    body = body.strip("[]")
    ds = frozenset(tuple(int(v) for v in tok.split("-")) for tok in body.split(",") if tok)
    n = int(n)
    if not set(ds) <= set(diagonals(n)) or not non_crossing(ds):
        raise ValueError(f"{text} is not a subdivision of the {n + 1}-gon")
    return At(n, ds)


def subdivision_operad() -> Operad:
    def component(n):
        els = (Special(E, n),) + subdivisions(n)
        return Lattice(subdivision_meet, subdivision_join, els, leq=subdivision_leq, bottom=els[0],
                       top=At(n, frozenset()), fmt=fmt_subdivision, name=f"PT({n})")

    return Operad("pt", subdivision_compose, component, lambda x: x.arity, fmt=fmt_subdivision,
                  parse=parse_subdivision, unit=At(1, frozenset()), name="PT")
