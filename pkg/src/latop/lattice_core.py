"""Finite and symbolic lattices, the four monoidal products, derived lattices
and Hasse diagrams.

A :class:`Lattice` is a bundle of ``meet``/``join`` callables plus optional
carrier, extrema and rank.  Finite lattices list their elements; symbolic ones
(the integers, integer vectors) do not, and every operation that needs to
enumerate rejects them with :class:`InfiniteCarrier`.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from .errors import InfiniteCarrier, MissingExtremum

__all__ = [
    "Lattice",
    "ProductKind",
    "Adjoined",
    "ZERO",
    "ONE",
    "EMPTY_INTERVAL",
    "product",
    "coherence_mu",
    "associator",
    "derived_lattice",
    "covering_edges",
    "hasse_dot",
    "chain",
    "rhombus",
    "from_poset",
    "find_isomorphism",
    "lattice_law_failures",
]


class _Missing:
    def __repr__(self) -> str:
        return "MISSING"


MISSING: Any = _Missing()


@dataclass(frozen=True, order=True)
class Adjoined:
    """A distinguished element glued onto a carrier (adjoined 0, 1 or the empty interval)."""

    symbol: str

    def __repr__(self) -> str:
        return self.symbol

    __str__ = __repr__


ZERO = Adjoined("0")
ONE = Adjoined("1")
EMPTY_INTERVAL = Adjoined("[]")


class Lattice:
    """A lattice given by its operations.

    ``elements`` is a tuple for finite lattices and ``None`` for symbolic ones.
    ``leq`` defaults to ``meet(a, b) == a``.
    """

    def __init__(
        self,
        meet: Callable[[Any, Any], Any],
        join: Callable[[Any, Any], Any],
        elements: Optional[Iterable[Hashable]] = None,
        leq: Optional[Callable[[Any, Any], bool]] = None,
        bottom: Any = MISSING,
        top: Any = MISSING,
        rank: Optional[Callable[[Any], int]] = None,
        fmt: Callable[[Any], str] = str,
        name: str = "",
        contains: Optional[Callable[[Any], bool]] = None,
    ):
        self.meet = meet
        self.join = join
        self.elements = None if elements is None else tuple(elements)
        self._leq = leq
        self.bottom = bottom
        self.top = top
        self.rank = rank
        self.fmt = fmt
        self.name = name
        self._contains = contains
        self._members = None if self.elements is None else frozenset(self.elements)

    def leq(self, a, b) -> bool:
        if self._leq is not None:
            return self._leq(a, b)
        return self.meet(a, b) == a

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    @property
    def finite(self) -> bool:
        return self.elements is not None

    @property
    def has_bottom(self) -> bool:
        return self.bottom is not MISSING

    @property
    def has_top(self) -> bool:
        return self.top is not MISSING

    def __contains__(self, x) -> bool:
        if self._members is not None:
            return x in self._members
        if self._contains is not None:
            return self._contains(x)
        return True

    def __len__(self) -> int:
        return len(self.require_finite())

    def __iter__(self):
        return iter(self.require_finite())

    def require_finite(self) -> tuple:
        if self.elements is None:
            raise InfiniteCarrier(f"lattice {self.name or '?'} has no finite carrier")
        return self.elements

    def sorted_elements(self) -> list:
        return sorted(self.require_finite(), key=self.fmt)

    def __repr__(self) -> str:
        size = len(self.elements) if self.elements is not None else "inf"
        return f"Lattice({self.name or '?'}, size={size})"


def chain(k: int, name: str = "") -> Lattice:
    """The chain 0 < 1 < ... < k-1."""
    return Lattice(min, max, range(k), leq=lambda a, b: a <= b, bottom=0, top=k - 1,
                   rank=lambda a: a, name=name or f"chain{k}")


def rhombus() -> Lattice:
    """The four-element diamond with bottom E, atoms + and -, top 0."""
    order = {("E", x) for x in "E+-0"} | {(x, x) for x in "+-0"} | {("+", "0"), ("-", "0")}
    return from_poset("E+-0", lambda a, b: (a, b) in order, name="rhombus",
                      rank=lambda a: {"E": 0, "+": 1, "-": 1, "0": 2}[a])


def from_poset(elements: Iterable, leq: Callable[[Any, Any], bool], name: str = "",
               fmt: Callable[[Any], str] = str, rank=None) -> Lattice:
    """Build a finite lattice from a partial order; meet and join are tabulated.

    Raises ValueError if some pair lacks a meet or a join.
    """
    els = tuple(elements)
    meet_t: dict = {}
    join_t: dict = {}
    for a in els:
        for b in els:
            lows = [c for c in els if leq(c, a) and leq(c, b)]
            highs = [c for c in els if leq(a, c) and leq(b, c)]
            glb = [c for c in lows if all(leq(d, c) for d in lows)]
            lub = [c for c in highs if all(leq(c, d) for d in highs)]
            if len(glb) != 1 or len(lub) != 1:
                raise ValueError(f"not a lattice at {a!r}, {b!r}")
            meet_t[a, b] = glb[0]
            join_t[a, b] = lub[0]
    bottoms = [c for c in els if all(leq(c, d) for d in els)]
    tops = [c for c in els if all(leq(d, c) for d in els)]
    return Lattice(lambda a, b: meet_t[a, b], lambda a, b: join_t[a, b], els, leq=leq,
                   bottom=bottoms[0] if bottoms else MISSING, top=tops[0] if tops else MISSING,
                   fmt=fmt, name=name, rank=rank)


class ProductKind(enum.Enum):
    CARTESIAN = "cartesian"
    LOWER_TRUNCATED = "lower_truncated"
    UPPER_TRUNCATED = "upper_truncated"
    DISJOINT_UNION = "disjoint_union"


def _pair_fmt(P: Lattice, Q: Lattice):
    def fmt(x):
        if isinstance(x, Adjoined):
            return str(x)
        return f"({P.fmt(x[0])},{Q.fmt(x[1])})"
    return fmt


def product(kind: ProductKind | str, P: Lattice, Q: Lattice) -> Lattice:
    """One of the four monoidal products of two lattices.

    cartesian: pairs, componentwise operations.
    lower_truncated: (P-0) x (Q-0) plus an adjoined ZERO.
    upper_truncated: (P-1) x (Q-1) plus an adjoined ONE.
    disjoint_union: tagged (0, p) / (1, q) for non-extremal p, q, plus shared ZERO and ONE.
    """
    kind = ProductKind(kind)
    finite = P.finite and Q.finite
    name = f"{kind.value}({P.name},{Q.name})"

    if kind is ProductKind.CARTESIAN:
        els = itertools.product(P.elements, Q.elements) if finite else None
        bottom = (P.bottom, Q.bottom) if P.has_bottom and Q.has_bottom else MISSING
        top = (P.top, Q.top) if P.has_top and Q.has_top else MISSING
        rank = None
        if P.rank and Q.rank:
            rank = lambda x: P.rank(x[0]) + Q.rank(x[1])
        return Lattice(
            lambda a, b: (P.meet(a[0], b[0]), Q.meet(a[1], b[1])),
            lambda a, b: (P.join(a[0], b[0]), Q.join(a[1], b[1])),
            els, leq=lambda a, b: P.leq(a[0], b[0]) and Q.leq(a[1], b[1]),
            bottom=bottom, top=top, rank=rank, fmt=_pair_fmt(P, Q), name=name,
            contains=lambda x: isinstance(x, tuple) and len(x) == 2 and x[0] in P and x[1] in Q,
        )

    if kind is ProductKind.LOWER_TRUNCATED:
        if not (P.has_bottom and Q.has_bottom):
            raise MissingExtremum("lower truncated product needs bottoms on both factors")
        return _truncated(P, Q, P.bottom, Q.bottom, ZERO, dual=False, name=name)

    if kind is ProductKind.UPPER_TRUNCATED:
        if not (P.has_top and Q.has_top):
            raise MissingExtremum("upper truncated product needs tops on both factors")
        return _truncated(P, Q, P.top, Q.top, ONE, dual=True, name=name)

    if not (P.has_bottom and P.has_top and Q.has_bottom and Q.has_top):
        raise MissingExtremum("disjoint union needs bottom and top on both factors")
    return _disjoint_union(P, Q, name)


def _truncated(P, Q, p0, q0, special, dual: bool, name: str) -> Lattice:
    # dual=False: remove bottoms, adjoin ZERO; dual=True: remove tops, adjoin ONE.
    inner_p, outer_p = (P.join, P.meet) if dual else (P.meet, P.join)
    inner_q, outer_q = (Q.join, Q.meet) if dual else (Q.meet, Q.join)

    def collapse_op(a, b):
        # the operation that can hit the removed extremum
        if a == special or b == special:
            return special
        x, y = inner_p(a[0], b[0]), inner_q(a[1], b[1])
        if x == p0 or y == q0:
            return special
        return (x, y)

    def free_op(a, b):
        if a == special:
            return b
        if b == special:
            return a
        return (outer_p(a[0], b[0]), outer_q(a[1], b[1]))

    els = None
    if P.finite and Q.finite:
        els = [special] + [(p, q) for p in P.elements for q in Q.elements if p != p0 and q != q0]

    def leq(a, b):
        if dual:
            if b == special:
                return True
            if a == special:
                return False
        else:
            if a == special:
                return True
            if b == special:
                return False
        return P.leq(a[0], b[0]) and Q.leq(a[1], b[1])

    if dual:
        meet, join = free_op, collapse_op
        bottom = (P.bottom, Q.bottom) if P.has_bottom and Q.has_bottom else MISSING
        top = special
    else:
        meet, join = collapse_op, free_op
        bottom = special
        top = (P.top, Q.top) if P.has_top and Q.has_top else MISSING
    rank = None
    if P.rank and Q.rank and not dual:
        rank = lambda x: 0 if x == special else P.rank(x[0]) + Q.rank(x[1]) - 1
    return Lattice(meet, join, els, leq=leq, bottom=bottom, top=top, rank=rank,
                   fmt=_pair_fmt(P, Q), name=name)


def _disjoint_union(P: Lattice, Q: Lattice, name: str) -> Lattice:
    def inner(x):
        return x != P.bottom and x != P.top

    def innerq(x):
        return x != Q.bottom and x != Q.top

    def lift(side, v):
        L = P if side == 0 else Q
        if v == L.bottom:
            return ZERO
        if v == L.top:
            return ONE
        return (side, v)

    def meet(a, b):
        if a == ZERO or b == ZERO:
            return ZERO
        if a == ONE:
            return b
        if b == ONE:
            return a
        if a[0] != b[0]:
            return ZERO
        L = P if a[0] == 0 else Q
        return lift(a[0], L.meet(a[1], b[1]))

    def join(a, b):
        if a == ONE or b == ONE:
            return ONE
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        if a[0] != b[0]:
            return ONE
        L = P if a[0] == 0 else Q
        return lift(a[0], L.join(a[1], b[1]))

    def leq(a, b):
        if a == ZERO or b == ONE:
            return True
        if a == ONE or b == ZERO:
            return False
        if a[0] != b[0]:
            return False
        return (P if a[0] == 0 else Q).leq(a[1], b[1])

    els = None
    if P.finite and Q.finite:
        els = [ZERO, ONE] + [(0, p) for p in P.elements if inner(p)] + \
              [(1, q) for q in Q.elements if innerq(q)]

    def fmt(x):
        if isinstance(x, Adjoined):
            return str(x)
        return ("" if x[0] == 0 else "'") + (P if x[0] == 0 else Q).fmt(x[1])

    return Lattice(meet, join, els, leq=leq, bottom=ZERO, top=ONE, fmt=fmt, name=name)


def coherence_mu(P: Lattice, Q: Lattice, pair) -> Any:
    """The lax structure map P x Q -> P (lower-truncated) Q: (p, q) if both are nonzero, else 0."""
    p, q = pair
    if not (P.has_bottom and Q.has_bottom):
        raise MissingExtremum("coherence map needs bottoms")
    if p != P.bottom and q != Q.bottom:
        return (p, q)
    return ZERO


def associator(x) -> Any:
    """((p, q), r) -> (p, (q, r)) on nested pairs; adjoined extrema are fixed."""
    if isinstance(x, Adjoined):
        return x
    (p, q), r = x
    if isinstance(p, Adjoined) or isinstance(q, Adjoined):
        return x
    return (p, (q, r))


def derived_lattice(kind: str, L: Lattice) -> Lattice:
    """Interval lattice, lattice of order ideals, or the dual lattice.

    The interval lattice is ordered by inclusion and carries an adjoined empty
    interval ``EMPTY_INTERVAL`` as bottom, so that the meet of disjoint intervals exists.
    """
    if kind == "dual":
        return Lattice(L.join, L.meet, L.elements, leq=lambda a, b: L.leq(b, a),
                       bottom=L.top, top=L.bottom, fmt=L.fmt, name=f"dual({L.name})",
                       contains=L._contains)
    els = L.require_finite()
    if kind == "interval":
        ivs = [(a, b) for a in els for b in els if L.leq(a, b)]

        def meet(x, y):
            if x == EMPTY_INTERVAL or y == EMPTY_INTERVAL:
                return EMPTY_INTERVAL
            lo, hi = L.join(x[0], y[0]), L.meet(x[1], y[1])
            return (lo, hi) if L.leq(lo, hi) else EMPTY_INTERVAL

        def join(x, y):
            if x == EMPTY_INTERVAL:
                return y
            if y == EMPTY_INTERVAL:
                return x
            return (L.meet(x[0], y[0]), L.join(x[1], y[1]))

        def leq(x, y):
            if x == EMPTY_INTERVAL:
                return True
            if y == EMPTY_INTERVAL:
                return False
            return L.leq(y[0], x[0]) and L.leq(x[1], y[1])

        top = (L.bottom, L.top) if L.has_bottom and L.has_top else MISSING

        def fmt(x):
            return "[]" if x == EMPTY_INTERVAL else f"[{L.fmt(x[0])};{L.fmt(x[1])}]"

        return Lattice(meet, join, [EMPTY_INTERVAL] + ivs, leq=leq, bottom=EMPTY_INTERVAL,
                       top=top, fmt=fmt, name=f"Int({L.name})")
    if kind == "order_ideal":
        ideals = order_ideals(L)

        def fmt(x):
            return "{" + ",".join(sorted(L.fmt(e) for e in x)) + "}"

        return Lattice(lambda a, b: a & b, lambda a, b: a | b, ideals,
                       leq=lambda a, b: a <= b, bottom=frozenset(), top=frozenset(els),
                       rank=len, fmt=fmt, name=f"Ord({L.name})")
    raise ValueError(f"unknown derived lattice kind {kind!r}")


def order_ideals(L: Lattice) -> list[frozenset]:
    """All down-closed subsets of a finite poset, by breadth-first extension."""
    els = L.require_finite()
    below = {x: frozenset(y for y in els if L.leq(y, x) and y != x) for x in els}
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in els:
                if x not in ideal and below[x] <= ideal:
                    bigger = ideal | {x}
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(L.fmt(e) for e in s)))


def covering_edges(L: Lattice) -> list[tuple]:
    """Pairs (a, b) with a < b and nothing strictly between; O(n^3) scan."""
    els = L.sorted_elements()
    lt = {(a, b) for a in els for b in els if a != b and L.leq(a, b)}
    edges = []
    for a, b in sorted(lt, key=lambda e: (L.fmt(e[0]), L.fmt(e[1]))):
        if not any((a, c) in lt and (c, b) in lt for c in els):
            edges.append((a, b))
    return edges


def hasse_dot(L: Lattice, name: str = "hasse") -> str:
    """DOT text with one sorted ``a -- b`` line per cover."""
    lines = sorted(f'  "{L.fmt(a)}" -- "{L.fmt(b)}";' for a, b in covering_edges(L))
    nodes = sorted(f'  "{L.fmt(x)}";' for x in L.require_finite())
    return "graph " + _dot_id(name) + " {\n" + "\n".join(nodes + lines) + "\n}\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', "'") + '"'


def find_isomorphism(L: Lattice, M: Lattice) -> Optional[dict]:
    """An order isomorphism L -> M, or None (small finite lattices only)."""
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    if len(L) != len(M):
        return None
    g1, g2 = nx.DiGraph(), nx.DiGraph()
    g1.add_nodes_from(range(len(L)))
    g2.add_nodes_from(range(len(M)))
    li, mi = list(L.elements), list(M.elements)
    g1.add_edges_from((li.index(a), li.index(b)) for a, b in covering_edges(L))
    g2.add_edges_from((mi.index(a), mi.index(b)) for a, b in covering_edges(M))
    matcher = DiGraphMatcher(g1, g2)
    if not matcher.is_isomorphic():
        return None
    return {li[k]: mi[v] for k, v in matcher.mapping.items()}


def lattice_law_failures(L: Lattice, sample: Optional[Sequence] = None, limit: int = 5) -> list[str]:
    """Check the lattice identities on all triples of ``sample`` (default: the carrier)."""
    els = list(sample if sample is not None else L.require_finite())
    bad: list[str] = []
    m, j = L.meet, L.join
    for a in els:
        if m(a, a) != a or j(a, a) != a:
            bad.append(f"idempotence at {L.fmt(a)}")
        for b in els:
            if m(a, b) != m(b, a) or j(a, b) != j(b, a):
                bad.append(f"commutativity at {L.fmt(a)},{L.fmt(b)}")
            if m(a, j(a, b)) != a or j(a, m(a, b)) != a:
                bad.append(f"absorption at {L.fmt(a)},{L.fmt(b)}")
            if L.leq(a, b) != (m(a, b) == a):
                bad.append(f"order/meet mismatch at {L.fmt(a)},{L.fmt(b)}")
            if len(bad) >= limit:
                return bad
    if len(els) <= 40:
        for a, b, c in itertools.product(els, repeat=3):
            if m(m(a, b), c) != m(a, m(b, c)) or j(j(a, b), c) != j(a, j(b, c)):
                bad.append(f"associativity at {L.fmt(a)},{L.fmt(b)},{L.fmt(c)}")
                if len(bad) >= limit:
                    return bad
    if L.rank is not None and L.finite:
        for a, b in covering_edges(L):
            if L.rank(b) != L.rank(a) + 1:
                bad.append(f"rank jump at {L.fmt(a)} < {L.fmt(b)}")
                break
    return bad
