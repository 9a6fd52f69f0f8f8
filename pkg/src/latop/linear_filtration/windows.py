"""Finite windows onto linear operads and onto index lattice operads.

A ``LinearOperadWindow`` lists a basis of P(n) for n <= nmax and the partial
compositions of basis elements.  It can be the linearization of a set operad
from the zoo, or a free operad on declared generators with a planar-tree
monomial basis.  An ``IndexWindow`` is a finite, meet/join-closed piece of
each component of an index lattice operad.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .. import _util
from ..errors import IndexOutOfRange, OutOfWindow
from ..lattice_core import Lattice
from ..operad_core import At, Operad
from .subspace import Subspace, Vector, fmt_vector

ONE = Fraction(1)


class LinearOperadWindow:
    """Basis labels per arity with structure constants for o_i and an optional S_n action.

    ``compose(a, i, b)`` returns a basis label or a mapping label -> coefficient.
    ``act(label, sigma)`` returns a basis label (permutation actions only).
    """

    def __init__(self, name: str, basis: Mapping[int, Sequence], compose: Callable[[Any, int, Any], Any],
                 arity: Callable[[Any], int], *, act: Optional[Callable[[Any, Sequence[int]], Any]] = None,
                 unit: Any = None, fmt: Callable[[Any], str] = str):
        self.name = name
        self.basis = {n: tuple(b) for n, b in basis.items()}
        self.nmax = max(self.basis)
        self.index = {n: {x: k for k, x in enumerate(b)} for n, b in self.basis.items()}
        self._compose = compose
        self.arity = arity
        self._act = act
        self.unit = unit
        self.fmt = fmt
        self._products: dict = {}

    @property
    def symmetric(self) -> bool:
        return self._act is not None

    def arities(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def column(self, n: int, label) -> int:
        try:
            return self.index[n][label]
        except KeyError:
            raise OutOfWindow(f"{self.fmt(label)} is not a basis element of {self.name}({n})") from None

    def vec(self, n: int, label) -> Vector:
        return {self.column(n, label): ONE}

    # compositions

    def compose_basis(self, m: int, a: int, i: int, n: int, b: int) -> Vector:
        key = (m, a, i, n, b)
        got = self._products.get(key)
        if got is None:
            t = m + n - 1
            if t not in self.basis:
                raise OutOfWindow(f"arity {t} exceeds the window of {self.name}")
            if not 1 <= i <= m:
                raise IndexOutOfRange(f"slot {i} outside 1..{m}")
            out = self._compose(self.basis[m][a], i, self.basis[n][b])
            if isinstance(out, Mapping):
                got = {}
                for lab, c in out.items():
                    if c:
                        col = self.column(t, lab)
                        got[col] = got.get(col, 0) + Fraction(c)
                got = {k: c for k, c in got.items() if c}
            else:
                got = {self.column(t, out): ONE}
            self._products[key] = got
        return got

    def compose_vectors(self, m: int, u: Mapping[int, Fraction], i: int, n: int, v: Mapping[int, Fraction]) -> Vector:
        out: dict[int, Fraction] = {}
        for a, x in u.items():
            for b, y in v.items():
                for k, z in self.compose_basis(m, a, i, n, b).items():
                    w = out.get(k, 0) + x * y * z
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def compose_subspaces(self, V: Subspace, i: int, U: Subspace) -> Subspace:
        """Span of all products a o_i b, a in V, b in U."""
        m, n = V.arity, U.arity
        t = m + n - 1
        if t not in self.basis:
            raise OutOfWindow(f"arity {t} exceeds the window of {self.name}")
        if not 1 <= i <= m:
            raise IndexOutOfRange(f"slot {i} outside 1..{m}")
        if V.is_zero() or U.is_zero():
            return self.zero(t)
        if V._coords is not None and U._coords is not None:
            vecs = [self.compose_basis(m, a, i, n, b) for a in V._coords for b in U._coords]
        else:
            vecs = [self.compose_vectors(m, u, i, n, w) for u in V.basis() for w in U.basis()]
        return Subspace.span(self.dim(t), vecs, t)

    # symmetric action

    def act_basis(self, n: int, col: int, sigma: Sequence[int]) -> int:
        if self._act is None:
            raise TypeError(f"{self.name} carries no symmetric action")
        return self.column(n, self._act(self.basis[n][col], tuple(sigma)))

    def act_vector(self, n: int, v: Mapping[int, Fraction], sigma: Sequence[int]) -> Vector:
        return {self.act_basis(n, k, sigma): x for k, x in v.items()}

    def act_subspace(self, V: Subspace, sigma: Sequence[int]) -> Subspace:
        n = V.arity
        if V._coords is not None:
            return Subspace.coordinate(V.dim, (self.act_basis(n, c, sigma) for c in V._coords), n)
        return Subspace.span(V.dim, (self.act_vector(n, v, sigma) for v in V.basis()), n)

    # subspace constructors

    def zero(self, n: int) -> Subspace:
        return Subspace.zero(self.dim(n), n)

    def full(self, n: int) -> Subspace:
        return Subspace.full(self.dim(n), n)

    def span(self, n: int, vectors: Iterable[Mapping[int, object]]) -> Subspace:
        return Subspace.span(self.dim(n), vectors, n)

    def span_labels(self, n: int, labels: Iterable) -> Subspace:
        return Subspace.coordinate(self.dim(n), (self.column(n, x) for x in labels), n)

    def fmt_vector(self, n: int, v: Mapping[int, Fraction]) -> str:
        return fmt_vector(v, [self.fmt(x) for x in self.basis[n]])

    def __repr__(self) -> str:
        return f"LinearOperadWindow({self.name}, nmax={self.nmax})"


def linearize(op: Operad, nmax: int, window: Optional[Callable[[int], Iterable]] = None,
              symmetric: bool = True) -> LinearOperadWindow:
    """K-linear span of a set operad; composites leaving the listed basis raise OutOfWindow."""
    basis = {n: op.elements(n, window) for n in range(op.min_arity, nmax + 1)}
    return LinearOperadWindow(f"K{op.name}", basis, op.compose, op.arity,
                              act=op.act if symmetric else None, unit=op.unit, fmt=op.fmt)


def commutative(nmax: int) -> LinearOperadWindow:
    """Com: one basis element c_n per arity, trivial action."""
    return LinearOperadWindow("Com", {n: (f"c{n}",) for n in range(1, nmax + 1)},
                              lambda a, i, b: f"c{int(a[1:]) + int(b[1:]) - 1}", lambda x: int(x[1:]),
                              act=lambda x, s: x, unit="c1")


# Free operads.  A monomial is a leaf label (int) or a tuple (generator, child, ...).


def _leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    return [x for c in t[1:] for x in _leaves(c)]


def _relabel(t, f: Callable[[int], int]):
    if isinstance(t, int):
        return f(t)
    return (t[0],) + tuple(_relabel(c, f) for c in t[1:])


def _substitute(t, i: int, s):
    if isinstance(t, int):
        return s if t == i else t
    return (t[0],) + tuple(_substitute(c, i, s) for c in t[1:])


def monomial_compose(a, i: int, b):
    """Graft b onto the leaf labelled i of a; labels are shifted as for o_i."""
    m = len(_leaves(a))
    n = len(_leaves(b))
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"slot {i} outside 1..{m}")
    a2 = _relabel(a, lambda j: j if j < i else (j if j == i else j + n - 1))
    return _substitute(a2, i, _relabel(b, lambda j: j + i - 1))


def monomial_act(t, sigma: Sequence[int]):
    """Right action: input k of t.sigma is input sigma(k) of t."""
    inv = _util.inverse_perm(sigma)
    return _relabel(t, lambda j: inv[j - 1])


def monomial_counts(t) -> dict[str, int]:
    out: dict[str, int] = {}

    def walk(x):
        if not isinstance(x, int):
            out[x[0]] = out.get(x[0], 0) + 1
            for c in x[1:]:
                walk(c)

    walk(t)
    return out


def monomial_depths(t) -> tuple[int, ...]:
    """Number of generator vertices above each input, listed by input label."""
    d: dict[int, int] = {}

    def walk(x, k):
        if isinstance(x, int):
            d[x] = k
        else:
            for c in x[1:]:
                walk(c, k + 1)

    walk(t, 0)
    return tuple(d[j] for j in sorted(d))


def fmt_monomial(t) -> str:
    if isinstance(t, int):
        return str(t)
    return f"{t[0]}(" + ",".join(fmt_monomial(c) for c in t[1:]) + ")"


def _planar(generators: Mapping[str, int], nmax: int) -> dict[int, list]:
    """Planar monomials with leaves 1..n left to right, per arity n <= nmax."""

    @lru_cache(maxsize=None)
    def shapes(n: int) -> tuple:
        if n == 1:
            return ("*",)
        out = []
        for g in sorted(generators):
            k = generators[g]
            if k < 2 or k > n:
                continue
            for sizes in _compositions(n, k):
                for kids in itertools.product(*(shapes(s) for s in sizes)):
                    out.append((g,) + kids)
        return tuple(out)

    def number(t, start):
        if t == "*":
            return start, start + 1
        kids = []
        for c in t[1:]:
            c2, start = number(c, start)
            kids.append(c2)
        return (t[0],) + tuple(kids), start

    return {n: [number(s, 1)[0] for s in shapes(n)] for n in range(1, nmax + 1)}


def _compositions(n: int, k: int):
    for cuts in itertools.combinations(range(1, n), k - 1):
        b = (0,) + cuts + (n,)
        yield tuple(b[j + 1] - b[j] for j in range(k))


def free_operad(generators: Mapping[str, int], nmax: int, symmetric: bool = True) -> LinearOperadWindow:
    """Free operad on generators (name -> arity >= 2) truncated at arity nmax.

    The symmetric version has the generators free of symmetries, so its basis is
    planar monomials times all input labellings.  Arity 1 is spanned by the unit.
    """
    planar = _planar(generators, nmax)
    basis = {}
    for n, ts in planar.items():
        if symmetric:
            basis[n] = [_relabel(t, lambda j, s=s: s[j - 1]) for s in _util.all_perms(n) for t in ts]
        else:
            basis[n] = ts
    name = "F(" + ",".join(f"{g}:{k}" for g, k in sorted(generators.items())) + ")"
    W = LinearOperadWindow(name, basis, monomial_compose, lambda t: len(_leaves(t)),
                           act=monomial_act if symmetric else None, unit=1, fmt=fmt_monomial)
    W.generators = dict(generators)
    return W


# Index windows


def _lower_covers_z(p) -> Optional[list]:
    """Lower covers of p in Z, Z^k or a product of those; None when p is not of that shape."""
    if isinstance(p, At):
        v = p.value
        if isinstance(v, int):
            return [At(p.arity, v - 1)]
        if isinstance(v, tuple):
            return [At(p.arity, v[:k] + (v[k] - 1,) + v[k + 1:]) for k in range(len(v))]
        return None
    if isinstance(p, tuple) and all(isinstance(x, int) for x in p):
        return [p[:k] + (p[k] - 1,) + p[k + 1:] for k in range(len(p))]
    return None


class IndexWindow:
    """Finite per-arity piece of an index lattice operad, closed under meet and join.

    Elements strictly below p are only summed over the window, so p is flagged
    unreliable when one of its lower covers in the ambient lattice is missing.
    """

    def __init__(self, op: Operad, window: Optional[Callable[[int], Iterable]] = None, nmax: int = 4,
                 min_arity: int = 1, convex: bool = False):
        # convex: the window is an interval of a Z^k-like lattice, so its covers are ambient covers
        self.convex = convex
        self.op = op
        self.nmax = nmax
        lo = max(min_arity, op.min_arity)
        self.elements = {n: tuple(op.elements(n, window)) for n in range(lo, nmax + 1)}
        self._members = {n: set(els) for n, els in self.elements.items()}
        self._below: dict[int, dict] = {}
        self._covers: dict[int, dict] = {}

    def arities(self) -> list[int]:
        return sorted(self.elements)

    def __contains__(self, key) -> bool:
        n, p = key
        return n in self._members and p in self._members[n]

    def component(self, n: int) -> Lattice:
        return self.op.component(n)

    def compose(self, a, i: int, b):
        return self.op.compose(a, i, b)

    def fmt(self, p) -> str:
        return self.op.fmt(p)

    def bottom(self, n: int):
        """Least element of the ambient component, when it exists."""
        L = self.op.component(n)
        return L.bottom if L.has_bottom else None

    def lower_covers(self, n: int) -> dict:
        """p -> window elements covered by p (covering inside the window order)."""
        if n not in self._covers and self.convex:
            mem = self._members[n]
            self._covers[n] = {p: [c for c in _lower_covers_z(p) if c in mem] for p in self.elements[n]}
        if n not in self._covers:
            L = self.op.component(n)
            els = self.elements[n]
            below = {p: [r for r in els if r != p and L.leq(r, p)] for p in els}
            covers = {}
            for p, rs in below.items():
                rset = set(rs)
                covers[p] = [r for r in rs if not any(r != s and s in rset and L.leq(r, s) for s in rs)]
            self._below[n] = below
            self._covers[n] = covers
        return self._covers[n]

    def reliable(self, n: int, p) -> bool:
        amb = _lower_covers_z(p)
        if amb is None:
            return True
        return all(c in self._members[n] for c in amb)

    def topological(self, n: int) -> list:
        """Window elements of arity n, each after everything below it."""
        covers = self.lower_covers(n)
        done: set = set()
        order = []

        def visit(p):
            if p in done:
                return
            done.add(p)
            for c in covers[p]:
                visit(c)
            order.append(p)

        for p in self.elements[n]:
            visit(p)
        return order

    def __repr__(self) -> str:
        return f"IndexWindow({self.op.tag}, nmax={self.nmax})"


def box(op: Operad, lo: Callable[[int], int] | int, hi: Callable[[int], int] | int, nmax: int,
        size: Optional[int] = None, min_arity: int = 1) -> IndexWindow:
    """Box window: [lo(n), hi(n)] per coordinate for CZ, CZ^I and MZ."""
    lo_f = lo if callable(lo) else (lambda n, v=lo: v)
    hi_f = hi if callable(hi) else (lambda n, v=hi: v)

    def window(n):
        rng = range(lo_f(n), hi_f(n) + 1)
        if op.vector:
            return list(itertools.product(rng, repeat=n))
        if size is None:
            return [At(n, k) for k in rng]
        return [At(n, v) for v in itertools.product(rng, repeat=size)]

    return IndexWindow(op, window, nmax, min_arity, convex=True)


def sub_operad(P: LinearOperadWindow, sample: Optional[Mapping[int, Iterable[Subspace]]] = None) -> Operad:
    """Sub(P): all subspaces of P(n) under sum and intersection, composed by spans of products."""
    def component(n):
        return Lattice(lambda a, b: a & b, lambda a, b: a | b, leq=lambda a, b: a <= b,
                       bottom=P.zero(n), top=P.full(n), rank=lambda a: a.rank,
                       fmt=lambda a: f"<{a.rank}>", name=f"Sub({P.name})({n})")

    def window(n):
        if sample is None or n not in sample:
            return []
        return list(sample[n])

    def fmt(V: Subspace) -> str:
        return "<" + ", ".join(P.fmt_vector(V.arity, v) for v in V.basis()) + f">@{V.arity}"

    return Operad("sub", P.compose_subspaces, component, lambda V: V.arity, fmt=fmt,
                  unit=P.span_labels(1, [P.unit]) if P.unit is not None and 1 in P.basis else None,
                  act=P.act_subspace if P.symmetric else None, window=window, name=f"Sub({P.name})")
