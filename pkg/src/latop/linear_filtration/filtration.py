"""Filtrations of windowed linear operads by windowed lattice operads.

A ``Filtration`` assigns a subspace of P(n) to every index p in the window at
arity n.  Unassigned indices hold the zero subspace, so the same type serves
as a prefiltration (closure seed).
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .. import _util
from ..errors import (IndexOutOfRange, MapNotLax, MapNotMorphism, NotAFiltration, NotStrictlyMonotonic,
                      OutOfWindow, WindowMismatch, WindowOverflow)
from ..operad_core import At, LawReport, Operad, check_lax
from ..operad_zoo import multi_index, walks
from .subspace import Subspace, Vector
from .windows import IndexWindow, LinearOperadWindow, box, linearize, monomial_counts, monomial_depths


class Filtration:
    def __init__(self, P: LinearOperadWindow, I: IndexWindow, spaces: Optional[Mapping] = None, name: str = ""):
        self.P = P
        self.I = I
        self.name = name
        self.spaces: dict = {}
        for (n, p), V in (spaces or {}).items():
            self[n, p] = V

    def arities(self) -> list[int]:
        return [n for n in self.I.arities() if n in self.P.basis]

    def __getitem__(self, key) -> Subspace:
        n, p = key
        V = self.spaces.get(key)
        if V is None:
            if (n, p) not in self.I:
                raise OutOfWindow(f"index {self.I.fmt(p)} is outside the window at arity {n}")
            return self.P.zero(n)
        return V

    def __setitem__(self, key, V: Subspace) -> None:
        n, p = key
        if (n, p) not in self.I:
            raise OutOfWindow(f"index {self.I.fmt(p)} is outside the window at arity {n}")
        if V.arity != n or V.dim != self.P.dim(n):
            raise WindowMismatch(f"subspace of arity {V.arity} stored at arity {n}")
        if V.is_zero():
            self.spaces.pop(key, None)
        else:
            self.spaces[key] = V

    def items(self):
        for n in self.arities():
            for p in self.I.elements[n]:
                yield (n, p), self[n, p]

    def copy(self, name: Optional[str] = None) -> "Filtration":
        F = Filtration(self.P, self.I, name=self.name if name is None else name)
        F.spaces = dict(self.spaces)
        return F

    def __eq__(self, other) -> bool:
        return (isinstance(other, Filtration) and self.P is other.P and self.I is other.I
                and self.spaces == other.spaces)

    def __le__(self, other: "Filtration") -> bool:
        _same_window(self, other)
        return all(V <= other[k] for k, V in self.spaces.items())

    def __repr__(self) -> str:
        return f"Filtration({self.name or '?'}, {self.P.name}, {self.I.op.tag}, {len(self.spaces)} nonzero)"


def _same_window(F: Filtration, G: Filtration) -> None:
    if F.P is not G.P or F.I is not G.I:
        raise WindowMismatch("filtrations live on different windows")


# Constructors


def from_function(P: LinearOperadWindow, I: IndexWindow, fn: Callable[[int, Any], Subspace],
                  name: str = "") -> Filtration:
    F = Filtration(P, I, name=name)
    for n in F.arities():
        for p in I.elements[n]:
            F[n, p] = fn(n, p)
    return F


def trivial(P: LinearOperadWindow, I: IndexWindow) -> Filtration:
    """The largest filtration: every stage is all of P(n)."""
    return from_function(P, I, lambda n, p: P.full(n), "trivial")


def tautological(P: LinearOperadWindow, I: IndexWindow) -> Filtration:
    """F_U = U over a window of Sub(P)."""
    return from_function(P, I, lambda n, U: U, "tautological")


def counting(P: LinearOperadWindow, I: IndexWindow) -> Filtration:
    """Monomials of a free operad with at most p_g occurrences of each generator g.

    Indexed by CZ (one generator) or CZ^I (generators in sorted order)."""
    gens = sorted(P.generators)

    def fn(n, p: At):
        bound = (p.value,) if isinstance(p.value, int) else p.value
        if len(bound) != len(gens):
            raise WindowMismatch(f"{len(gens)} generators but index {p}")
        keep = []
        for t in P.basis[n]:
            c = monomial_counts(t)
            if all(c.get(g, 0) <= b for g, b in zip(gens, bound)):
                keep.append(t)
        return P.span_labels(n, keep)

    return from_function(P, I, fn, "counting")


def depth_filtration(P: LinearOperadWindow, I: IndexWindow) -> Filtration:
    """MZ-indexed: monomials whose vector of input depths is <= p."""
    def fn(n, p):
        return P.span_labels(n, [t for t in P.basis[n] if n > 1 and all(d <= x for d, x in zip(monomial_depths(t), p))])

    return from_function(P, I, fn, "depth")


def walk_filtration(P: LinearOperadWindow, I: IndexWindow, steps: Mapping[str, tuple] = walks.NE) -> Filtration:
    """CZ^d-indexed: walks confined to the region x_k <= p_k."""
    def reach(w):
        pos = [0] * len(next(iter(steps.values())))
        top = list(pos)
        for c in w:
            for k, v in enumerate(steps[c]):
                pos[k] += v
                top[k] = max(top[k], pos[k])
        return tuple(top)

    tops = {n: [reach(w) for w in P.basis[n]] for n in P.basis}

    def fn(n, p: At):
        return Subspace.coordinate(P.dim(n), (k for k, t in enumerate(tops[n])
                                              if all(x <= y for x, y in zip(t, p.value))), n)

    return from_function(P, I, fn, "walks")


# Checking


def _arity_pairs(F: Filtration, nmax: int):
    ars = [n for n in F.arities() if n <= nmax]
    for m in ars:
        for n in ars:
            if m + n - 1 <= nmax and m + n - 1 in F.P.basis:
                yield m, n


def check_filtration(F: Filtration, nmax: Optional[int] = None) -> list[LawReport]:
    """The four clauses of an L-filtration over the window, then the four descriptive flags.

    Composites whose index leaves the window cannot be checked; their number is
    kept in the report witness under 'skipped'.  Flag reports carry status
    'pass' when the property holds in the window and 'no' when it does not.
    """
    nmax = min(F.I.nmax, F.P.nmax) if nmax is None else nmax
    I, P = F.I, F.P
    ars = [n for n in F.arities() if n <= nmax]
    reports = []

    def mono(n):
        cnt = 0
        covers = I.lower_covers(n)
        for p in I.elements[n]:
            for r in covers[p]:
                cnt += 1
                if not F[n, r] <= F[n, p]:
                    return cnt, ((n, I.fmt(r), I.fmt(p)), (n, r, p))
        return cnt, None

    reports.append(_collect("monotonicity", nmax, ars, mono))

    if P.symmetric and I.op.act is not None:
        def equi(n):
            cnt = 0
            for p in I.elements[n]:
                V = F[n, p]
                for s in _util.all_perms(n):
                    cnt += 1
                    q = I.op.act(p, s)
                    if (n, q) not in I:
                        continue
                    if P.act_subspace(V, s) != F[n, q]:
                        return cnt, ((n, I.fmt(p), str(s)), (n, p, s))
            return cnt, None

        reports.append(_collect("equivariance", nmax, ars, equi))
    else:
        reports.append(LawReport("equivariance", nmax, "skip"))

    skipped = [0]

    def compo(t):
        m, n = t
        cnt = 0
        for a in I.elements[m]:
            A = F[m, a]
            if A.is_zero():
                cnt += len(I.elements[n]) * m
                continue
            for b in I.elements[n]:
                B = F[n, b]
                for i in range(1, m + 1):
                    cnt += 1
                    if B.is_zero():
                        continue
                    c = I.compose(a, i, b)
                    prod = P.compose_subspaces(A, i, B)
                    if (m + n - 1, c) not in I:
                        if not prod.is_zero():
                            skipped[0] += 1
                        continue
                    if not prod <= F[m + n - 1, c]:
                        return cnt, ((I.fmt(a), i, I.fmt(b), I.fmt(c)), (a, i, b))
        return cnt, None

    rep = _collect("composition", nmax, list(_arity_pairs(F, nmax)), compo)
    rep.witness = {"skipped": skipped[0]}
    reports.append(rep)

    unit_ok = LawReport("unitality", nmax, "skip")
    if 1 in ars and P.unit is not None:
        b = I.bottom(1)
        if b is not None and (1, b) in I:
            e = P.vec(1, P.unit)
            unit_ok = LawReport("unitality", nmax, "pass" if F[1, b].contains(e) else "fail",
                                None if F[1, b].contains(e) else (I.fmt(b),), 1)
    reports.append(unit_ok)
    reports.extend(filtration_flags(F, nmax))
    return reports


def _collect(law: str, window, tasks: list, fn) -> LawReport:
    checked = 0
    for count, bad in _util.fan_out(fn, tasks):
        checked += count
        if bad is not None:
            return LawReport(law, window, "fail", bad[0], checked, witness=bad[1])
    return LawReport(law, window, "pass", None, checked)


def filtration_flags(F: Filtration, nmax: Optional[int] = None) -> list[LawReport]:
    """exhaustive / bounded_below / stabilized / saturated, judged inside the window.

    bounded_below and stabilized report the witnesses b_n and c_n per arity;
    stabilized asks for a c_n other than the window top, since the top is
    always a trivial witness.
    """
    nmax = min(F.I.nmax, F.P.nmax) if nmax is None else nmax
    I, P = F.I, F.P
    out = []
    ex_bad = None
    bb_wit, st_wit = {}, {}
    bb_bad = st_bad = sat_bad = None
    for n in F.arities():
        if n > nmax:
            continue
        L = I.component(n)
        els = I.elements[n]
        total = P.zero(n)
        for p in els:
            total = total | F[n, p]
        if ex_bad is None and total != P.full(n):
            ex_bad = (n,)
        zeros = [b for b in els if all(F[n, p].is_zero() for p in els if L.leq(p, b))]
        if zeros:
            bb_wit[n] = I.fmt(max(zeros, key=lambda b: sum(1 for p in els if L.leq(p, b))))
        elif bb_bad is None:
            bb_bad = (n,)
        tops = [p for p in els if all(L.leq(q, p) for q in els)]
        cands = [c for c in els if all(F[n, p] == F[n, c] for p in els if L.leq(c, p))]
        good = [c for c in cands if not tops or c != tops[0]]
        if good:
            st_wit[n] = I.fmt(min(good, key=lambda c: sum(1 for p in els if L.leq(c, p)) * -1))
        elif st_bad is None:
            st_bad = (n,)
        if sat_bad is None:
            for x in els:
                for y in els:
                    if L.leq(x, y) or L.leq(y, x):
                        continue
                    z = L.meet(x, y)
                    if (n, z) not in I:
                        continue
                    if not (F[n, x] & F[n, y]) <= F[n, z]:
                        sat_bad = (n, I.fmt(x), I.fmt(y))
                        break
                if sat_bad is not None:
                    break
    for law, bad, wit in (("exhaustive", ex_bad, None), ("bounded_below", bb_bad, bb_wit),
                          ("stabilized", st_bad, st_wit), ("saturated", sat_bad, None)):
        out.append(LawReport(law, nmax, "no" if bad else "pass", bad, witness=wit))
    return out


CLAUSES = ("monotonicity", "equivariance", "composition", "unitality")


def is_filtration(F: Filtration, nmax: Optional[int] = None) -> bool:
    return all(r.status in ("pass", "skip") for r in check_filtration(F, nmax) if r.law in CLAUSES)


# Transport


def pullback(f: Callable[[Any], Any], K: IndexWindow, F: Filtration, check: bool = True,
             nmax: Optional[int] = None) -> Filtration:
    """(f^*F)_p = F_{f(p)}; f must be a lax morphism K -> L on the window."""
    if check:
        nm = min(K.nmax, F.I.nmax) if nmax is None else nmax
        window = lambda n: K.elements.get(n, ())
        bad = [r for r in check_lax(f, K.op, F.I.op, nm, window) if not r.ok]
        if bad:
            raise MapNotLax(f"{bad[0].law} fails at {bad[0].counterexample}")

    def fn(n, p):
        q = f(p)
        if (n, q) not in F.I:
            raise WindowOverflow(f"f({K.fmt(p)}) = {F.I.fmt(q)} is outside the target window")
        return F[n, q]

    return from_function(F.P, K, fn, f"pullback({F.name})")


@dataclass
class LinearMap:
    """Operad morphism between windows: basis label of P(n) -> {label of Q(n): coefficient}."""

    P: LinearOperadWindow
    Q: LinearOperadWindow
    images: Callable[[int, Any], Mapping]

    def vector(self, n: int, v: Mapping[int, Fraction]) -> Vector:
        out: dict[int, Fraction] = {}
        for k, x in v.items():
            for lab, c in self.images(n, self.P.basis[n][k]).items():
                col = self.Q.column(n, lab)
                y = out.get(col, 0) + x * Fraction(c)
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
        return out

    def subspace(self, V: Subspace) -> Subspace:
        return V.image(lambda v: self.vector(V.arity, v), self.Q.dim(V.arity), V.arity)

    def then(self, other: "LinearMap") -> "LinearMap":
        """other after self."""
        def images(n, lab):
            v = other.vector(n, self.vector(n, self.P.vec(n, lab)))
            return {other.Q.basis[n][k]: c for k, c in v.items()}

        return LinearMap(self.P, other.Q, images)

    def failures(self, nmax: Optional[int] = None) -> list[str]:
        P, Q = self.P, self.Q
        nmax = min(P.nmax, Q.nmax) if nmax is None else nmax
        bad = []
        for m in P.arities():
            for n in P.arities():
                t = m + n - 1
                if t > nmax or t not in P.basis:
                    continue
                for a in range(P.dim(m)):
                    for b in range(P.dim(n)):
                        for i in range(1, m + 1):
                            lhs = self.vector(t, P.compose_basis(m, a, i, n, b))
                            rhs = Q.compose_vectors(m, self.vector(m, {a: 1}), i, n, self.vector(n, {b: 1}))
                            if lhs != rhs:
                                bad.append(f"composition {P.fmt(P.basis[m][a])} o_{i} {P.fmt(P.basis[n][b])}")
                                return bad
        if P.symmetric and Q.symmetric:
            for n in P.arities():
                if n > nmax:
                    continue
                for a in range(P.dim(n)):
                    for s in _util.all_perms(n):
                        if self.vector(n, P.act_vector(n, {a: 1}, s)) != Q.act_vector(n, self.vector(n, {a: 1}), s):
                            bad.append(f"equivariance at {P.fmt(P.basis[n][a])}, {s}")
                            return bad
        if P.unit is not None and Q.unit is not None and 1 in P.basis:
            if self.vector(1, P.vec(1, P.unit)) != Q.vec(1, Q.unit):
                bad.append("unit")
        return bad


def pushforward(phi: LinearMap, F: Filtration, check: bool = True) -> Filtration:
    """(phi_*F)_p = phi(F_p)."""
    if phi.P is not F.P:
        raise WindowMismatch("the map does not start at the filtered operad")
    if check:
        bad = phi.failures()
        if bad:
            raise MapNotMorphism(bad[0])
    return from_function(phi.Q, F.I, lambda n, p: phi.subspace(F[n, p]), f"pushforward({F.name})")


def transport_filtration(direction: str, fmap, F: Filtration, K: Optional[IndexWindow] = None,
                         check: bool = True) -> Filtration:
    if direction == "pullback":
        if K is None:
            raise ValueError("pullback needs the source index window")
        return pullback(fmap, K, F, check)
    if direction == "pushforward":
        return pushforward(fmap, F, check)
    raise ValueError(f"unknown direction {direction!r}")


def filtration_lattice_ops(F: Filtration, G: Filtration) -> tuple[Filtration, Filtration]:
    """Index-wise intersection and sum."""
    _same_window(F, G)
    meet = Filtration(F.P, F.I, name="meet")
    join = Filtration(F.P, F.I, name="join")
    for key in set(F.spaces) | set(G.spaces):
        meet[key] = F[key] & G[key]
        join[key] = F[key] | G[key]
    return meet, join


# D-brackets


def block_swap(p: int, q: int, total: int, offset: int = 0) -> tuple[int, ...]:
    """Permutation exchanging the block of p entries at offset with the next q entries."""
    s = list(range(1, total + 1))
    first = list(range(offset + 1, offset + p + 1))
    second = list(range(offset + p + 1, offset + p + q + 1))
    s[offset:offset + p + q] = second + first
    return tuple(s)


def index_bracket(a: Sequence[int], i: int, b: Sequence[int], j: int) -> tuple[int, ...]:
    """(b_L + a_i, a_L + b_j, a_i + b_j - 1, b_R + a_i, a_R + b_j)."""
    m, n = len(a), len(b)
    if not 1 <= i <= m or not 1 <= j <= n:
        raise IndexOutOfRange(f"slots ({i}, {j}) outside 1..{m} x 1..{n}")
    ai, bj = a[i - 1], b[j - 1]
    return (tuple(x + ai for x in b[:j - 1]) + tuple(x + bj for x in a[:i - 1]) + (ai + bj - 1,)
            + tuple(x + ai for x in b[j:]) + tuple(x + bj for x in a[i:]))


def bracket_terms(m: int, i: int, n: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two block permutations applied to a o_i b and to b o_j a."""
    t = m + n - 1
    return block_swap(i - 1, j - 1, t, 0), block_swap(m - i, n - j, t, i + j - 1)


def element_bracket(P: LinearOperadWindow, m: int, u: Mapping, i: int, n: int, v: Mapping, j: int) -> Vector:
    """[u, v]_ij = (u o_i v).tau - (v o_j u).tau' for ungraded u in P(m), v in P(n)."""
    if not 1 <= i <= m or not 1 <= j <= n:
        raise IndexOutOfRange(f"slots ({i}, {j}) outside 1..{m} x 1..{n}")
    s1, s2 = bracket_terms(m, i, n, j)
    t = m + n - 1
    x = P.act_vector(t, P.compose_vectors(m, u, i, n, v), s1)
    y = P.act_vector(t, P.compose_vectors(n, v, j, m, u), s2)
    out = dict(x)
    for k, c in y.items():
        w = out.get(k, 0) - c
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def d_bracket(level: str, a, i: int, b, j: int, P: Optional[LinearOperadWindow] = None):
    """Index level: a, b are MZ vectors.  Element level: a = (m, vector), b = (n, vector) in P."""
    if level == "index":
        return index_bracket(tuple(a), i, tuple(b), j)
    if level == "element":
        if P is None:
            raise ValueError("element brackets need the linear operad window")
        return element_bracket(P, a[0], a[1], i, b[0], b[1], j)
    raise ValueError(f"unknown bracket level {level!r}")


def bracket_subspace(P: LinearOperadWindow, V: Subspace, i: int, U: Subspace, j: int) -> Subspace:
    m, n = V.arity, U.arity
    t = m + n - 1
    if V.is_zero() or U.is_zero():
        return P.zero(t)
    return P.span(t, (element_bracket(P, m, u, i, n, w, j) for u in V.basis() for w in U.basis()))


def check_d_filtration(F: Filtration, nmax: Optional[int] = None) -> LawReport:
    """[F_p, F_q]_ij lies in F_[p,q]_ij wherever the bracket index is in the window."""
    nmax = min(F.I.nmax, F.P.nmax) if nmax is None else nmax
    I, P = F.I, F.P
    cnt = 0
    for m, n in _arity_pairs(F, nmax):
        for p in I.elements[m]:
            A = F[m, p]
            if A.is_zero():
                continue
            for q in I.elements[n]:
                B = F[n, q]
                if B.is_zero():
                    continue
                for i in range(1, m + 1):
                    for j in range(1, n + 1):
                        cnt += 1
                        r = index_bracket(p, i, q, j)
                        br = bracket_subspace(P, A, i, B, j)
                        if (m + n - 1, r) not in I:
                            if not br.is_zero():
                                return LawReport("d_bracket", nmax, "fail", (I.fmt(p), i, I.fmt(q), j, "outside"), cnt)
                            continue
                        if not br <= F[m + n - 1, r]:
                            return LawReport("d_bracket", nmax, "fail", (I.fmt(p), i, I.fmt(q), j), cnt)
    return LawReport("d_bracket", nmax, "pass", None, cnt)


# Closures


@dataclass
class ClosureResult:
    filtration: Filtration
    sweeps: int
    overflows: list = field(default_factory=list)
    fixed: dict = field(default_factory=dict)


def closure(kind: str, seed: Filtration, on_overflow: str = "raise", max_sweeps: int = 1000) -> ClosureResult:
    """Least filtration of the given kind above ``seed`` inside the window.

    kind 'generated' closes under monotonicity, equivariance, compositions and
    unitality; 'saturated' adds F_p & F_q <= F_{p meet q}; 'd' adds the
    D-bracket inclusions (MZ indices only).  A nonzero contribution aimed at an
    index outside the window raises WindowOverflow, or with on_overflow='drop'
    is recorded in ``overflows`` and ignored.

    Each sweep only revisits rules with an input that grew in the previous one.
    """
    if kind not in ("generated", "saturated", "d"):
        raise ValueError(f"unknown closure kind {kind!r}")
    if on_overflow not in ("raise", "drop"):
        raise ValueError(f"unknown overflow policy {on_overflow!r}")
    F = seed.copy(name=f"{kind}({seed.name})")
    I, P = F.I, F.P
    nmax = min(I.nmax, P.nmax)
    ars = [n for n in F.arities() if n <= nmax]
    overflows: list = []
    seen_overflow: set = set()
    grown: set = set()
    meets: dict = {}

    def push(n, target, V, why):
        if V.is_zero():
            return
        if (n, target) not in I:
            key = (n, target, why)
            if on_overflow == "raise":
                raise WindowOverflow(f"{why} sends a nonzero subspace to {I.fmt(target)} at arity {n}, "
                                     f"outside the window")
            if key not in seen_overflow:
                seen_overflow.add(key)
                overflows.append((n, I.fmt(target), why))
            return
        cur = F[n, target]
        if V <= cur:
            return
        F[n, target] = cur | V
        grown.add((n, target))

    def meet(V, W):
        key = (V, W) if hash(V) <= hash(W) else (W, V)
        got = meets.get(key)
        if got is None:
            got = meets[key] = V & W
        return got

    symmetric = P.symmetric and I.op.act is not None
    dirty = {(n, p) for (n, p) in F.spaces}
    sweeps = 0
    if 1 in ars and P.unit is not None:
        b = I.bottom(1)
        if b is not None and (1, b) in I:
            push(1, b, P.span_labels(1, [P.unit]), "unit")
    while True:
        sweeps += 1
        if sweeps > max_sweeps:
            raise RuntimeError("closure did not stabilize")
        dirty |= grown
        grown = set()
        for m in ars:
            for n in ars:
                t = m + n - 1
                if t > nmax or t not in P.basis:
                    continue
                nz_a = [a for a in I.elements[m] if (m, a) in F.spaces]
                nz_b = [b for b in I.elements[n] if (n, b) in F.spaces]
                for a in nz_a:
                    A = F[m, a]
                    da = (m, a) in dirty
                    for b in nz_b:
                        if not da and (n, b) not in dirty:
                            continue
                        B = F[n, b]
                        for i in range(1, m + 1):
                            push(t, I.compose(a, i, b), P.compose_subspaces(A, i, B), "composition")
                        if kind == "d":
                            for i in range(1, m + 1):
                                for j in range(1, n + 1):
                                    push(t, index_bracket(a, i, b, j), bracket_subspace(P, A, i, B, j), "bracket")
        for n in ars:
            L = I.component(n)
            if symmetric:
                for p in I.elements[n]:
                    if (n, p) not in dirty or (n, p) not in F.spaces:
                        continue
                    V = F[n, p]
                    for s in _util.all_perms(n):
                        push(n, I.op.act(p, s), P.act_subspace(V, s), "action")
            if kind == "saturated":
                nz = [p for p in I.elements[n] if (n, p) in F.spaces]
                for ix, x in enumerate(nz):
                    dx = (n, x) in dirty
                    for y in nz[ix + 1:]:
                        if not dx and (n, y) not in dirty:
                            continue
                        if L.leq(x, y) or L.leq(y, x):
                            continue
                        push(n, L.meet(x, y), meet(F[n, x], F[n, y]), "meet")
            covers = I.lower_covers(n)
            for p in I.topological(n):
                for r in covers[p]:
                    if (n, r) in F.spaces and ((n, r) in dirty or (n, r) in grown):
                        push(n, p, F[n, r], "monotonicity")
        dirty = set()
        if not grown:
            break
    return ClosureResult(F, sweeps, overflows)


def standard_d_filtration(seed: Filtration, on_overflow: str = "raise") -> ClosureResult:
    """Saturation of the D-closure of the generated filtration, in that order.

    ``fixed`` records whether the result is already closed for each of the
    three closures on its own."""
    g = closure("generated", seed, on_overflow)
    d = closure("d", g.filtration, on_overflow)
    s = closure("saturated", d.filtration, on_overflow)
    out = s.filtration
    fixed = {k: closure(k, out, on_overflow).filtration == out for k in ("generated", "d", "saturated")}
    return ClosureResult(out, g.sweeps + d.sweeps + s.sweeps, g.overflows + d.overflows + s.overflows, fixed)


# Associated graded


def check_strictly_monotonic(I: IndexWindow, nmax: Optional[int] = None) -> LawReport:
    """q < q' implies p o_i q < p o_i q' and q o_j p < q' o_j p, inside the window."""
    nmax = I.nmax if nmax is None else nmax
    cnt = 0
    ars = [n for n in I.arities() if n <= nmax]
    for m in ars:
        for n in ars:
            t = m + n - 1
            if t > nmax:
                continue
            T = I.component(t)
            for q in I.elements[n]:
                for q2 in I.lower_covers(n)[q]:
                    for p in I.elements[m]:
                        for i in range(1, m + 1):
                            cnt += 1
                            x, y = I.compose(p, i, q2), I.compose(p, i, q)
                            if not (T.leq(x, y) and x != y):
                                return LawReport("strictly_monotonic", nmax, "fail",
                                                 (I.fmt(p), i, I.fmt(q2), I.fmt(q)), cnt)
                        for j in range(1, n + 1):
                            cnt += 1
                            x, y = I.compose(q2, j, p), I.compose(q, j, p)
                            if not (T.leq(x, y) and x != y):
                                return LawReport("strictly_monotonic", nmax, "fail",
                                                 (I.fmt(q2), j, I.fmt(q), I.fmt(p)), cnt)
    return LawReport("strictly_monotonic", nmax, "pass", None, cnt)


class AssociatedGraded:
    """gr P(n)_p = F_p / sum of F_r over window indices r < p, with induced compositions."""

    def __init__(self, F: Filtration, nmax: Optional[int] = None, check_nmax: Optional[int] = None):
        self.F = F
        self.I, self.P = F.I, F.P
        self.nmax = min(F.I.nmax, F.P.nmax) if nmax is None else nmax
        sm = check_strictly_monotonic(self.I, check_nmax)
        if not sm.ok:
            raise NotStrictlyMonotonic(f"index window is not strictly monotonic at {sm.counterexample}")
        bad = [r for r in check_filtration(F, check_nmax) if r.law in CLAUSES and r.status == "fail"]
        if bad:
            raise NotAFiltration(f"{bad[0].law} fails at {bad[0].counterexample}")
        self._lower: dict = {}
        self._reps: dict = {}

    def lower(self, n: int, p) -> Subspace:
        key = (n, p)
        if key not in self._lower:
            V = self.P.zero(n)
            for r in self.I.lower_covers(n)[p]:
                V = V | self.F[n, r]
            self._lower[key] = V
        return self._lower[key]

    def dim(self, n: int, p) -> int:
        return self.F[n, p].rank - self.lower(n, p).rank

    def reliable(self, n: int, p) -> bool:
        return self.I.reliable(n, p)

    def representatives(self, n: int, p) -> list[Vector]:
        """Basis vectors of F_p completing a basis of the lower sum."""
        key = (n, p)
        if key not in self._reps:
            E = self.lower(n, p)._echelon()
            reps = []
            for v in self.F[n, p].basis():
                if E.add(v):
                    reps.append(v)
            self._reps[key] = reps
        return self._reps[key]

    def reduce(self, n: int, p, v: Mapping) -> Vector:
        """Canonical representative of the class of v in gr_p (v must lie in F_p)."""
        if not self.F[n, p].contains(v):
            raise ValueError(f"vector is not in F_{self.I.fmt(p)}")
        return self.lower(n, p).reduce(v)

    def compose(self, m: int, p, u: Mapping, i: int, n: int, q, v: Mapping):
        """Class of u o_i v in gr_{p o_i q}."""
        t = m + n - 1
        r = self.I.compose(p, i, q)
        if (t, r) not in self.I:
            raise WindowOverflow(f"{self.I.fmt(r)} is outside the window")
        return r, self.reduce(t, r, self.P.compose_vectors(m, u, i, n, v))

    def bracket(self, m: int, p, u: Mapping, i: int, n: int, q, v: Mapping, j: int):
        """Class of [u, v]_ij in gr_s, s the join of the indices of its two terms."""
        t = m + n - 1
        s1, s2 = bracket_terms(m, i, n, j)
        act = self.I.op.act
        x = act(self.I.compose(p, i, q), s1)
        y = act(self.I.compose(q, j, p), s2)
        s = self.I.component(t).join(x, y)
        if (t, s) not in self.I:
            raise WindowOverflow(f"{self.I.fmt(s)} is outside the window")
        return s, self.reduce(t, s, element_bracket(self.P, m, u, i, n, v, j))

    def table(self) -> list[tuple]:
        """(arity, index, dim F_p, dim gr_p, reliable) for every window index."""
        rows = []
        for n in self.F.arities():
            if n > self.nmax:
                continue
            for p in self.I.elements[n]:
                rows.append((n, self.I.fmt(p), self.F[n, p].rank, self.dim(n, p), self.reliable(n, p)))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["arity", "index", "dim_F", "dim_gr", "reliable"])
        for row in self.table():
            w.writerow(row)
        return buf.getvalue()


def associated_graded(F: Filtration, nmax: Optional[int] = None, check_nmax: Optional[int] = None) -> AssociatedGraded:
    return AssociatedGraded(F, nmax, check_nmax)


def graded_failures(gr: AssociatedGraded, nmax: Optional[int] = None) -> list[str]:
    """G-graded operad clauses on the reliable part of the window.

    (i) dimensions add up to dim P(n) for exhaustive, bounded-below arities;
    (ii) the class of a composite of representatives depends only on their classes;
    (iii) the symmetric action maps gr_p onto gr_{p.sigma}.
    """
    F, I, P = gr.F, gr.I, gr.P
    nmax = gr.nmax if nmax is None else nmax
    bad = []
    for n in F.arities():
        if n > nmax:
            continue
        els = I.elements[n]
        if all(gr.reliable(n, p) for p in els if not F[n, p].is_zero()):
            full = P.zero(n)
            for p in els:
                full = full | F[n, p]
            if full == P.full(n) and any(F[n, p].is_zero() for p in els):
                total = sum(gr.dim(n, p) for p in els)
                if total != P.dim(n):
                    bad.append(f"(i) arity {n}: graded dimensions sum to {total}, not {P.dim(n)}")
    for m in F.arities():
        for n in F.arities():
            t = m + n - 1
            if t > nmax or t not in P.basis:
                continue
            for p in I.elements[m]:
                if not gr.reliable(m, p):
                    continue
                for q in I.elements[n]:
                    if not gr.reliable(n, q):
                        continue
                    for i in range(1, m + 1):
                        r = I.compose(p, i, q)
                        if (t, r) not in I or not gr.reliable(t, r):
                            continue
                        for u in gr.representatives(m, p):
                            for v in gr.representatives(n, q):
                                base = gr.compose(m, p, u, i, n, q, v)[1]
                                for du in gr.lower(m, p).basis()[:2]:
                                    u2 = _add(u, du)
                                    for dv in gr.lower(n, q).basis()[:2] or [{}]:
                                        got = gr.compose(m, p, u2, i, n, q, _add(v, dv))[1]
                                        if got != base:
                                            bad.append(f"(ii) {I.fmt(p)} o_{i} {I.fmt(q)} depends on representatives")
                                            return bad
    if P.symmetric and I.op.act is not None:
        for n in F.arities():
            if n > nmax:
                continue
            for p in I.elements[n]:
                for s in _util.all_perms(n):
                    q = I.op.act(p, s)
                    if (n, q) in I and gr.reliable(n, p) and gr.reliable(n, q) and gr.dim(n, p) != gr.dim(n, q):
                        bad.append(f"(iii) dim gr_{I.fmt(p)} != dim gr_{I.fmt(q)}")
                        return bad
    return bad


def _add(u: Mapping, v: Mapping) -> Vector:
    out = dict(u)
    for k, c in v.items():
        w = out.get(k, 0) + c
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


# Walks and seeds


def ne_walk_setup(nmax_steps: int) -> tuple[LinearOperadWindow, IndexWindow, Filtration]:
    """Path_S for NE steps with the bounding-box CZ^2 filtration, index box [-1, n]^2 at n steps."""
    op = walks.walk_operad(walks.NE, "ne")
    P = linearize(op, nmax_steps + 1)
    I = box(multi_index.cz_power(2), -1, lambda a: a - 1, nmax_steps + 1, size=2)
    return P, I, walk_filtration(P, I, walks.NE)


def ne_graded_dimensions(nmax_steps: int) -> dict[tuple[int, tuple[int, int]], int]:
    """(steps, (p1, p2)) -> dim gr over the reliable window, i.e. p in [0, n]^2."""
    P, I, F = ne_walk_setup(nmax_steps)
    gr = AssociatedGraded(F, check_nmax=min(4, nmax_steps + 1))
    out = {}
    for a in F.arities():
        for p in I.elements[a]:
            if gr.reliable(a, p):
                out[a - 1, p.value] = gr.dim(a, p)
    return out


def expected_ne_dimension(n: int, p: tuple[int, int]) -> int:
    return comb(n, p[0]) if p[0] + p[1] == n and p[0] >= 0 and p[1] >= 0 else 0


def seed_at(P: LinearOperadWindow, I: IndexWindow, generators: Mapping[int, Iterable], threshold: Callable[[int], Any],
            name: str = "seed") -> Filtration:
    """E_p(n) = span of the arity-n generators when p >= threshold(n), else 0."""
    F = Filtration(P, I, name=name)
    for n, gens in generators.items():
        V = P.span_labels(n, gens)
        L = I.component(n)
        t = threshold(n)
        for p in I.elements[n]:
            if L.leq(t, p):
                F[n, p] = V
    return F


CONFIG_KEYS = ("operad", "generators", "window")


def load_config(text: str) -> dict:
    """Parse and validate a filtration seed document.

    {
      "operad": {"free": {"m": 2}, "symmetric": true, "nmax": 3}
                or {"linearize": "comp", "nmax": 4},
      "window": {"index": "mz" | "cz" | "cz2", "lo": -1, "hi": "n-1"},
      "generators": [{"arity": 2, "label": "m"}],
      "threshold": {"2": [1, 1]},          optional, default all ones
      "on_overflow": "raise" | "drop"      optional
    }

    ``lo``/``hi`` are integers or expressions "n", "n+k", "n-k" in the arity.
    A generator label is either a generator name of a free operad or the
    printed form of a basis element.
    """
    doc = json.loads(text)
    for key in CONFIG_KEYS:
        if key not in doc:
            raise ValueError(f"config is missing {key!r}")
    op, win = doc["operad"], doc["window"]
    if not isinstance(op, dict) or ("free" in op) == ("linearize" in op):
        raise ValueError("operad must name exactly one of 'free' or 'linearize'")
    if win.get("index") not in _INDEX_KINDS:
        raise ValueError(f"window.index must be one of {sorted(_INDEX_KINDS)}")
    if doc.get("on_overflow", "raise") not in ("raise", "drop"):
        raise ValueError("on_overflow must be 'raise' or 'drop'")
    for g in doc["generators"]:
        if not isinstance(g.get("arity"), int) or g["arity"] < 1 or "label" not in g:
            raise ValueError(f"bad generator entry {g}")
    return doc


def _bound(desc) -> Callable[[int], int]:
    if isinstance(desc, int):
        return lambda n: desc
    text = str(desc).replace(" ", "")
    if text == "n":
        return lambda n: n
    if text.startswith("n") and text[1:2] in ("+", "-"):
        k = int(text[1:])
        return lambda n: n + k
    return lambda n, v=int(text): v


_INDEX_KINDS = {
    "mz": lambda: multi_index.mz(),
    "cz": lambda: multi_index.cz(),
    "cz2": lambda: multi_index.cz_power(2),
}


def _index_value(kind: str, n: int, raw):
    if kind == "mz":
        v = tuple(raw) if isinstance(raw, (list, tuple)) else (raw,) * n
        if len(v) != n:
            raise ValueError(f"threshold {raw} has the wrong length for arity {n}")
        return v
    if kind == "cz":
        return At(n, int(raw))
    v = tuple(raw) if isinstance(raw, (list, tuple)) else (raw, raw)
    return At(n, v)


def config_setup(doc: Mapping) -> tuple[LinearOperadWindow, IndexWindow, Filtration]:
    """Linear operad window, index window and seed described by a loaded config."""
    from .windows import free_operad
    from ..operad_zoo import get

    desc = doc["operad"]
    nmax = int(desc.get("nmax", 3))
    if "free" in desc:
        P = free_operad({str(k): int(v) for k, v in desc["free"].items()}, nmax, desc.get("symmetric", True))
    else:
        P = linearize(get(desc["linearize"]), nmax)
    win = doc["window"]
    kind = win["index"]
    size = 2 if kind == "cz2" else None
    I = box(_INDEX_KINDS[kind](), _bound(win.get("lo", 0)), _bound(win.get("hi", "n-1")),
            int(win.get("nmax", nmax)), size=size)
    gens: dict[int, list] = {}
    for g in doc["generators"]:
        n, label = g["arity"], g["label"]
        gens.setdefault(n, []).append(_basis_label(P, n, label))
    thresholds = {int(k): v for k, v in doc.get("threshold", {}).items()}

    def threshold(n):
        return _index_value(kind, n, thresholds.get(n, 1))

    return P, I, seed_at(P, I, gens, threshold, name=doc.get("name", "seed"))


def _basis_label(P: LinearOperadWindow, n: int, label: str):
    gens = getattr(P, "generators", {})
    if label in gens:
        if gens[label] != n:
            raise ValueError(f"generator {label} has arity {gens[label]}, not {n}")
        return (label,) + tuple(range(1, n + 1))
    for t in P.basis.get(n, ()):
        if P.fmt(t) == label:
            return t
    raise ValueError(f"{label!r} is not a basis element of {P.name}({n})")
