"""Operads with lattice-valued components, partial compositions and law checkers.

Elements are plain hashable payloads (tuples, strings, small named tuples);
an :class:`Operad` knows how to read their arity, compose them, print them and
enumerate a component.  :class:`OperadElement` is an optional tagged wrapper.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, NamedTuple, Optional, Sequence

from . import _util
from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    InfiniteCarrier,
    NonAssociative,
    ParseError,
    TagMismatch,
)
from .lattice_core import EMPTY_INTERVAL, MISSING, Lattice, derived_lattice, product

__all__ = [
    "At",
    "Special",
    "ExtraAction",
    "Operad",
    "OperadElement",
    "LawReport",
    "Monoid",
    "compose_at",
    "check_operad_laws",
    "check_lattice_compatibility",
    "check_group_equivariance",
    "check_lax",
    "check_strict",
    "compose_lax",
    "build_word_operad",
    "build_m_associative",
    "lift_operad",
    "generate_suboperad",
    "all_passed",
]


class At(NamedTuple):
    """A payload whose arity cannot be read off the payload itself."""

    arity: int
    value: Any


class Special(NamedTuple):
    """Absorbing distinguished element (E for the empty face, U for the adjoined top)."""

    symbol: str
    arity: Optional[int] = None

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class ExtraAction:
    """A named involution with its declared compatibility shape.

    shape 'same':    f(a o_i b) = f(a) o_i f(b)
    shape 'reverse': f(a o_i b) = f(a) o_{m-i+1} f(b)
    lattice: 'auto' (lattice automorphism), 'anti' (anti-automorphism) or None.
    """

    name: str
    fn: Callable[[Any], Any]
    shape: str = "same"
    lattice: Optional[str] = None


class Operad:
    def __init__(
        self,
        tag: str,
        compose: Callable[[Any, int, Any], Any],
        component: Callable[[int], Lattice],
        arity: Callable[[Any], int],
        *,
        fmt: Callable[[Any], str] = str,
        parse: Optional[Callable[[str], Any]] = None,
        unit: Any = None,
        act: Optional[Callable[[Any, Sequence[int]], Any]] = None,
        extra_actions: Iterable[ExtraAction] = (),
        min_arity: int = 1,
        window: Optional[Callable[[int], Iterable]] = None,
        name: str = "",
        vector: bool = False,
    ):
        self.tag = tag
        self._compose = compose
        self._component_fn = component
        self._components: dict[int, Lattice] = {}
        self.arity = arity
        self.fmt = fmt
        self._parse = parse
        self.unit = unit
        self.act = act
        self.extra_actions = tuple(extra_actions)
        self.min_arity = min_arity
        self.window = window
        self.name = name or tag
        # vector operads carry integer-tuple payloads in Z^n with componentwise lattice ops
        self.vector = vector

    @property
    def symmetric(self) -> bool:
        return self.act is not None

    def component(self, n: int) -> Lattice:
        if n not in self._components:
            self._components[n] = self._component_fn(n)
        return self._components[n]

    def compose(self, a, i: int, b):
        return self._compose(a, i, b)

    def parse(self, text: str):
        if self._parse is None:
            raise ParseError(f"operad {self.tag} has no parser")
        try:
            return self._parse(text)
        except (ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"cannot parse {text!r} for {self.tag}: {exc}") from exc

    def elements(self, n: int, window: Optional[Callable[[int], Iterable]] = None) -> list:
        """The window used by the checkers at arity n."""
        if n < self.min_arity:
            return []
        if window is not None:
            return list(window(n))
        L = self.component(n)
        if L.finite:
            return list(L.elements)
        if self.window is not None:
            return list(self.window(n))
        raise InfiniteCarrier(f"{self.tag}({n}) is infinite and no window was given")

    def action(self, name: str) -> ExtraAction:
        for act in self.extra_actions:
            if act.name == name:
                return act
        raise KeyError(name)

    def __repr__(self) -> str:
        return f"Operad({self.tag})"


@dataclass(frozen=True)
class OperadElement:
    operad_tag: str
    arity: int
    payload: Any

    def __str__(self) -> str:
        return f"{self.operad_tag}:{self.payload}"


def compose_at(op: Operad, a, i: int, b):
    """a o_i b with index and tag checks; accepts raw payloads or OperadElement wrappers."""
    wrapped = isinstance(a, OperadElement) or isinstance(b, OperadElement)
    for x in (a, b):
        if isinstance(x, OperadElement) and x.operad_tag != op.tag:
            raise TagMismatch(f"element of {x.operad_tag} passed to {op.tag}")
    pa = a.payload if isinstance(a, OperadElement) else a
    pb = b.payload if isinstance(b, OperadElement) else b
    m = op.arity(pa)
    if m is not None and not 1 <= i <= m:
        raise IndexOutOfRange(f"slot {i} outside 1..{m}")
    out = op.compose(pa, i, pb)
    if wrapped:
        return OperadElement(op.tag, op.arity(out), out)
    return out


@dataclass
class LawReport:
    law: str
    window: Any
    status: str
    counterexample: Optional[tuple] = None
    checked: int = 0
    witness: Any = field(default=None, compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        d: dict = {"law": self.law, "window": self.window, "status": self.status}
        if self.counterexample is not None:
            d["counterexample"] = [x if isinstance(x, (int, str)) else str(x) for x in self.counterexample]
        d["checked"] = self.checked
        return json.dumps(d)


def all_passed(reports: Iterable[LawReport]) -> bool:
    return all(r.ok for r in reports)


def _run(law: str, window, tasks: list, check: Callable) -> LawReport:
    """Fan the task groups out, keep the first failure in task order."""
    results = _util.fan_out(check, tasks)
    checked = 0
    for count, bad in results:
        checked += count
        if bad is not None:
            return LawReport(law, window, "fail", bad[0], checked, witness=bad[1])
    return LawReport(law, window, "pass", None, checked)


def _arity_pairs(op: Operad, nmax: int):
    lo = op.min_arity
    for m in range(lo, nmax + 1):
        for n in range(lo, nmax + 2 - m):
            yield m, n


# ---------------------------------------------------------------- operad laws

def check_operad_laws(op: Operad, nmax: int, window=None, laws: Optional[Sequence[str]] = None) -> list[LawReport]:
    """Sequential and parallel associativity, unit, equivariance and declared extra actions.

    Every tuple whose composite has arity <= nmax is checked.
    """
    W = {n: op.elements(n, window) for n in range(op.min_arity, nmax + 1)}
    f = op.fmt
    wanted = set(laws) if laws else None

    def want(name):
        return wanted is None or name in wanted or name.split(":")[0] in wanted

    reports = []
    if want("sequential"):
        tasks = [(m, n, k) for m in W for n in W for k in W if m + n + k - 2 <= nmax]

        def seq(t):
            m, n, k = t
            cnt = 0
            for a in W[m]:
                for b in W[n]:
                    for c in W[k]:
                        for i in range(1, m + 1):
                            ab = op.compose(a, i, b)
                            for j in range(1, n + 1):
                                cnt += 1
                                lhs = op.compose(ab, i + j - 1, c)
                                rhs = op.compose(a, i, op.compose(b, j, c))
                                if lhs != rhs:
                                    return cnt, ((f(a), i, f(b), j, f(c), f(lhs), f(rhs)), (a, i, b, j, c))
            return cnt, None

        reports.append(_run("sequential", nmax, tasks, seq))
    if want("parallel"):
        tasks = [(m, n, k) for m in W for n in W for k in W if m + n + k - 2 <= nmax and m >= 2]

        def par(t):
            m, n, k = t
            cnt = 0
            for a in W[m]:
                for b in W[n]:
                    for c in W[k]:
                        for i in range(1, m + 1):
                            ab = op.compose(a, i, b)
                            for j in range(i + 1, m + 1):
                                cnt += 1
                                lhs = op.compose(ab, j + n - 1, c)
                                rhs = op.compose(op.compose(a, j, c), i, b)
                                if lhs != rhs:
                                    return cnt, ((f(a), i, f(b), j, f(c), f(lhs), f(rhs)), (a, i, b, j, c))
            return cnt, None

        reports.append(_run("parallel", nmax, tasks, par))
    if want("unit") and op.unit is not None:
        u = op.unit

        def unit(n):
            cnt = 0
            for a in W[n]:
                cnt += 1
                if op.compose(u, 1, a) != a:
                    return cnt, ((f(u), 1, f(a)), (u, 1, a))
                for i in range(1, n + 1):
                    cnt += 1
                    if op.compose(a, i, u) != a:
                        return cnt, ((f(a), i, f(u)), (a, i, u))
            return cnt, None

        reports.append(_run("unit", nmax, sorted(W), unit))
    if want("equivariance") and op.act is not None:
        reports.extend(check_group_equivariance(
            op, nmax, _util.all_perms, op.act, lambda s, i: s[i - 1],
            lambda s, i, n: _util.block_left(s, i, n), _util.block_right,
            window=window, law="equivariance"))
    for ea in op.extra_actions:
        if want("action:" + ea.name):
            reports.extend(check_extra_action(op, ea, nmax, window))
    return reports


def check_group_equivariance(op: Operad, nmax: int, group: Callable[[int], Iterable], act: Callable,
                             slot: Callable, left: Callable, right: Callable, window=None,
                             law: str = "equivariance") -> list[LawReport]:
    """Two-sided equivariance of partial compositions under per-arity groups.

    left:  (a.g) o_i b = (a o_{slot(g,i)} b) . left(g, i, n)
    right: a o_i (b.h) = (a o_i b) . right(m, i, h)
    """
    W = {n: op.elements(n, window) for n in range(op.min_arity, nmax + 1)}
    G = {n: list(group(n)) for n in W}
    f = op.fmt
    tasks = list(_arity_pairs(op, nmax))

    def lcheck(t):
        m, n = t
        cnt = 0
        for a in W[m]:
            for g in G[m]:
                ag = act(a, g)
                for b in W[n]:
                    for i in range(1, m + 1):
                        cnt += 1
                        lhs = op.compose(ag, i, b)
                        rhs = act(op.compose(a, slot(g, i), b), left(g, i, n))
                        if lhs != rhs:
                            return cnt, ((f(a), str(g), i, f(b), f(lhs), f(rhs)), (a, g, i, b))
        return cnt, None

    def rcheck(t):
        m, n = t
        cnt = 0
        for a in W[m]:
            for b in W[n]:
                for h in G[n]:
                    bh = act(b, h)
                    for i in range(1, m + 1):
                        cnt += 1
                        lhs = op.compose(a, i, bh)
                        rhs = act(op.compose(a, i, b), right(m, i, h))
                        if lhs != rhs:
                            return cnt, ((f(a), i, f(b), str(h), f(lhs), f(rhs)), (a, i, b, h))
        return cnt, None

    return [_run(law + ":left", nmax, tasks, lcheck), _run(law + ":right", nmax, tasks, rcheck)]


def check_extra_action(op: Operad, ea: ExtraAction, nmax: int, window=None) -> list[LawReport]:
    W = {n: op.elements(n, window) for n in range(op.min_arity, nmax + 1)}
    f = op.fmt
    fn = ea.fn

    def comp(t):
        m, n = t
        cnt = 0
        for a in W[m]:
            fa = fn(a)
            for b in W[n]:
                fb = fn(b)
                for i in range(1, m + 1):
                    cnt += 1
                    j = i if ea.shape == "same" else m - i + 1
                    lhs = fn(op.compose(a, i, b))
                    rhs = op.compose(fa, j, fb)
                    if lhs != rhs:
                        return cnt, ((f(a), i, f(b), f(lhs), f(rhs)), (a, i, b))
        return cnt, None

    reports = [_run(f"action:{ea.name}", nmax, list(_arity_pairs(op, nmax)), comp)]

    def invol(n):
        cnt = 0
        for a in W[n]:
            cnt += 1
            if fn(fn(a)) != a:
                return cnt, ((f(a),), (a,))
        return cnt, None

    reports.append(_run(f"action:{ea.name}:involution", nmax, sorted(W), invol))
    if ea.lattice:
        def lat(n):
            L = op.component(n)
            cnt = 0
            for a in W[n]:
                for b in W[n]:
                    cnt += 1
                    if ea.lattice == "auto":
                        ok = fn(L.meet(a, b)) == L.meet(fn(a), fn(b)) and fn(L.join(a, b)) == L.join(fn(a), fn(b))
                    else:
                        ok = fn(L.meet(a, b)) == L.join(fn(a), fn(b)) and fn(L.join(a, b)) == L.meet(fn(a), fn(b))
                    if not ok:
                        return cnt, ((f(a), f(b)), (a, b))
            return cnt, None

        reports.append(_run(f"action:{ea.name}:{ea.lattice}morphism", nmax, sorted(W), lat))
    return reports


# ------------------------------------------------------ lattice compatibility

def check_lattice_compatibility(op: Operad, nmax: int, window=None, mode: str = "full",
                                argument: str = "both") -> list[LawReport]:
    """Distributivity of partial compositions over meet and join.

    mode 'full':     (p^r) o_i (q^s) = (p o_i q) ^ (r o_i s), and the same for joins
    mode 'separate': each argument on its own, e.g. (p^r) o_i q = (p o_i q) ^ (r o_i q)
    mode 'weak':     monotone in each argument plus the two four-variable inequalities
    ``argument`` restricts the separate and monotone checks to 'first' or 'second'.
    """
    W = {n: op.elements(n, window) for n in range(op.min_arity, nmax + 1)}
    f = op.fmt
    tasks = list(_arity_pairs(op, nmax))
    C = op.compose
    first = argument in ("both", "first")
    second = argument in ("both", "second")

    def target(m, n):
        return op.component(m + n - 1)

    def four(kind):
        def run(t):
            m, n = t
            P, Q, R = op.component(m), op.component(n), target(m, n)
            cnt = 0
            for p, r in itertools.product(W[m], repeat=2):
                pr = P.meet(p, r) if kind in ("meet", "ineq_meet") else P.join(p, r)
                for q, s in itertools.product(W[n], repeat=2):
                    qs = Q.meet(q, s) if kind in ("meet", "ineq_meet") else Q.join(q, s)
                    for i in range(1, m + 1):
                        cnt += 1
                        lhs = C(pr, i, qs)
                        pq, rs = C(p, i, q), C(r, i, s)
                        if kind == "meet":
                            ok = lhs == R.meet(pq, rs)
                        elif kind == "join":
                            ok = lhs == R.join(pq, rs)
                        elif kind == "ineq_meet":
                            ok = R.leq(R.meet(pq, rs), lhs)
                        else:
                            ok = R.leq(lhs, R.join(pq, rs))
                        if not ok:
                            return cnt, ((f(p), f(r), i, f(q), f(s)), (p, r, i, q, s))
            return cnt, None
        return run

    def sep(kind, arg):
        def run(t):
            m, n = t
            P, Q, R = op.component(m), op.component(n), target(m, n)
            op_src = (P if arg == "first" else Q)
            cnt = 0
            fixed, varying = (W[n], W[m]) if arg == "first" else (W[m], W[n])
            for x in fixed:
                for p, r in itertools.product(varying, repeat=2):
                    pr = op_src.meet(p, r) if kind == "meet" else op_src.join(p, r)
                    for i in range(1, m + 1):
                        cnt += 1
                        if arg == "first":
                            lhs, a1, a2 = C(pr, i, x), C(p, i, x), C(r, i, x)
                        else:
                            lhs, a1, a2 = C(x, i, pr), C(x, i, p), C(x, i, r)
                        rhs = R.meet(a1, a2) if kind == "meet" else R.join(a1, a2)
                        if lhs != rhs:
                            wit = (p, r, i, x) if arg == "first" else (x, i, p, r)
                            return cnt, (tuple(w if isinstance(w, int) else f(w) for w in wit), wit)
            return cnt, None
        return run

    def mono(arg):
        def run(t):
            m, n = t
            P, Q, R = op.component(m), op.component(n), target(m, n)
            src = P if arg == "first" else Q
            fixed, varying = (W[n], W[m]) if arg == "first" else (W[m], W[n])
            cnt = 0
            for p, r in itertools.product(varying, repeat=2):
                if p == r or not src.leq(p, r):
                    continue
                for x in fixed:
                    for i in range(1, m + 1):
                        cnt += 1
                        if arg == "first":
                            lo, hi = C(p, i, x), C(r, i, x)
                        else:
                            lo, hi = C(x, i, p), C(x, i, r)
                        if not R.leq(lo, hi):
                            return cnt, ((f(p), f(r), i, f(x), f(lo), f(hi)), (p, r, i, x))
            return cnt, None
        return run

    reports = []
    if mode == "full":
        reports.append(_run("meet_distributivity", nmax, tasks, four("meet")))
        reports.append(_run("join_distributivity", nmax, tasks, four("join")))
    elif mode == "separate":
        for arg, on in (("first", first), ("second", second)):
            if on:
                reports.append(_run(f"meet_distributivity:{arg}", nmax, tasks, sep("meet", arg)))
                reports.append(_run(f"join_distributivity:{arg}", nmax, tasks, sep("join", arg)))
    elif mode == "weak":
        for arg, on in (("first", first), ("second", second)):
            if on:
                reports.append(_run(f"monotone:{arg}", nmax, tasks, mono(arg)))
        reports.append(_run("meet_inequality", nmax, tasks, four("ineq_meet")))
        reports.append(_run("join_inequality", nmax, tasks, four("ineq_join")))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return reports


# ------------------------------------------------------------ lax morphisms

def check_lax(f: Callable[[Any], Any], K: Operad, L: Operad, nmax: int, window=None) -> list[LawReport]:
    """f(a) o_i f(b) <= f(a o_i b), plus the arity-wise lattice homomorphism property
    and, when both sides are symmetric, equivariance."""
    W = {n: K.elements(n, window) for n in range(K.min_arity, nmax + 1)}
    fk = K.fmt

    def hom(n):
        Kn, Ln = K.component(n), L.component(n)
        cnt = 0
        for a in W[n]:
            for b in W[n]:
                cnt += 1
                if f(Kn.meet(a, b)) != Ln.meet(f(a), f(b)) or f(Kn.join(a, b)) != Ln.join(f(a), f(b)):
                    return cnt, ((fk(a), fk(b)), (a, b))
        return cnt, None

    def lax(t):
        m, n = t
        T = L.component(m + n - 1)
        cnt = 0
        for a in W[m]:
            for b in W[n]:
                for i in range(1, m + 1):
                    cnt += 1
                    lo = L.compose(f(a), i, f(b))
                    hi = f(K.compose(a, i, b))
                    if not T.leq(lo, hi):
                        return cnt, ((fk(a), i, fk(b), L.fmt(lo), L.fmt(hi)), (a, i, b))
        return cnt, None

    reports = [_run("lattice_hom", nmax, sorted(W), hom),
               _run("lax", nmax, list(_arity_pairs(K, nmax)), lax)]
    if K.act is not None and L.act is not None:
        def eq(n):
            cnt = 0
            for a in W[n]:
                for s in _util.all_perms(n):
                    cnt += 1
                    if f(K.act(a, s)) != L.act(f(a), s):
                        return cnt, ((fk(a), str(s)), (a, s))
            return cnt, None

        reports.append(_run("equivariance", nmax, sorted(W), eq))
    return reports


def check_strict(f: Callable[[Any], Any], K: Operad, L: Operad, nmax: int, window=None) -> LawReport:
    """f(a) o_i f(b) = f(a o_i b) everywhere in the window."""
    W = {n: K.elements(n, window) for n in range(K.min_arity, nmax + 1)}

    def strict(t):
        m, n = t
        cnt = 0
        for a in W[m]:
            for b in W[n]:
                for i in range(1, m + 1):
                    cnt += 1
                    lo, hi = L.compose(f(a), i, f(b)), f(K.compose(a, i, b))
                    if lo != hi:
                        return cnt, ((K.fmt(a), i, K.fmt(b), L.fmt(lo), L.fmt(hi)), (a, i, b))
        return cnt, None

    return _run("strict", nmax, list(_arity_pairs(K, nmax)), strict)


def compose_lax(f: Callable, g: Callable) -> Callable:
    """g after f."""
    return lambda x: g(f(x))


# ------------------------------------------------------ generic constructions

@dataclass(frozen=True)
class Monoid:
    """A finite semigroup (unit optional) with an optional lattice on its letters."""

    elements: tuple
    mul: Callable[[Any, Any], Any]
    unit: Any = None
    lattice: Optional[Lattice] = None
    name: str = "M"

    def check_associative(self) -> None:
        for x, y, z in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise NonAssociative(f"({x}{y}){z} != {x}({y}{z}) in {self.name}")


def _word_kit(letters: Sequence):
    """String words for single-character alphabets, tuples otherwise."""
    if all(isinstance(x, str) and len(x) == 1 for x in letters):
        alphabet = set(letters)

        def parse_str(s):
            if s == "_":
                return ""
            bad = set(s) - alphabet
            if bad:
                raise ValueError(f"letters {''.join(sorted(bad))!r} not in {''.join(letters)!r}")
            return s

        return "".join, (lambda w: w if w else "_"), parse_str

    def fmt(w):
        return ",".join(map(str, w)) if w else "_"

    lookup = {str(x): x for x in letters}

    def parse(s):
        return () if s == "_" else tuple(lookup[t] for t in s.split(","))

    return tuple, fmt, parse


def _word_lattice(letters: Sequence, letter_lattice: Optional[Lattice], length: int, special: Optional[str],
                  truncation: Optional[str], join_word, name: str, arity: int) -> Lattice:
    words = [join_word(w) for w in itertools.product(letters, repeat=length)]
    if letter_lattice is None:
        # discrete carrier, no order
        return Lattice(lambda a, b: a if a == b else MISSING, lambda a, b: a if a == b else MISSING,
                       words, leq=lambda a, b: a == b, name=name)
    LL = letter_lattice
    if truncation is None:
        bottom = join_word([LL.bottom] * length) if LL.has_bottom else MISSING
        top = join_word([LL.top] * length) if LL.has_top else MISSING
        rank = None
        if LL.rank is not None:
            rank = lambda w: sum(LL.rank(x) for x in w)
        return Lattice(lambda a, b: join_word(map(LL.meet, a, b)),
                       lambda a, b: join_word(map(LL.join, a, b)),
                       words, leq=lambda a, b: all(map(LL.leq, a, b)),
                       bottom=bottom, top=top, rank=rank, name=name)
    sp = Special(special, arity)
    lower = truncation == "lower"
    extreme = LL.bottom if lower else LL.top

    def collapse(a, b):
        if isinstance(a, Special) or isinstance(b, Special):
            return sp
        w = join_word(map(LL.meet if lower else LL.join, a, b))
        return sp if extreme in w else w

    def free(a, b):
        if isinstance(a, Special):
            return b
        if isinstance(b, Special):
            return a
        return join_word(map(LL.join if lower else LL.meet, a, b))

    def leq(a, b):
        if a == b:
            return True
        a_sp, b_sp = isinstance(a, Special), isinstance(b, Special)
        if lower and a_sp or not lower and b_sp:
            return True
        if a_sp or b_sp:
            return False
        return all(map(LL.leq, a, b))

    rank = None
    if LL.rank is not None and lower:
        rank = lambda w: -1 if isinstance(w, Special) else sum(LL.rank(x) - 1 for x in w)
    carrier = [sp] + words
    if lower:
        return Lattice(collapse, free, carrier, leq=leq, bottom=sp,
                       top=join_word([LL.top] * length) if LL.has_top else MISSING, rank=rank, name=name)
    return Lattice(free, collapse, carrier, leq=leq, top=sp,
                   bottom=join_word([LL.bottom] * length) if LL.has_bottom else MISSING, name=name)


def build_word_operad(M: Monoid, *, tag: str = "", special: Optional[str] = None,
                      truncation: Optional[str] = None) -> Operad:
    """Words of length n over M; slot i is replaced by the inserted word multiplied by the letter p_i.

    With a truncation ('lower' or 'upper') the letter lattice's bottom (top) is
    not a letter: any word that would contain it collapses to the absorbing
    ``Special(special)``.
    """
    M.check_associative()
    letters = [x for x in M.elements if truncation is None or x not in _extremes(M.lattice, truncation)]
    join_word, fmt_w, parse_w = _word_kit(letters)

    def compose(a, i, b):
        if isinstance(a, Special) or isinstance(b, Special):
            return Special(special, _sp_arity(a, b))
        if not 1 <= i <= len(a):
            raise IndexOutOfRange(f"slot {i} outside 1..{len(a)}")
        x = a[i - 1]
        return a[:i - 1] + join_word(M.mul(x, y) for y in b) + a[i:]

    return Operad(
        tag or f"W({M.name})",
        compose,
        lambda n: _word_lattice(letters, M.lattice, n, special, truncation, join_word, f"{tag}({n})", n),
        arity=lambda w: w.arity if isinstance(w, Special) else len(w),
        fmt=lambda w: w.symbol if isinstance(w, Special) else fmt_w(w),
        parse=_special_parser(special, parse_w),
        unit=join_word([M.unit]) if M.unit is not None else None,
        act=lambda w, s: w if isinstance(w, Special) else join_word(_util.act_positions(w, s)),
        name=tag,
    )


def _extremes(L: Optional[Lattice], truncation: str):
    if L is None:
        return ()
    return (L.bottom,) if truncation == "lower" else (L.top,)


def _sp_arity(a, b):
    m = a.arity if isinstance(a, Special) else len(a)
    n = b.arity if isinstance(b, Special) else len(b)
    if m is None or n is None:
        return None
    return m + n - 1


def _special_parser(special, parse_w):
    def parse(s):
        if special and (s == special or s.startswith(special + "@")):
            return Special(special, int(s.split("@")[1]) if "@" in s else None)
        return parse_w(s)
    return parse


def build_m_associative(letters: Sequence, lattice: Optional[Lattice] = None, *, tag: str = "",
                        special: Optional[str] = None, truncation: Optional[str] = None,
                        reversal: bool = True) -> Operad:
    """Words of length n-1 over ``letters``; w' is inserted before the i-th letter of w.

    Arity 1 is the empty word, the unit.  ``#`` (word reversal) is registered
    as an extra action of shape 'reverse'.
    """
    alphabet = [x for x in letters if truncation is None or x not in _extremes(lattice, truncation)]
    join_word, fmt_w, parse_w = _word_kit(alphabet)

    def arity(w):
        return w.arity if isinstance(w, Special) else len(w) + 1

    def compose(a, i, b):
        if isinstance(a, Special) or isinstance(b, Special):
            m, n = arity(a), arity(b)
            return Special(special, None if m is None or n is None else m + n - 1)
        if not 1 <= i <= len(a) + 1:
            raise IndexOutOfRange(f"slot {i} outside 1..{len(a) + 1}")
        return a[:i - 1] + b + a[i - 1:]

    def component(n):
        return _word_lattice(alphabet, lattice, n - 1, special, truncation, join_word, f"{tag}({n})", n)

    def rev(w):
        if isinstance(w, Special):
            return w
        return w[::-1]

    extra = [ExtraAction("#", rev, "reverse", "auto" if lattice is not None else None)] if reversal else []
    return Operad(
        tag or "A(M)",
        compose,
        component,
        arity=arity,
        fmt=lambda w: w.symbol if isinstance(w, Special) else fmt_w(w),
        parse=_special_parser(special, parse_w),
        unit=join_word([]),
        extra_actions=extra,
        name=tag,
    )


def lift_operad(kind: str, P: Operad, window=None) -> Operad:
    """Interval operad, order-ideal operad or dual operad of a lattice operad.

    Interval and order-ideal components are built from P's finite components
    (or from ``window`` when given).
    """
    if kind == "dual":
        if P.tag.startswith("dual(") and hasattr(P, "_base"):
            return P._base  # dual is an involution
        D = Operad(f"dual({P.tag})", P._compose, lambda n: derived_lattice("dual", P.component(n)),
                   P.arity, fmt=P.fmt, parse=P._parse, unit=P.unit, act=P.act,
                   extra_actions=P.extra_actions, min_arity=P.min_arity, window=P.window,
                   vector=P.vector)
        D._base = P
        return D

    def base(n):
        L = P.component(n)
        if L.finite:
            return L
        if window is None and P.window is None:
            raise InfiniteCarrier(f"{P.tag}({n}) is infinite")
        els = list((window or P.window)(n))
        return Lattice(L.meet, L.join, els, leq=L.leq, bottom=L.bottom, top=L.top, fmt=L.fmt)

    arity_of: dict = {}

    if kind == "interval":
        def component(n):
            L = derived_lattice("interval", base(n))
            for x in L.elements:
                if x != EMPTY_INTERVAL:
                    arity_of[x] = n
            return L

        def arity(x):
            if isinstance(x, At):
                return x.arity
            return P.arity(x[0])

        def compose(x, i, y):
            if isinstance(x, At) or isinstance(y, At):
                return At(arity(x) + arity(y) - 1, EMPTY_INTERVAL)
            return (P.compose(x[0], i, y[0]), P.compose(x[1], i, y[1]))

        def wrap(n):
            # the empty interval carries its arity so that components stay disjoint
            L = component(n)
            e = At(n, EMPTY_INTERVAL)
            sub = lambda v: EMPTY_INTERVAL if v == e else v
            lift = lambda v: e if v == EMPTY_INTERVAL else v
            return Lattice(lambda a, b: lift(L.meet(sub(a), sub(b))), lambda a, b: lift(L.join(sub(a), sub(b))),
                           [lift(v) for v in L.elements], leq=lambda a, b: L.leq(sub(a), sub(b)),
                           bottom=e, top=L.top, fmt=lambda v: "[]" if v == e else L.fmt(v),
                           name=f"Int({P.tag})({n})")

        return Operad(f"Int({P.tag})", compose, wrap, arity,
                      fmt=lambda x: "[]" if isinstance(x, At) else f"[{P.fmt(x[0])};{P.fmt(x[1])}]",
                      unit=(P.unit, P.unit) if P.unit is not None else None,
                      min_arity=P.min_arity)

    if kind == "order_ideal":
        ideal_arity: dict = {}

        def component(n):
            B = base(n)
            L = derived_lattice("order_ideal", B)
            return Lattice(lambda a, b: At(n, L.meet(a.value, b.value)),
                           lambda a, b: At(n, L.join(a.value, b.value)),
                           [At(n, I) for I in L.elements], leq=lambda a, b: a.value <= b.value,
                           bottom=At(n, frozenset()), top=At(n, frozenset(B.elements)),
                           rank=lambda a: len(a.value), fmt=lambda a: L.fmt(a.value),
                           name=f"Ord({P.tag})({n})")

        def compose(x, i, y):
            N = x.arity + y.arity - 1
            B = base(N)
            images = {P.compose(p, i, q) for p in x.value for q in y.value}
            return At(N, frozenset(z for z in B.elements if any(B.leq(z, w) for w in images)))

        def fmt(x):
            return "{" + ",".join(sorted(P.fmt(e) for e in x.value)) + "}@" + str(x.arity)

        unit = None
        if P.unit is not None:
            B1 = base(1)
            unit = At(1, frozenset(z for z in B1.elements if B1.leq(z, P.unit)))
        return Operad(f"Ord({P.tag})", compose, component, lambda x: x.arity, fmt=fmt, unit=unit,
                      min_arity=P.min_arity)
    raise ValueError(f"unknown lift {kind!r}")


# ------------------------------------------------------- suboperad generation

def generate_suboperad(op: Operad, generators: Iterable, nmax: int, symmetric: bool = False,
                       lattice_closure: bool = True, budget: int = 2_000_000,
                       include_unit: bool = True) -> dict[int, frozenset]:
    """Least family closed under o_i (within arities <= nmax), meet/join and, if asked, the S_n action.

    Arities are completed in increasing order; an arity-n element can only come
    from arity-n generators, composites of strictly smaller arities, or
    composites with arity-1 members, which are iterated to a fixed point.
    Vector operads (integer tuples) hand the lattice closure to the compiled
    kernel, after checking the finite box every member must lie in.
    """
    gens = list(generators)
    by_arity: dict[int, set] = {}
    for g in gens:
        by_arity.setdefault(op.arity(g), set()).add(g)
    S: dict[int, frozenset] = {}
    unit = op.unit if include_unit else None
    if op.vector:
        from . import kernels
        box = kernels.box_bounds([g for g in gens if g != unit], nmax)
    for n in range(op.min_arity, nmax + 1):
        cur = set(by_arity.get(n, ()))
        if n == 1 and unit is not None:
            cur.add(unit)
        for m in range(2, n):
            k = n - m + 1
            if k < 2:
                continue
            for a in S.get(m, ()):
                for b in S.get(k, ()):
                    for i in range(1, m + 1):
                        cur.add(op.compose(a, i, b))
        ones = [u for u in S.get(1, ()) if u != unit] if n > 1 else []
        if op.vector and (ones or (n == 1 and cur - {unit})):
            raise BudgetExceeded("an arity-1 generator other than the unit generates infinitely many elements")
        while True:
            before = set(cur)
            if n == 1:
                cur |= {op.compose(a, 1, b) for a in before for b in before}
            for u in ones:
                for a in before:
                    cur.add(op.compose(u, 1, a))
                    cur.update(op.compose(a, i, u) for i in range(1, n + 1))
            if op.vector:
                cur = _vector_close(cur, n, symmetric, lattice_closure, box, budget)
            else:
                if symmetric and op.act is not None:
                    cur |= {op.act(x, s) for x in list(cur) for s in _util.all_perms(n)}
                if lattice_closure:
                    cur = _lattice_close(op.component(n), cur, budget)
            if len(cur) > budget:
                raise BudgetExceeded(f"arity {n} exceeded {budget} elements")
            if cur == before or (n > 1 and not ones):
                break
        S[n] = frozenset(cur)
    return S


def _lattice_close(L: Lattice, xs: set, budget: int) -> set:
    out = set(xs)
    frontier = list(out)
    while frontier:
        nxt = []
        snapshot = list(out)
        for a in frontier:
            for b in snapshot:
                for c in (L.meet(a, b), L.join(a, b)):
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
        if len(out) > budget:
            raise BudgetExceeded(f"lattice closure exceeded {budget} elements")
        frontier = nxt
    return out


def _vector_close(cur: set, n: int, symmetric: bool, lattice_closure: bool, box, budget: int) -> set:
    import numpy as np

    from . import kernels

    if not cur:
        return cur
    rows = np.array(sorted(cur), dtype=np.int64).reshape(len(cur), n)
    lo, hi = box(n)
    if symmetric and n > 1:
        perms = np.array(_util.all_perms(n), dtype=np.int64) - 1
        rows = kernels.orbit(rows, perms, min(lo, int(rows.min())), max(hi, int(rows.max())))
    if lattice_closure:
        rows = kernels.lattice_closure(rows, lo, hi, budget)
    return {tuple(int(v) for v in r) for r in rows}
