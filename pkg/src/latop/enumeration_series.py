"""Component enumeration, rank-generating series and the multi-index appendix tables.

Coefficients are exact :class:`~fractions.Fraction` values keyed by ``(n, k)``
(arity, rank); univariate tables use ``k = None``.  Closed forms are rational
functions in z and t expanded by plain power-series division.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

import numpy as np

from .errors import BudgetExceeded, NoRankFunction
from .lattice_core import Lattice, hasse_dot
from .operad_core import Operad, Special, generate_suboperad

__all__ = [
    "enumerate_component",
    "canonical_order",
    "component_dot",
    "vector_hasse_dot",
    "SeriesCoefficients",
    "series_coefficients",
    "expand_rational",
    "comp_closed_form",
    "comp_b_closed_form",
    "closed_form_mismatches",
    "AppendixReport",
    "reproduce_appendix",
]


# ----------------------------------------------------------------- enumeration

def canonical_order(op: Operad, elements: Iterable) -> list:
    """Native order for plain strings or integer tuples, printed form otherwise."""
    els = list(elements)
    if all(type(x) is str for x in els) or all(
            type(x) is tuple and all(type(v) is int for v in x) for x in els):
        return sorted(els)
    return sorted(els, key=lambda x: (op.fmt(x) if not isinstance(x, Special) else "", op.fmt(x)))


def enumerate_component(op: Operad, n: int, window: Optional[Callable[[int], Iterable]] = None) -> list:
    """Every element of op(n), or of the window at n, once each and canonically ordered.

    Raises InfiniteCarrier when the component is infinite and no window is known.
    """
    els = op.elements(n, window)
    seen = set(els)
    if len(seen) != len(els):
        els = list(seen)
    return canonical_order(op, els)


def component_dot(op: Operad, n: int, window=None, name: Optional[str] = None) -> str:
    """Hasse diagram of op(n) (or its window) in DOT, using the component order."""
    L = op.component(n)
    els = enumerate_component(op, n, window)
    if op.vector:
        return vector_hasse_dot(op, els, name or f"{op.tag}({n})")
    sub = Lattice(L.meet, L.join, els, leq=L.leq, fmt=op.fmt, name=L.name)
    return hasse_dot(sub, name or f"{op.tag}({n})")


def _vector_covers(rows: np.ndarray) -> list[tuple[int, int]]:
    """Cover pairs of a finite set of integer vectors under the product order."""
    N = len(rows)
    if N == 0:
        return []
    le = np.all(rows[:, None, :] <= rows[None, :, :], axis=2)
    lt = le & ~np.eye(N, dtype=bool)
    m = lt.astype(np.float32)
    between = (m @ m) > 0
    cov = lt & ~between
    return list(zip(*(a.tolist() for a in np.nonzero(cov))))


def vector_hasse_dot(op: Operad, elements: Iterable, name: str) -> str:
    """DOT for a set of integer vectors; same layout as :func:`hasse_dot`."""
    els = sorted(elements)
    rows = np.array(els, dtype=np.int64).reshape(len(els), -1)
    f = op.fmt
    lines = sorted(f'  "{f(els[a])}" -- "{f(els[b])}";' for a, b in _vector_covers(rows))
    nodes = sorted(f'  "{f(x)}";' for x in els)
    return "graph \"" + name.replace('"', "'") + "\" {\n" + "\n".join(nodes + lines) + "\n}\n"


# ---------------------------------------------------------------------- series

@dataclass
class SeriesCoefficients:
    """Coefficient table of a counting series.

    ``coeffs[(n, k)]`` is the coefficient of t^k z^n; univariate tables use k = None.
    ``symmetric`` records that counts were divided by n!.
    """

    tag: str
    nmax: int
    bivariate: bool
    symmetric: bool
    coeffs: dict = field(default_factory=dict)

    def coefficient(self, n: int, k: Optional[int] = None) -> Fraction:
        return self.coeffs.get((n, k), Fraction(0))

    def univariate(self) -> "SeriesCoefficients":
        """Evaluation at t = 1."""
        out: dict = {}
        for (n, _), c in self.coeffs.items():
            out[(n, None)] = out.get((n, None), Fraction(0)) + c
        return SeriesCoefficients(self.tag, self.nmax, False, self.symmetric, out)

    def polynomial(self, n: int) -> dict[int, Fraction]:
        """Rank-generating polynomial of arity n as {k: coefficient}."""
        return {k: c for (m, k), c in sorted(self.coeffs.items(), key=_key) if m == n}

    def rows(self) -> list[tuple]:
        return [(n, k, c.numerator, c.denominator) for (n, k), c in sorted(self.coeffs.items(), key=_key)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "numerator", "denominator"])
        for n, k, a, b in self.rows():
            w.writerow([n, "" if k is None else k, a, b])
        return buf.getvalue()


def _key(item):
    (n, k), _ = item
    return (n, -1 if k is None else k)


def series_coefficients(op: Operad, nmax: int, bivariate: bool = False, window=None,
                        nmin: Optional[int] = None, include_special: bool = False,
                        rank: Optional[Callable] = None) -> SeriesCoefficients:
    """Counting series of op up to z^nmax, optionally graded by the component rank.

    Distinguished special elements (the empty face, the adjoined top) are left
    out unless ``include_special``; they carry no meaningful rank.  Symmetric
    operads are counted with weight 1/n!.
    """
    lo = op.min_arity if nmin is None else nmin
    out: dict = {}
    for n in range(lo, nmax + 1):
        L = op.component(n)
        r = rank or L.rank
        if bivariate and r is None:
            raise NoRankFunction(f"{op.tag}({n}) has no rank function")
        scale = Fraction(1, math.factorial(n)) if op.symmetric else Fraction(1)
        for x in op.elements(n, window):
            if isinstance(x, Special) and not include_special:
                continue
            key = (n, r(x)) if bivariate else (n, None)
            out[key] = out.get(key, Fraction(0)) + scale
    return SeriesCoefficients(op.tag, nmax, bivariate, op.symmetric, out)


Poly2 = Mapping[tuple[int, int], object]  # (power of z, power of t) -> coefficient


def expand_rational(num: Poly2, den: Poly2, nmax: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of num/den through z^nmax; den must have constant term 1 in z.

    Coefficients are polynomials in t, so the result is keyed (n, k) for t^k z^n.
    """
    num = {k: Fraction(v) for k, v in num.items() if v}
    den = {k: Fraction(v) for k, v in den.items() if v}
    if den.get((0, 0)) != 1 or any(i == 0 and j for i, j in den):
        raise ValueError("denominator must be 1 + z*(...)")
    out: dict[tuple[int, int], Fraction] = {}
    for n in range(nmax + 1):
        row: dict[int, Fraction] = {}
        for (i, j), c in num.items():
            if i == n:
                row[j] = row.get(j, Fraction(0)) + c
        # a_n = num_n - sum_{i>=1} den_i * a_{n-i}
        for (i, j), d in den.items():
            if 1 <= i <= n:
                for (m, k), a in out.items():
                    if m == n - i:
                        row[j + k] = row.get(j + k, Fraction(0)) - d * a
        for k, c in row.items():
            if c:
                out[(n, k)] = c
    return out


def comp_closed_form(nmax: int) -> dict:
    """z^2 (1 + t) / (1 - z - t z)."""
    return expand_rational({(2, 0): 1, (2, 1): 1}, {(0, 0): 1, (1, 0): -1, (1, 1): -1}, nmax)


def comp_b_closed_form(nmax: int) -> dict:
    """z^2 (2 + t) / (1 - 2 z - t z)."""
    return expand_rational({(2, 0): 2, (2, 1): 1}, {(0, 0): 1, (1, 0): -2, (1, 1): -1}, nmax)


def closed_form_mismatches(sc: SeriesCoefficients, closed: Mapping[tuple[int, int], Fraction],
                           nmin: int = 0) -> list[tuple]:
    """(n, k, computed, expected) for every disagreeing coefficient with nmin <= n <= sc.nmax."""
    keys = {k for k in sc.coeffs if nmin <= k[0] <= sc.nmax} | {k for k in closed if nmin <= k[0] <= sc.nmax}
    bad = []
    for n, k in sorted(keys, key=lambda t: (t[0], -1 if t[1] is None else t[1])):
        got, want = sc.coeffs.get((n, k), Fraction(0)), closed.get((n, k), Fraction(0))
        if got != want:
            bad.append((n, k, got, want))
    return bad


# -------------------------------------------------------------------- appendix

@dataclass
class AppendixReport:
    nmax: int
    components: dict = field(default_factory=dict)  # name -> {arity: frozenset}
    cardinalities: dict = field(default_factory=dict)  # name -> {arity: int}
    fixed_points: dict = field(default_factory=dict)  # name -> bool
    formula: dict = field(default_factory=dict)  # arity -> ((n-1)^n, computed)
    dot_files: list = field(default_factory=list)
    skipped_dot: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(a == b for a, b in self.formula.values()) and all(self.fixed_points.values())

    def lines(self) -> list[str]:
        out = []
        for name in sorted(self.cardinalities):
            for n, c in sorted(self.cardinalities[name].items()):
                out.append(json.dumps({"family": name, "arity": n, "size": c,
                                       "fixed_point": self.fixed_points.get(name)}, sort_keys=True))
        for n, (want, got) in sorted(self.formula.items()):
            out.append(json.dumps({"check": "(n-1)^n", "arity": n, "expected": want, "computed": got,
                                   "status": "pass" if want == got else "fail"}, sort_keys=True))
        return out


# (label, generators, symmetric, arities reported)
_FAMILIES = (
    ("N(1,1)", [(1, 1)], False, (3, 4, 5)),
    ("N(-1,1)", [(-1, 1)], False, (3, 4, 5)),
    ("N(1,1,1)", [(1, 1, 1)], False, (3, 5)),
    ("M(1,1)", [(1, 1)], True, None),
)


def reproduce_appendix(nmax: int = 6, out_dir: Optional[str] = None, max_arity: int = 6,
                       dot_limit: int = 1100, check_fixed: bool = True) -> AppendixReport:
    """Suboperads of the multi-index operad generated by small arity-2 and arity-3 indices.

    The symmetric family M(1,1) is checked against (n-1)^n for 2 <= n <= nmax.
    Each non-symmetric family is regenerated from its own members to confirm
    it is closed.  Hasse diagrams with at most ``dot_limit`` elements go to out_dir.
    """
    from .operad_zoo.multi_index import mz

    if nmax > max_arity:
        raise BudgetExceeded(f"nmax {nmax} exceeds the appendix budget {max_arity}")
    t0 = time.perf_counter()
    op = mz()
    rep = AppendixReport(nmax)
    for name, gens, sym, arities in _FAMILIES:
        top = nmax if arities is None else min(nmax, max(arities))
        if top < 2:
            continue
        S = generate_suboperad(op, gens, top, symmetric=sym)
        keep = range(2, top + 1) if arities is None else [n for n in arities if n <= top]
        rep.components[name] = {n: S.get(n, frozenset()) for n in keep}
        rep.cardinalities[name] = {n: len(S.get(n, ())) for n in keep}
        if check_fixed and not sym:
            members = [x for n in range(1, top + 1) for x in S.get(n, ())]
            again = generate_suboperad(op, members, top, symmetric=False)
            rep.fixed_points[name] = all(again.get(n, frozenset()) == S.get(n, frozenset())
                                         for n in range(1, top + 1))
        if sym:
            for n in keep:
                rep.formula[n] = ((n - 1) ** n, len(S.get(n, ())))
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for name, comps in sorted(rep.components.items()):
            for n, els in sorted(comps.items()):
                fname = f"{_slug(name)}_{n}.dot"
                if len(els) > dot_limit:
                    rep.skipped_dot.append(fname)
                    continue
                path = os.path.join(out_dir, fname)
                with open(path, "w") as fh:
                    fh.write(vector_hasse_dot(op, els, f"{name}({n})"))
                rep.dot_files.append(path)
    rep.seconds = time.perf_counter() - t0
    return rep


def _slug(name: str) -> str:
    return name.replace("(", "_").replace(")", "").replace(",", "_").replace("-", "m")
