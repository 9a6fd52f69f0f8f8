"""Subspaces of Q^d in canonical reduced row-echelon form.

Vectors are sparse: dicts from coordinate to Fraction, zeros omitted.  A
subspace keeps its reduced rows sorted by pivot, so equal subspaces compare
and hash equal.  Meets solve the linear equations cutting out the larger
subspace on a basis of the smaller one.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from ..errors import LengthMismatch

Vector = dict  # column -> Fraction


def vector(entries: Mapping[int, object]) -> Vector:
    return {k: Fraction(v) for k, v in entries.items() if v}


class _Echelon:
    """Mutable fully reduced echelon basis, keyed by pivot column."""

    def __init__(self) -> None:
        self.rows: dict[int, Vector] = {}

    def reduce(self, v: Mapping[int, Fraction]) -> Vector:
        items = v.items() if isinstance(v, Mapping) else v  # frozen rows are tuples of pairs
        out = {k: x for k, x in items if x}
        # rows are fully reduced, so eliminating the pivots present in v never creates new ones
        for c in sorted(set(out) & self.rows.keys()):
            f = out.get(c)
            if not f:
                continue
            for k, x in self.rows[c].items():
                y = out.get(k, 0) - f * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
        return out

    def add(self, v: Mapping[int, Fraction]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if c != 1:
            r = {k: x / c for k, x in r.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for k, x in r.items():
                    y = row.get(k, 0) - f * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return True

    def freeze(self) -> tuple:
        return tuple((p, tuple(sorted(self.rows[p].items()))) for p in sorted(self.rows))


class Subspace:
    """A subspace of the ``dim``-dimensional coordinate space, tagged with an optional arity."""

    __slots__ = ("dim", "rows", "arity", "_coords", "_hash", "_red")

    def __init__(self, dim: int, rows: tuple = (), arity: Optional[int] = None):
        self.dim = dim
        self.rows = rows
        self.arity = arity
        coords = [p for p, r in rows if len(r) == 1]
        self._coords = frozenset(coords) if len(coords) == len(rows) else None
        self._hash = hash((dim, rows, arity))
        self._red: Optional[_Echelon] = None

    # constructors

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Mapping[int, object]], arity: Optional[int] = None) -> "Subspace":
        E = _Echelon()
        for v in vectors:
            v = v if all(isinstance(x, Fraction) for x in v.values()) else vector(v)
            if any(not 0 <= k < dim for k in v):
                raise LengthMismatch(f"vector {v} outside dimension {dim}")
            E.add(v)
        return cls(dim, E.freeze(), arity)

    @classmethod
    def zero(cls, dim: int, arity: Optional[int] = None) -> "Subspace":
        return cls(dim, (), arity)

    @classmethod
    def full(cls, dim: int, arity: Optional[int] = None) -> "Subspace":
        return cls.coordinate(dim, range(dim), arity)

    @classmethod
    def coordinate(cls, dim: int, cols: Iterable[int], arity: Optional[int] = None) -> "Subspace":
        one = Fraction(1)
        return cls(dim, tuple((c, ((c, one),)) for c in sorted(set(cols))), arity)

    # basic queries

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def basis(self) -> list[Vector]:
        return [dict(r) for _, r in self.rows]

    def _echelon(self) -> _Echelon:
        E = _Echelon()
        E.rows = {p: dict(r) for p, r in self.rows}
        return E

    def _reducer(self) -> _Echelon:
        """Shared echelon used only for reduction, never mutated."""
        if self._red is None:
            self._red = self._echelon()
        return self._red

    def reduce(self, v: Mapping[int, object]) -> Vector:
        """Remainder of v modulo this subspace (zero iff v lies in it)."""
        return self._reducer().reduce(vector(v))

    def contains(self, v: Mapping[int, object]) -> bool:
        v = vector(v)
        if self._coords is not None:
            return set(v) <= self._coords
        return not self.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _check(self, other: "Subspace") -> None:
        if self.dim != other.dim or self.arity != other.arity:
            raise LengthMismatch(f"subspaces of Q^{self.dim}@{self.arity} and Q^{other.dim}@{other.arity}")

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.rank > other.rank:
            return False
        if other._coords is not None:
            return all(set(dict(r)) <= other._coords for _, r in self.rows)
        E = other._reducer()
        return all(not E.reduce(r) for _, r in self.rows)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __lt__(self, other: "Subspace") -> bool:
        return self != other and self <= other

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self._hash == other._hash and self.dim == other.dim
                and self.arity == other.arity and self.rows == other.rows)

    def __hash__(self) -> int:
        return self._hash

    # lattice operations

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self._coords is not None and other._coords is not None:
            return Subspace.coordinate(self.dim, self._coords | other._coords, self.arity)
        big, small = (self, other) if self.rank >= other.rank else (other, self)
        E = big._echelon()
        changed = False
        for _, r in small.rows:
            changed |= E.add(dict(r))
        return Subspace(self.dim, E.freeze(), self.arity) if changed else big

    def meet(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self._coords is not None and other._coords is not None:
            return Subspace.coordinate(self.dim, self._coords & other._coords, self.arity)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.dim, self.arity)
        if self <= other:
            return self
        if other <= self:
            return other
        # W = {x : x_c = sum_p x_p W_p[c] for every non-pivot column c}; solve for U's coefficients
        U, W = (self, other) if self.rank <= other.rank else (other, self)
        pivots = {p for p, _ in W.rows}
        eqs: dict[int, dict[int, Fraction]] = {}
        for p, r in W.rows:
            for c, x in r:
                if c not in pivots:
                    eqs.setdefault(c, {})[p] = x
        cols = {c: k for k, c in enumerate(sorted(set(range(self.dim)) - pivots))}
        ne = len(cols)
        E = _Echelon()
        basis = U.basis()
        for k, u in enumerate(basis):
            row: dict[int, Fraction] = {}
            for c, x in u.items():
                if c in cols:
                    row[cols[c]] = row.get(cols[c], 0) + x
            for c, coeffs in eqs.items():
                acc = sum((u[p] * x for p, x in coeffs.items() if p in u), Fraction(0))
                if acc:
                    row[cols[c]] = row.get(cols[c], 0) - acc
            row = {j: x for j, x in row.items() if x}
            row[ne + k] = Fraction(1)
            E.add(row)
        out = []
        for p, row in E.rows.items():
            if p >= ne:
                v: dict[int, Fraction] = {}
                for j, lam in row.items():
                    for c, x in basis[j - ne].items():
                        y = v.get(c, 0) + lam * x
                        if y:
                            v[c] = y
                        else:
                            v.pop(c, None)
                out.append(v)
        return Subspace.span(self.dim, out, self.arity)

    __add__ = join
    __or__ = join
    __and__ = meet

    def image(self, fn, dim: int, arity: Optional[int] = None) -> "Subspace":
        """Span of fn(b) over the basis; fn must be linear on sparse vectors."""
        return Subspace.span(dim, (fn(dict(r)) for _, r in self.rows), arity)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, rank={self.rank}, arity={self.arity})"


def fmt_vector(v: Mapping[int, Fraction], labels=None) -> str:
    """'x0 - 1/2*x3' style rendering; labels maps a column to its name."""
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        name = str(labels[k]) if labels is not None else f"x{k}"
        mag = abs(c)
        term = name if mag == 1 else f"{mag}*{name}"
        parts.append(("- " if c < 0 else "+ ") + term)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]
