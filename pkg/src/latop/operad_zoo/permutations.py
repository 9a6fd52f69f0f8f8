"""Permutations in one-line notation under the weak order, with block substitution."""
from __future__ import annotations

from functools import cmp_to_key, lru_cache
from itertools import permutations as _perms

from ..errors import IndexOutOfRange, LengthMismatch, NoPermutationForClosure
from ..lattice_core import Lattice
from ..operad_core import ExtraAction, Operad


def perm_compose(a: tuple, i: int, b: tuple) -> tuple:
    """Substitute (b_1+a_i-1, .., b_n+a_i-1) for a_i; entries above a_i move up by n-1."""
    m, n = len(a), len(b)
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"slot {i} outside 1..{m}")
    ai = a[i - 1]
    head = tuple(x + n - 1 if x > ai else x for x in a[:i - 1])
    tail = tuple(x + n - 1 if x > ai else x for x in a[i:])
    return head + tuple(y + ai - 1 for y in b) + tail


def inversions(u) -> frozenset:
    """Inv(u) = {(u_i, u_j) : i < j, u_i > u_j}."""
    return frozenset((u[i], u[j]) for i in range(len(u)) for j in range(i + 1, len(u)) if u[i] > u[j])


def inversion_image(a: tuple, i: int, b: tuple) -> dict[str, frozenset]:
    """The four blocks whose disjoint union is Inv(a o_i b)."""
    n, ai = len(b), a[i - 1]

    def sh(t):
        return t + n - 1 if t > ai else t

    A = inversions(a)
    return {
        "A_ne": frozenset((sh(p), sh(q)) for p, q in A if p != ai and q != ai),
        "A_gt": frozenset((p + n - 1, k + ai - 1) for p, q in A if q == ai for k in range(1, n + 1)),
        "A_lt": frozenset((k + ai - 1, q) for p, q in A if p == ai for k in range(1, n + 1)),
        "B": frozenset((p + ai - 1, q + ai - 1) for p, q in inversions(b)),
    }


def transitive_closure(pairs) -> frozenset:
    rel = set(pairs)
    while True:
        extra = {(p, s) for p, q in rel for r, s in rel if q == r} - rel
        if not extra:
            return frozenset(rel)
        rel |= extra


def from_inversions(inv, n: int) -> tuple:
    """The permutation with the given inversion set; p precedes q (p > q) iff (p, q) is an inversion."""
    inv = frozenset(inv)

    def before(x, y):
        if x == y:
            return 0
        hi, lo = max(x, y), min(x, y)
        hi_first = (hi, lo) in inv
        return -1 if (x == hi) == hi_first else 1

    u = tuple(sorted(range(1, n + 1), key=cmp_to_key(before)))
    if inversions(u) != inv:
        raise NoPermutationForClosure(f"{sorted(inv)} is not an inversion set")
    return u


def reverse(u: tuple) -> tuple:
    return u[::-1]


def perm_join(a, b) -> tuple:
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} != {len(b)}")
    return from_inversions(transitive_closure(inversions(a) | inversions(b)), len(a))


def perm_meet(a, b) -> tuple:
    return reverse(perm_join(reverse(a), reverse(b)))


def perm_leq(a, b) -> bool:
    return inversions(a) <= inversions(b)


def fmt_perm(u) -> str:
    if len(u) > 9:
        return " ".join(map(str, u))
    return "".join(map(str, u))


def parse_perm(text: str) -> tuple:
    text = text.strip()
    u = tuple(int(t) for t in (text.split() if " " in text else text))
    if sorted(u) != list(range(1, len(u) + 1)):
        raise ValueError(f"{text} is not a permutation")
    return u


@lru_cache(maxsize=None)
def _all(n: int) -> tuple:
    return tuple(_perms(range(1, n + 1)))


def perm() -> Operad:
    def component(n):
        return Lattice(perm_meet, perm_join, _all(n), leq=perm_leq, bottom=tuple(range(1, n + 1)),
                       top=tuple(range(n, 0, -1)), rank=lambda u: len(inversions(u)),
                       fmt=fmt_perm, name=f"Perm({n})")

    return Operad("perm", perm_compose, component, len, fmt=fmt_perm, parse=parse_perm, unit=(1,),
                  extra_actions=[ExtraAction("#", reverse, "reverse", "anti")], name="Perm")
