"""Word-shaped operads: subsets, compositions Comp, ternary words T and T^v, the type-B
compositions Comp_B, Comp_B^v, Comp_D, and their codecs.

Words are strings over '0', '1', '+', '-'.  ``E`` is the absorbing bottom of
the lower-truncated flavours and ``U`` the absorbing top of the dual ones.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Optional

from .. import _util
from ..errors import AlphabetMismatch, IndexOutOfRange, InvalidPartitionShape
from ..lattice_core import Lattice, from_poset, rhombus
from ..operad_core import (
    At,
    ExtraAction,
    LawReport,
    Monoid,
    Operad,
    Special,
    build_m_associative,
    build_word_operad,
    check_group_equivariance,
)

E = "E"
U = "U"
SIGN_LETTERS = "0+-"
_FLIP = {"+": "-", "-": "+", "0": "0"}


def sign_mul(x: str, y: str) -> str:
    """The sign semigroup: 0 absorbs, + is the unit, - squares to +."""
    if x == "0" or y == "0":
        return "0"
    return "+" if x == y else "-"


SIGNS = Monoid(tuple(SIGN_LETTERS), sign_mul, unit="+", lattice=rhombus(), name="signs")
SIGNS_DUAL = Monoid(tuple(SIGN_LETTERS), sign_mul, unit="+",
                    lattice=from_poset("U+-0", lambda a, b: a == b or a == "0" or b == "U", name="rhombus^op"),
                    name="signs^op")


def flip_word(w):
    if isinstance(w, Special):
        return w
    return "".join(_FLIP[c] for c in w)


# ------------------------------------------------------------------- subsets

def subset_compose(P: At, i: int, Q: At, absorbing: bool = False) -> At:
    """Keep the inserted block iff i is in P; later elements shift by m-1."""
    n, m = P.arity, Q.arity
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"slot {i} outside 1..{n}")
    N = n + m - 1
    if absorbing and (not P.value or not Q.value):
        return At(N, frozenset())
    out = {x for x in P.value if x < i} | {x + m - 1 for x in P.value if x > i}
    if i in P.value:
        out |= {y + i - 1 for y in Q.value}
    return At(N, frozenset(out))


def _fmt_subset(x: At) -> str:
    return "[" + ",".join(map(str, sorted(x.value))) + f"]@{x.arity}"


def _parse_subset(text: str) -> At:
    body, _, n = text.partition("@")
    body = body.strip("[]{}")
    vals = frozenset(int(t) for t in body.split(",") if t)
    arity = int(n) if n else max(vals, default=1)
    if any(not 1 <= v <= arity for v in vals):
        raise ValueError(f"{text} leaves [1..{arity}]")
    return At(arity, vals)


def subsets(absorbing: bool = False) -> Operad:
    """All subsets of [n]; with ``absorbing`` the empty set absorbs in both slots."""
    def component(n):
        els = [At(n, frozenset(c)) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]
        return Lattice(lambda a, b: At(n, a.value & b.value), lambda a, b: At(n, a.value | b.value),
                       els, leq=lambda a, b: a.value <= b.value, bottom=els[0], top=els[-1],
                       rank=lambda a: len(a.value), fmt=_fmt_subset, name=f"S({n})")

    def act(x: At, s):
        return At(x.arity, frozenset(k for k in range(1, x.arity + 1) if s[k - 1] in x.value))

    return Operad("subset-diamond" if absorbing else "subset",
                  lambda a, i, b: subset_compose(a, i, b, absorbing), component, lambda x: x.arity,
                  fmt=_fmt_subset, parse=_parse_subset, unit=At(1, frozenset({1})), act=act,
                  name="S")


def triassociative_relations() -> dict:
    """Composites of the three arity-2 nonempty subsets, grouped by value."""
    gens = [At(2, frozenset(s)) for s in ({1}, {2}, {1, 2})]
    groups: dict = {}
    for a, b in itertools.product(gens, repeat=2):
        for i in (1, 2):
            groups.setdefault(subset_compose(a, i, b), []).append((a, i, b))
    n_composites = sum(len(v) for v in groups.values())
    return {"composites": n_composites, "values": len(groups), "relations": n_composites - len(groups),
            "groups": groups}


# ---------------------------------------------------------------------- Comp

def comp() -> Operad:
    """Boolean words of length n-1 with gap insertion; # reverses, * flips bits."""
    bits = Lattice(min, max, "01", leq=lambda a, b: a <= b, bottom="0", top="1", rank=int, name="B1")
    op = build_m_associative("01", bits, tag="comp")
    star = ExtraAction("*", lambda w: w.translate(str.maketrans("01", "10")), "same", "anti")
    op.extra_actions = op.extra_actions + (star,)
    return op


def gap_insert_compose(alphabet: str, a, i: int, b, absorber: Optional[str] = None):
    """(a_1..a_{i-1}) b (a_i..a_{m-1}) with an optional absorbing symbol."""
    if absorber is not None and (a == absorber or b == absorber):
        return absorber
    for w in (a, b):
        if any(c not in alphabet for c in w):
            raise AlphabetMismatch(f"{w!r} is not a word over {alphabet!r}")
    if not 1 <= i <= len(a) + 1:
        raise IndexOutOfRange(f"slot {i} outside 1..{len(a) + 1}")
    return a[:i - 1] + b + a[i - 1:]


# ----------------------------------------------------------- T, T^v, Comp_B...

def ternary() -> Operad:
    """T(n): sign words of length n plus E; word operad over the sign semigroup."""
    op = build_word_operad(SIGNS, tag="t", special=E, truncation="lower")
    op.act = None  # acted on by the hyperoctahedral group instead, see act_b
    return op


def ternary_dual() -> Operad:
    op = build_word_operad(SIGNS_DUAL, tag="tv", special=U, truncation="upper")
    op.act = None
    return op


def comp_b() -> Operad:
    op = build_m_associative(SIGN_LETTERS, rhombus(), tag="comp_b", special=E, truncation="lower")
    op.extra_actions = op.extra_actions + (ExtraAction("flip", flip_word, "same", "auto"),)
    return op


def comp_b_dual() -> Operad:
    op = build_m_associative(SIGN_LETTERS, SIGNS_DUAL.lattice, tag="comp_bv", special=U, truncation="upper")
    op.extra_actions = op.extra_actions + (ExtraAction("flip", flip_word, "same", "auto"),)
    return op


def comp_d_member(w) -> bool:
    if isinstance(w, Special) or w == E:
        return True
    zeros = w.count("0")
    if zeros == 0:
        return w.count("-") % 2 == 0
    return zeros >= 2


def comp_d() -> Operad:
    """The words of Comp_B satisfying comp_d_member, with the induced order."""
    B = comp_b()

    def component(n):
        L = B.component(n)
        els = [x for x in L.elements if comp_d_member(x)]
        return from_poset(els, L.leq, name=f"Comp_D({n})", fmt=B.fmt)

    return Operad("comp_d", B._compose, component, B.arity, fmt=B.fmt, parse=B._parse, unit=B.unit,
                  extra_actions=[ea for ea in B.extra_actions if ea.name == "#"], name="Comp_D")


# ------------------------------------------------------------ hyperoctahedral

def hyperoctahedral(n: int) -> list[tuple]:
    """B_n as pairs (sigma, g) with sigma in S_n and g in {0,1}^n."""
    return [(s, g) for s in _util.all_perms(n) for g in itertools.product((0, 1), repeat=n)]


def act_b(w, sg):
    """(w.(sigma, g))_k = flip^{g_{sigma(k)}} w_{sigma(k)}."""
    if isinstance(w, Special):
        return w
    s, g = sg
    return "".join(_FLIP[w[k - 1]] if g[k - 1] else w[k - 1] for k in s)


def _b_left(sg, i: int, n: int):
    s, g = sg
    si = s[i - 1]
    g2 = []
    for src in range(1, len(s) + 1):
        if src == si:
            g2.extend([g[si - 1]] * n)
        else:
            g2.append(g[src - 1])
    return _util.block_left(s, i, n), tuple(g2)


def _b_right(m: int, i: int, th):
    t, h = th
    n = len(t)
    return _util.block_right(m, i, t), (0,) * (i - 1) + tuple(h) + (0,) * (m - i)


def check_hyperoctahedral(op: Operad, nmax: int) -> list[LawReport]:
    """Both equivariance shapes of the B_n action on ternary words."""
    return check_group_equivariance(op, nmax, hyperoctahedral, act_b, lambda sg, i: sg[0][i - 1],
                                    _b_left, _b_right, law="hyperoctahedral")


# ------------------------------------------------------- colored compositions

def word_to_colored(w: str) -> tuple[tuple[int, int], ...]:
    """Sign word of length n-1 -> 2-colored composition of n; first part colour 1.

    A letter + or - between positions k and k+1 cuts there; the part after the
    cut gets colour 1 for + and 2 for -.  A 0 does not cut.
    """
    parts: list[tuple[int, int]] = []
    size, colour = 1, 1
    for c in w:
        if c == "0":
            size += 1
        elif c in "+-":
            parts.append((size, colour))
            size, colour = 1, (1 if c == "+" else 2)
        else:
            raise AlphabetMismatch(f"{c!r} is not a sign letter")
    parts.append((size, colour))
    return tuple(parts)


def colored_to_word(parts) -> str:
    parts = tuple(parts)
    if not parts or parts[0][1] != 1 or any(p < 1 or c not in (1, 2) for p, c in parts):
        raise ValueError(f"{parts} is not a 2-colored composition with first colour 1")
    out = []
    for k, (p, c) in enumerate(parts):
        if k:
            out.append("+" if c == 1 else "-")
        out.append("0" * (p - 1))
    return "".join(out)


def fmt_colored(parts) -> str:
    return "+".join(f"{p}_{c}" for p, c in parts)


def parse_colored(text: str) -> tuple:
    out = []
    for tok in text.split("+"):
        p, _, c = tok.partition("_")
        out.append((int(p), int(c) if c else 1))
    return tuple(out)


def colored_compose(a, i: int, b) -> tuple:
    return word_to_colored(gap_insert_compose(SIGN_LETTERS, colored_to_word(a), i, colored_to_word(b)))


# --------------------------------------------------------- type-B partitions

def word_to_partition_b(w) -> frozenset:
    """Sign word of length n-1 (or E) -> set partition of [+-n] into frozensets."""
    if isinstance(w, Special):
        raise InvalidPartitionShape("E needs an arity; use word_to_partition_b(E, n)")
    n = len(w) + 1
    zero = frozenset(x for k, c in enumerate(w, 1) if c == "0" for x in (k, -k))
    beta = frozenset([k for k, c in enumerate(w, 1) if c == "+"] + [-k for k, c in enumerate(w, 1) if c == "-"]
                     + [-n])
    blocks = {beta, frozenset(-x for x in beta)}
    if zero:
        blocks.add(zero)
    return frozenset(blocks)


def trivial_partition_b(n: int) -> frozenset:
    return frozenset({frozenset(x for k in range(1, n + 1) for x in (k, -k))})


def partition_b_to_word(pi: Iterable[Iterable[int]]):
    blocks = [frozenset(b) for b in pi]
    ground = set().union(*blocks) if blocks else set()
    n = max((abs(x) for x in ground), default=0)
    if ground != {x for k in range(1, n + 1) for x in (k, -k)} or sum(map(len, blocks)) != len(ground):
        raise InvalidPartitionShape("blocks must partition [+-n]")
    if any(frozenset(-x for x in b) not in blocks for b in blocks):
        raise InvalidPartitionShape("partition is not closed under negation")
    zeros = [b for b in blocks if frozenset(-x for x in b) == b]
    nonzero = [b for b in blocks if b not in zeros]
    if len(zeros) > 1:
        raise InvalidPartitionShape("more than one zero block")
    if zeros and n in zeros[0]:
        if len(zeros[0]) != 2 * n:
            raise InvalidPartitionShape("a zero block containing n must be all of [+-n]")
        return Special(E, n)
    if len(nonzero) != 2:
        raise InvalidPartitionShape("need exactly one pair of nonzero blocks")
    beta = next(b for b in nonzero if -n in b)
    zero = zeros[0] if zeros else frozenset()
    return "".join("0" if k in zero else ("+" if k in beta else "-") for k in range(1, n))


def fmt_partition_b(pi) -> str:
    """Block with -n first, then the zero block, then the block with n; entries by absolute value."""
    n = max(abs(x) for b in pi for x in b)

    def rank(b):
        if -n in b and n not in b:
            return 0
        return 2 if n in b and -n not in b else 1

    blocks = sorted((sorted(b, key=lambda x: (abs(x), x)) for b in pi), key=lambda b: (rank(b), b))
    return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in blocks) + "}"


# ----------------------------------------------- compositions as part tuples

def composition_compose(a: tuple, i: int, b: tuple) -> tuple:
    """Positive-integer tuples (arity = number of parts + 1) with gap insertion."""
    if not 1 <= i <= len(a) + 1:
        raise IndexOutOfRange(f"slot {i} outside 1..{len(a) + 1}")
    return tuple(a[:i - 1]) + tuple(b) + tuple(a[i - 1:])


def comp_word_to_composition(w: str) -> tuple:
    """Boolean word of length n-1 -> composition of n; a 1 cuts."""
    parts, size = [], 1
    for c in w:
        if c == "1":
            parts.append(size)
            size = 1
        else:
            size += 1
    parts.append(size)
    return tuple(parts)


def composition_upper_covers(a: tuple, kind: str) -> set:
    """Upper covers in the graded poset of all compositions.

    kind 'grow': raise one part by 1, or insert a part 1 anywhere.
    kind 'split': raise one part a_j by 1, optionally splitting it into h, a_j+1-h.
    Neither order is a lattice, so only covers and the order predicate are provided.
    """
    out = set()
    for j in range(len(a)):
        out.add(a[:j] + (a[j] + 1,) + a[j + 1:])
        if kind == "split":
            for h in range(1, a[j] + 1):
                out.add(a[:j] + (h, a[j] + 1 - h) + a[j + 1:])
    if kind == "grow":
        for j in range(len(a) + 1):
            out.add(a[:j] + (1,) + a[j:])
    elif kind != "split":
        raise ValueError(f"unknown order {kind!r}")
    return out


def composition_leq(a: tuple, b: tuple, kind: str) -> bool:
    a, b = tuple(a), tuple(b)
    gap = sum(b) - sum(a)
    if gap < 0:
        return False
    level = {a}
    for _ in range(gap):
        level = {c for x in level for c in composition_upper_covers(x, kind) if sum(c) <= sum(b)}
    return b in level


@lru_cache(maxsize=None)
def compositions_of(n: int) -> tuple:
    return tuple(comp_word_to_composition("".join(w)) for w in itertools.product("01", repeat=n - 1))


def colored_operad() -> Operad:
    """Comp_B read through the colored-composition codec."""
    B = comp_b()

    def to_word(x):
        return x if isinstance(x, Special) else colored_to_word(x)

    def to_colored(w):
        return w if isinstance(w, Special) else word_to_colored(w)

    def parse(text):
        if text == E or text.startswith(E + "@"):
            return B.parse(text)
        return parse_colored(text)

    def component(n):
        L = B.component(n)
        return Lattice(lambda a, b: to_colored(L.meet(to_word(a), to_word(b))),
                       lambda a, b: to_colored(L.join(to_word(a), to_word(b))),
                       [to_colored(w) for w in L.elements], leq=lambda a, b: L.leq(to_word(a), to_word(b)),
                       bottom=L.bottom, rank=lambda a: L.rank(to_word(a)), name=f"Comp_B({n})")

    return Operad("colored", lambda a, i, b: to_colored(B.compose(to_word(a), i, to_word(b))),
                  component, lambda x: B.arity(to_word(x)),
                  fmt=lambda x: x.symbol if isinstance(x, Special) else fmt_colored(x), parse=parse,
                  unit=((1, 1),), name="Comp_B (colored)")


def compositions_operad(max_part: int = 3) -> Operad:
    """Integer compositions as part tuples, inserted between parts; arity = parts + 1."""
    def window(n):
        return [c for c in itertools.product(range(1, max_part + 1), repeat=n - 1)]

    def component(n):
        return Lattice(lambda a, b: tuple(map(min, a, b)), lambda a, b: tuple(map(max, a, b)),
                       leq=lambda a, b: all(x <= y for x, y in zip(a, b)), name=f"AN({n})")

    def parse(text):
        return () if text == "_" else tuple(int(t) for t in text.split("+"))

    return Operad("composition", composition_compose, component, lambda a: len(a) + 1,
                  fmt=lambda a: "+".join(map(str, a)) or "_", parse=parse, unit=(), window=window,
                  name="compositions")
