"""Young's-lattice operad Part and its variants Part' (conjugate notation) and Part_d (distinct parts).

An element of Part(k) is stored as the partition (lambda_1 >= .. >= lambda_{k-1} > 0).
Its gap tuple d has d_j = lambda_j - lambda_{j+1}; composition is gap
insertion of tuples and the lattice is the product order on tuples.
"""
from __future__ import annotations

import itertools
from typing import Callable

from ..errors import IndexOutOfRange, NotDistinctParts
from ..lattice_core import Lattice
from ..operad_core import ExtraAction, Operad


def to_tuple(lam) -> tuple[int, ...]:
    lam = tuple(lam)
    return tuple(lam[j] - (lam[j + 1] if j + 1 < len(lam) else 0) for j in range(len(lam)))


def to_partition(d) -> tuple[int, ...]:
    return tuple(sum(d[j:]) for j in range(len(d)))


def gap_insert(d: tuple, i: int, e: tuple) -> tuple:
    if not 1 <= i <= len(d) + 1:
        raise IndexOutOfRange(f"slot {i} outside 1..{len(d) + 1}")
    return d[:i - 1] + e + d[i - 1:]


def part_compose(lam: tuple, i: int, mu: tuple) -> tuple:
    """Direct formula on partitions: prefix gains mu_1, the slot part is repeated under mu."""
    k = len(lam) + 1
    if not 1 <= i <= k:
        raise IndexOutOfRange(f"slot {i} outside 1..{k}")
    if i == k:
        return tuple(x + mu[0] for x in lam) + tuple(mu)
    li = lam[i - 1]
    return (tuple(x + mu[0] for x in lam[:i]) + tuple(li + y for y in mu[1:]) + tuple(lam[i - 1:]))


def is_partition(lam) -> bool:
    return len(lam) >= 1 and all(x >= y for x, y in zip(lam, lam[1:])) and lam[-1] > 0


def conjugate_fmt(lam) -> str:
    """1^{d_1} 2^{d_2} ..: d_j parts equal to j (zero exponents omitted)."""
    d = to_tuple(lam)
    return ",".join(f"{j}^{dj}" for j, dj in enumerate(d, start=1) if dj)


def conjugate_parse(text: str) -> tuple:
    d: dict[int, int] = {}
    for tok in text.replace(" ", ",").split(","):
        if tok:
            base, _, exp = tok.partition("^")
            d[int(base)] = d.get(int(base), 0) + (int(exp) if exp else 1)
    top = max(d)
    return to_partition(tuple(d.get(j, 0) for j in range(1, top + 1)))


def conjugate(lam) -> tuple:
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1)) if lam else ()


def box_complement(lam) -> tuple:
    """# on Part_d: reverse the gap tuple."""
    d = to_tuple(lam)
    if any(x < 1 for x in d):
        raise NotDistinctParts(f"{lam} has repeated parts")
    return to_partition(d[::-1])


def _fmt(lam) -> str:
    return ",".join(map(str, lam))


def _parse(text: str) -> tuple:
    lam = tuple(int(t) for t in text.split(","))
    if not is_partition(lam):
        raise ValueError(f"{text} is not a partition")
    return lam


def part_window(max_part: int) -> Callable[[int], list]:
    """Partitions with k-1 positive parts and largest part <= max_part."""
    def window(k):
        out = []
        for d in itertools.product(range(max_part + 1), repeat=k - 1):
            if d and d[-1] > 0 and sum(d) <= max_part:
                out.append(to_partition(d))
        return sorted(out)
    return window


def part_d_window(max_gap: int) -> Callable[[int], list]:
    return lambda k: sorted(to_partition(d) for d in itertools.product(range(1, max_gap + 1), repeat=k - 1))


def _lattice(k: int, distinct: bool) -> Lattice:
    def meet(a, b):
        return to_partition(tuple(map(min, to_tuple(a), to_tuple(b))))

    def join(a, b):
        return to_partition(tuple(map(max, to_tuple(a), to_tuple(b))))

    def leq(a, b):
        return all(x <= y for x, y in zip(to_tuple(a), to_tuple(b)))

    low = 1 if distinct else 0
    bottom = to_partition((low,) * (k - 2) + (1,)) if k >= 2 else None
    return Lattice(meet, join, leq=leq, bottom=bottom, rank=lambda a: sum(to_tuple(a)), fmt=_fmt,
                   name=f"Part{'_d' if distinct else ''}({k})",
                   contains=lambda a: is_partition(a) and len(a) == k - 1)


def part(max_part: int = 4, conjugate_notation: bool = False) -> Operad:
    fmt, parse = (conjugate_fmt, conjugate_parse) if conjugate_notation else (_fmt, _parse)
    return Operad("part'" if conjugate_notation else "part", part_compose, lambda k: _lattice(k, False),
                  lambda lam: len(lam) + 1, fmt=fmt, parse=parse, min_arity=2,
                  window=part_window(max_part), name="Part'" if conjugate_notation else "Part")


def part_d(max_gap: int = 3) -> Operad:
    def parse(text):
        lam = _parse(text)
        if len(set(lam)) != len(lam):
            raise NotDistinctParts(text)
        return lam

    return Operad("part_d", part_compose, lambda k: _lattice(k, True), lambda lam: len(lam) + 1,
                  fmt=_fmt, parse=parse, min_arity=2, window=part_d_window(max_gap),
                  extra_actions=[ExtraAction("#", box_complement, "reverse", "auto")], name="Part_d")
