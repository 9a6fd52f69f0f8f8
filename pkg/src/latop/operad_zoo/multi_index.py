"""Counting operads CZ and CZ^I, the multi-index operad MZ, and the lax morphism rho: CZ -> MZ."""
from __future__ import annotations

import itertools
from typing import Callable, Iterable

from ..errors import IndexOutOfRange
from ..lattice_core import Lattice
from ..operad_core import At, Operad


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def mz_compose(a: tuple, i: int, b: tuple) -> tuple:
    """(a_1..a_{i-1}, b_1+a_i, .., b_n+a_i, a_{i+1}..a_m)."""
    if not 1 <= i <= len(a):
        raise IndexOutOfRange(f"slot {i} outside 1..{len(a)}")
    ai = a[i - 1]
    return a[:i - 1] + tuple(x + ai for x in b) + a[i:]


def _zn(n: int) -> Lattice:
    return Lattice(lambda a, b: tuple(map(min, a, b)), lambda a, b: tuple(map(max, a, b)),
                   leq=lambda a, b: all(x <= y for x, y in zip(a, b)),
                   fmt=lambda a: ",".join(map(str, a)), name=f"Z^{n}",
                   contains=lambda a: isinstance(a, tuple) and len(a) == n)


def box_window(lo: int, hi: int) -> Callable[[int], list]:
    """All of [lo, hi]^n, lexicographically."""
    return lambda n: list(itertools.product(range(lo, hi + 1), repeat=n))


def mz(window: Callable[[int], Iterable] | None = None) -> Operad:
    """Multi-indices: Z^n with the componentwise order and shifted-block composition."""
    return Operad("mz", mz_compose, _zn, len, fmt=lambda a: ",".join(map(str, a)), parse=_ints,
                  unit=(0,), act=lambda a, s: tuple(a[k - 1] for k in s), window=window,
                  name="MZ", vector=True)


def mz_corrupted() -> Operad:
    """MZ with the a_i shift dropped; used to exercise the law checkers."""
    def bad(a, i, b):
        return a[:i - 1] + tuple(b) + a[i:]

    return Operad("mz-corrupted", bad, _zn, len, fmt=lambda a: ",".join(map(str, a)), parse=_ints,
                  unit=(0,), name="MZ (no shift)")


def _fmt_at(x: At) -> str:
    v = x.value
    body = ",".join(map(str, v)) if isinstance(v, tuple) else str(v)
    return f"{body}@{x.arity}"


def int_window(lo: int, hi: int) -> Callable[[int], list]:
    return lambda n: [At(n, k) for k in range(lo, hi + 1)]


def cz(window: Callable[[int], Iterable] | None = None) -> Operad:
    """Every component is Z; compositions add, the symmetric action is trivial."""
    def comp(a: At, i: int, b: At) -> At:
        if not 1 <= i <= a.arity:
            raise IndexOutOfRange(f"slot {i} outside 1..{a.arity}")
        return At(a.arity + b.arity - 1, a.value + b.value)

    def component(n):
        return Lattice(lambda a, b: At(n, min(a.value, b.value)), lambda a, b: At(n, max(a.value, b.value)),
                       leq=lambda a, b: a.value <= b.value, fmt=_fmt_at, name="Z",
                       contains=lambda a: isinstance(a, At) and a.arity == n)

    def parse(text):
        v, n = text.split("@")
        return At(int(n), int(v))

    return Operad("cz", comp, component, lambda a: a.arity, fmt=_fmt_at, parse=parse,
                  unit=At(1, 0), act=lambda a, s: a, window=window, name="CZ")


def cz_power(size: int, window: Callable[[int], Iterable] | None = None) -> Operad:
    """CZ^I for |I| = size: Z^I in every arity, compositions add coordinatewise."""
    def comp(a: At, i: int, b: At) -> At:
        if not 1 <= i <= a.arity:
            raise IndexOutOfRange(f"slot {i} outside 1..{a.arity}")
        return At(a.arity + b.arity - 1, tuple(x + y for x, y in zip(a.value, b.value)))

    def component(n):
        return Lattice(lambda a, b: At(n, tuple(map(min, a.value, b.value))),
                       lambda a, b: At(n, tuple(map(max, a.value, b.value))),
                       leq=lambda a, b: all(x <= y for x, y in zip(a.value, b.value)),
                       fmt=_fmt_at, name=f"Z^{size}")

    def parse(text):
        v, n = text.split("@")
        return At(int(n), _ints(v))

    return Operad(f"cz{size}", comp, component, lambda a: a.arity, fmt=_fmt_at, parse=parse,
                  unit=At(1, (0,) * size), act=lambda a, s: a, window=window, name=f"CZ^{size}")


def cz_power_window(size: int, lo: int, hi: int) -> Callable[[int], list]:
    return lambda n: [At(n, v) for v in itertools.product(range(lo, hi + 1), repeat=size)]


def rho(x: At) -> tuple:
    """k at arity n goes to (k, .., k)."""
    return (x.value,) * x.arity
