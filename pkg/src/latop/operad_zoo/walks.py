"""Grid-walk operads: step sequences with insertion at a node, and the partition codec."""
from __future__ import annotations

import itertools
from typing import Mapping

from ..errors import IndexOutOfRange, StepNotInS
from ..lattice_core import Lattice
from ..operad_core import Operad

NE = {"E": (1, 0), "N": (0, 1)}
DELANNOY = {"E": (1, 0), "N": (0, 1), "D": (1, 1)}


def endpoint(walk: str, steps: Mapping[str, tuple] = DELANNOY) -> tuple:
    dim = len(next(iter(steps.values())))
    pos = [0] * dim
    for c in walk:
        for k, v in enumerate(steps[c]):
            pos[k] += v
    return tuple(pos)


def check_steps(walk: str, steps: Mapping[str, tuple]) -> None:
    bad = [c for c in walk if c not in steps]
    if bad:
        raise StepNotInS(f"steps {bad} are not in {sorted(steps)}")


def walk_compose(p: str, i: int, q: str, steps: Mapping[str, tuple] = DELANNOY) -> str:
    """Insert q at the i-th node of p (nodes 1..len(p)+1)."""
    check_steps(p, steps)
    check_steps(q, steps)
    if not 1 <= i <= len(p) + 1:
        raise IndexOutOfRange(f"node {i} outside 1..{len(p) + 1}")
    return p[:i - 1] + q + p[i - 1:]


def partition_to_walk(lam) -> str:
    """Boundary of the Young diagram, read from the bottom row up."""
    lam = list(lam) + [0]
    out = []
    for j in range(len(lam) - 2, -1, -1):
        out.append("E" * (lam[j] - lam[j + 1]) + "N")
    return "".join(out)


def walk_to_partition(w: str) -> tuple:
    check_steps(w, NE)
    if not w.endswith("N"):
        raise ValueError("a partition walk ends with N")
    rows, width = [], 0
    for c in w:
        if c == "E":
            width += 1
        else:
            rows.append(width)
    return tuple(reversed(rows))


def hook(a: int, b: int) -> str:
    """J_{a,b} = E^a N^b."""
    return "E" * a + "N" * b


def walk_operad(steps: Mapping[str, tuple] = DELANNOY, tag: str = "walk") -> Operad:
    letters = "".join(sorted(steps))

    def component(n):
        els = ["".join(w) for w in itertools.product(letters, repeat=n - 1)]
        # the walks of a given length carry no lattice structure; equality only
        return Lattice(lambda a, b: a, lambda a, b: a, els, leq=lambda a, b: a == b, name=f"{tag}({n})")

    def parse(text):
        w = "" if text == "_" else text
        check_steps(w, steps)
        return w

    return Operad(tag, lambda p, i, q: walk_compose(p, i, q, steps), component, lambda w: len(w) + 1,
                  fmt=lambda w: w or "_", parse=parse, unit="", name=f"Path({letters})")
