"""Small helpers: permutation arithmetic and the thread fan-out used by checkers."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

# Permutations are tuples of 1-based images: sigma[k-1] = sigma(k).
# Right action on position-indexed data: (x . sigma)_k = x_{sigma(k)}.


def act_positions(x: Sequence, sigma: Sequence[int]) -> tuple:
    return tuple(x[s - 1] for s in sigma)


def all_perms(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(1, n + 1)))


def inverse_perm(sigma: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(sigma)
    for k, s in enumerate(sigma, start=1):
        out[s - 1] = k
    return tuple(out)


def block_left(sigma: Sequence[int], i: int, n: int) -> tuple[int, ...]:
    """Sigma'' with (a.sigma) o_i b = (a o_{sigma(i)} b) . sigma''.

    Every slot k of sigma is blown up to the positions its source slot
    occupies in a o_{sigma(i)} b; slot i becomes the inserted block.
    """
    si = sigma[i - 1]
    out: list[int] = []
    for k in range(1, len(sigma) + 1):
        s = sigma[k - 1]
        if k == i:
            out.extend(range(si, si + n))
        elif s < si:
            out.append(s)
        else:
            out.append(s + n - 1)
    return tuple(out)


def block_right(m: int, i: int, tau: Sequence[int]) -> tuple[int, ...]:
    """Tau' with a o_i (b.tau) = (a o_i b) . tau' for a of arity m."""
    n = len(tau)
    return tuple(range(1, i)) + tuple(t + i - 1 for t in tau) + tuple(range(i + n, m + n))


def threads() -> int:
    try:
        return max(1, int(os.environ.get("LATOP_THREADS", "1")))
    except ValueError:
        return 1


def fan_out(fn: Callable[[T], R], tasks: Iterable[T]) -> list[R]:
    """Map fn over tasks, in order, on up to LATOP_THREADS workers."""
    tasks = list(tasks)
    k = threads()
    if k == 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, tasks))


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
