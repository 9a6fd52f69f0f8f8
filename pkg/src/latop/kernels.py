"""Meet/join closure of a set of integer vectors inside a finite box.

This is the hot loop of suboperad generation over the multi-index operad.
Vectors are encoded in mixed radix over the box and tracked in a bitmap.  The
compiled path uses numba; setting ``LATOP_DISABLE_NUMBA=1`` (or not having
numba installed) selects the vectorized numpy path.  Both return the same
lexicographically sorted array.
"""
from __future__ import annotations

import os
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

# Largest box (number of cells) the bitmap may span.
MAX_CELLS = 50_000_000


def backend() -> str:
    if HAVE_NUMBA and os.environ.get("LATOP_DISABLE_NUMBA", "") not in ("1", "true", "yes"):
        return "numba"
    return "numpy"


def box_bounds(generators: Sequence[Sequence[int]], nmax: int) -> Callable[[int], tuple[int, int]]:
    """Entry bounds for arity-n members of the suboperad generated by ``generators``.

    Every entry of an arity-n composite is a sum of between 1 and n-1
    generator entries (the unit contributes 0), so it lies in
    [min(g, (n-1)g), max(G, (n-1)G)] for g, G the extreme generator entries.
    """
    entries = [v for g in generators for v in g]
    if not entries:
        return lambda n: (0, 0)
    gmin, gmax = min(entries), max(entries)

    def bounds(n: int) -> tuple[int, int]:
        return min(gmin, (n - 1) * gmin), max(gmax, (n - 1) * gmax)

    return bounds


def _radix(n: int, lo: int, hi: int) -> tuple[int, int]:
    base = hi - lo + 1
    cells = base ** n
    if cells > MAX_CELLS:
        raise BudgetExceeded(f"box [{lo},{hi}]^{n} has {cells} cells (limit {MAX_CELLS})")
    return base, cells


def _encode(rows: np.ndarray, lo: int, base: int) -> np.ndarray:
    n = rows.shape[1]
    weights = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (rows - lo) @ weights


def _decode(codes: np.ndarray, n: int, lo: int, base: int) -> np.ndarray:
    out = np.empty((len(codes), n), dtype=np.int64)
    c = codes.copy()
    for k in range(n - 1, -1, -1):
        out[:, k] = c % base + lo
        c //= base
    return out


if HAVE_NUMBA:
    @njit(cache=True)
    def _close_numba(buf, count, mask, lo, base):
        n = buf.shape[1]
        tmp = np.empty(n, np.int64)
        start = 0
        while start < count:
            end = count
            for a in range(start, end):
                for b in range(end):
                    for which in range(2):
                        code = 0
                        for k in range(n):
                            x = buf[a, k]
                            y = buf[b, k]
                            if which == 0:
                                v = x if x < y else y
                            else:
                                v = x if x > y else y
                            tmp[k] = v
                            code = code * base + (v - lo)
                        if not mask[code]:
                            mask[code] = True
                            if count >= buf.shape[0]:
                                return -1
                            buf[count, :] = tmp
                            count += 1
            start = end
        return count


def _close_numpy(rows: np.ndarray, mask: np.ndarray, lo: int, base: int, budget: int) -> None:
    n = rows.shape[1]
    allrows = rows
    frontier = rows
    while len(frontier):
        new_codes = []
        chunk = max(1, 2_000_000 // max(1, len(allrows) * n))
        for s in range(0, len(frontier), chunk):
            F = frontier[s:s + chunk, None, :]
            for combined in (np.minimum(F, allrows[None, :, :]), np.maximum(F, allrows[None, :, :])):
                codes = np.unique(_encode(combined.reshape(-1, n), lo, base))
                codes = codes[~mask[codes]]
                mask[codes] = True
                new_codes.append(codes)
        fresh = np.concatenate(new_codes) if new_codes else np.empty(0, np.int64)
        if int(mask.sum()) > budget:
            raise BudgetExceeded(f"lattice closure exceeded {budget} elements")
        frontier = _decode(fresh, n, lo, base)
        allrows = np.concatenate([allrows, frontier])


def orbit(rows: np.ndarray, perms: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """All coordinate permutations of ``rows`` (0-based ``perms``), deduplicated and lex-sorted."""
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    base, cells = _radix(n, lo, hi)
    mask = np.zeros(cells, dtype=np.bool_)
    for p in perms:
        mask[_encode(rows[:, p], lo, base)] = True
    return _decode(np.flatnonzero(mask).astype(np.int64), n, lo, base)


def lattice_closure(rows: np.ndarray, lo: int, hi: int, budget: int = 2_000_000,
                    use: Optional[str] = None) -> np.ndarray:
    """Smallest meet/join-closed set of vectors containing ``rows``; entries must lie in [lo, hi]."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2 or len(rows) == 0:
        return rows.reshape(len(rows), -1)
    if rows.min() < lo or rows.max() > hi:
        raise BudgetExceeded(f"seed entries escape the box [{lo},{hi}]")
    n = rows.shape[1]
    base, cells = _radix(n, lo, hi)
    mask = np.zeros(cells, dtype=np.bool_)
    codes = np.unique(_encode(rows, lo, base))
    mask[codes] = True
    seed = _decode(codes, n, lo, base)
    if len(seed) > budget:
        raise BudgetExceeded(f"seed of {len(seed)} vectors already exceeds the budget {budget}")
    which = use or backend()
    if which == "numba":
        cap = min(cells, budget + 1)
        buf = np.empty((cap, n), dtype=np.int64)
        buf[:len(seed)] = seed
        got = _close_numba(buf, len(seed), mask, lo, base)
        if got < 0:
            raise BudgetExceeded(f"lattice closure exceeded {budget} elements")
    else:
        _close_numpy(seed, mask, lo, base, budget)
    return _decode(np.flatnonzero(mask).astype(np.int64), n, lo, base)
