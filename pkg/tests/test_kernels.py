import itertools
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latop import kernels
from latop.errors import BudgetExceeded
from latop.operad_core import generate_suboperad
from latop.operad_zoo import multi_index as mi


def brute_closure(rows):
    S = {tuple(r) for r in rows}
    while True:
        new = {tuple(np.minimum(a, b)) for a in S for b in S} | {tuple(np.maximum(a, b)) for a in S for b in S}
        if new <= S:
            return sorted(S)
        S |= new


vectors = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-2, 3), min_size=n, max_size=n), min_size=1, max_size=6))


@settings(max_examples=40)
@given(vectors)
def test_backends_agree_with_brute_force(rows):
    rows = np.array(rows, dtype=np.int64)
    want = brute_closure(rows)
    for use in ("numpy", "numba"):
        got = kernels.lattice_closure(rows, -2, 3, use=use)
        assert [tuple(int(v) for v in r) for r in got] == want


def test_closure_of_an_antichain_is_the_box():
    rows = np.array([(0, 1), (1, 0)])
    got = kernels.lattice_closure(rows, 0, 1)
    assert got.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


def test_budget_and_box_errors():
    rows = np.array(list(itertools.permutations(range(5))))
    for use in ("numpy", "numba"):
        with pytest.raises(BudgetExceeded):
            kernels.lattice_closure(rows, 0, 4, budget=50, use=use)
    with pytest.raises(BudgetExceeded):
        kernels.lattice_closure(np.array([(5, 0)]), 0, 4)
    with pytest.raises(BudgetExceeded):
        kernels.lattice_closure(np.array([(0,) * 30]), 0, 9)


def test_orbit():
    got = kernels.orbit(np.array([(0, 1, 1)]), np.array(list(itertools.permutations(range(3)))), 0, 1)
    assert got.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_box_bounds_contain_generated_entries():
    bounds = kernels.box_bounds([(-1, 1)], 4)
    S = generate_suboperad(mi.mz(), [(-1, 1)], 4)
    for n, els in S.items():
        lo, hi = bounds(n)
        assert all(lo <= v <= hi for x in els for v in x)


def test_disable_numba_switch(monkeypatch):
    monkeypatch.setenv("LATOP_DISABLE_NUMBA", "1")
    assert kernels.backend() == "numpy"
    slow = generate_suboperad(mi.mz(), [(1, 1)], 4, symmetric=True)
    monkeypatch.delenv("LATOP_DISABLE_NUMBA")
    assert kernels.backend() == ("numba" if kernels.HAVE_NUMBA else "numpy")
    fast = generate_suboperad(mi.mz(), [(1, 1)], 4, symmetric=True)
    assert slow == fast and len(fast[4]) == 81


def test_benchmark_script_runs():
    out = subprocess.run([sys.executable, "benchmarks/bench_closure.py", "--nmax", "4", "--repeat", "1"],
                         capture_output=True, text=True, check=True)
    assert "81" in out.stdout
