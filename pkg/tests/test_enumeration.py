import itertools
import math
import os
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latop import enumeration_series as es
from latop.errors import BudgetExceeded, InfiniteCarrier, NoRankFunction
from latop.operad_core import Special
from latop.operad_zoo import get, multi_index as mi, tamari as ta


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------- enumeration

def test_enumeration_goldens():
    assert len(es.enumerate_component(get("tamari"), 5)) == 14
    assert len(es.enumerate_component(get("comp"), 4)) == 8
    assert es.enumerate_component(get("perm"), 1) == [(1,)]


def test_enumeration_is_canonical_and_duplicate_free():
    for tag in ("comp", "perm", "tamari", "comp_b", "part"):
        els = es.enumerate_component(get(tag), 4)
        assert len(set(els)) == len(els)
        assert els == es.enumerate_component(get(tag), 4)
    assert es.enumerate_component(get("comp"), 3) == ["00", "01", "10", "11"]


def test_counting_sanity():
    for n in range(1, 7):
        assert len(es.enumerate_component(get("comp"), n)) == 2 ** (n - 1)
        assert len(es.enumerate_component(get("comp_b"), n)) == 3 ** (n - 1) + 1
        assert len(es.enumerate_component(get("perm"), n)) == math.factorial(n)
        assert len(es.enumerate_component(get("tamari"), n)) == catalan(n - 1)
    for n in range(1, 4):
        assert len(es.enumerate_component(get("t"), n)) == 3 ** n + 1
    for n in range(1, 7):
        want = sum((n - d - 1) * d + 1 for d in range(n))
        assert len(es.enumerate_component(get("inv"), n)) == want


def test_infinite_component_needs_a_window():
    with pytest.raises(InfiniteCarrier):
        es.enumerate_component(mi.mz(), 2)
    assert len(es.enumerate_component(mi.mz(), 2, mi.box_window(-1, 1))) == 9


def test_component_dot_matches_hasse_edges():
    dot = es.component_dot(get("tamari"), 4)
    assert dot.count(" -- ") == 5 and dot.count(";") == 5 + 5
    assert dot == es.component_dot(get("tamari"), 4)
    assert es.component_dot(get("comp"), 4).count(" -- ") == 12  # edges of the 3-cube


def test_vector_hasse_covers_brute_force():
    els = sorted(itertools.product(range(2), repeat=3))
    dot = es.vector_hasse_dot(mi.mz(), els, "cube")
    covers = {(a, b) for a in els for b in els if sum(b) - sum(a) == 1 and all(x <= y for x, y in zip(a, b))}
    assert dot.count(" -- ") == len(covers) == 12


# --------------------------------------------------------------------- series

def brute_bivariate(tag, nmax, rank_of):
    out = {}
    for n in range(2, nmax + 1):
        for x in get(tag).elements(n):
            if isinstance(x, Special):
                continue
            key = (n, rank_of(x))
            out[key] = out.get(key, 0) + 1
    return out


def test_comp_series_matches_closed_form_through_z8():
    sc = es.series_coefficients(get("comp"), 8, bivariate=True, nmin=2)
    assert es.closed_form_mismatches(sc, es.comp_closed_form(8), nmin=2) == []
    # rank is the number of 1-letters
    assert {k: int(v) for k, v in sc.coeffs.items()} == brute_bivariate("comp", 8, lambda w: w.count("1"))


def test_comp_b_series_matches_closed_form_through_z8():
    sc = es.series_coefficients(get("comp_b"), 8, bivariate=True, nmin=2)
    assert es.closed_form_mismatches(sc, es.comp_b_closed_form(8), nmin=2) == []
    assert {k: int(v) for k, v in sc.coeffs.items()} == brute_bivariate("comp_b", 8, lambda w: w.count("0"))


def test_closed_forms_by_binomial_expansion():
    # z^2 (1+t)^(n-1) z^(n-2) and z^2 (2+t)^(n-1) z^(n-2)
    cf, cfb = es.comp_closed_form(8), es.comp_b_closed_form(8)
    for n in range(2, 9):
        for k in range(n):
            assert cf.get((n, k), 0) == math.comb(n - 1, k)
            assert cfb.get((n, k), 0) == math.comb(n - 1, k) * 2 ** (n - 1 - k)


def test_univariate_is_bivariate_at_one():
    sc = es.series_coefficients(get("comp_b"), 6, bivariate=True)
    assert sc.univariate().coeffs == es.series_coefficients(get("comp_b"), 6).coeffs


def test_symmetric_series_divides_by_factorial():
    S = get("subset")
    sc = es.series_coefficients(S, 4)
    for n in range(1, 5):
        assert sc.coefficient(n) == Fraction(len(S.elements(n)), math.factorial(n))
        assert isinstance(sc.coefficient(n), Fraction)


def test_unranked_operads_fail_loudly():
    with pytest.raises(NoRankFunction):
        es.series_coefficients(get("tamari"), 4, bivariate=True)


def test_comp_involution_reverses_rank():
    sc = es.series_coefficients(get("comp"), 7, bivariate=True)
    for (n, k), c in sc.coeffs.items():
        assert sc.coefficient(n, n - 1 - k) == c


def test_csv_export():
    text = es.series_coefficients(get("comp"), 3, bivariate=True).to_csv()
    assert text == "n,k,numerator,denominator\n1,0,1,1\n2,0,1,1\n2,1,1,1\n3,0,1,1\n3,1,2,1\n3,2,1,1\n"
    assert es.series_coefficients(get("subset"), 2).to_csv().splitlines()[1] == "1,,2,1"


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.tuples(st.integers(1, 3), st.integers(0, 2)), st.integers(-3, 3), max_size=4))
def test_expand_rational_inverts_multiplication(num, den):
    den = dict(den)
    den[(0, 0)] = 1
    q = es.expand_rational(num, den, 6)
    # (q * den) agrees with num through z^6
    prod = {}
    for (a, b), x in q.items():
        for (c, d), y in den.items():
            if a + c <= 6 and y:
                prod[(a + c, b + d)] = prod.get((a + c, b + d), 0) + x * y
    want = {k: Fraction(v) for k, v in num.items() if v and k[0] <= 6}
    assert {k: v for k, v in prod.items() if v} == want


# ------------------------------------------------------------------- appendix

def test_appendix_through_arity_5(tmp_path):
    rep = es.reproduce_appendix(5, out_dir=str(tmp_path))
    assert rep.ok
    assert rep.cardinalities["M(1,1)"] == {n: (n - 1) ** n for n in range(2, 6)}
    assert rep.cardinalities["N(1,1)"] == {3: 4, 4: 25, 5: 187}
    assert all(rep.fixed_points.values())
    assert rep.dot_files and all(os.path.exists(p) for p in rep.dot_files)
    assert rep.skipped_dot == []


def test_appendix_skips_oversized_diagrams(tmp_path):
    rep = es.reproduce_appendix(4, out_dir=str(tmp_path), dot_limit=30)
    assert rep.skipped_dot == ["M_1_1_4.dot"]
    assert not (tmp_path / "M_1_1_4.dot").exists() and (tmp_path / "M_1_1_3.dot").exists()


def test_appendix_budget():
    with pytest.raises(BudgetExceeded):
        es.reproduce_appendix(7)


def test_appendix_is_deterministic():
    a, b = es.reproduce_appendix(4), es.reproduce_appendix(4)
    assert a.lines() == b.lines() and a.components == b.components
