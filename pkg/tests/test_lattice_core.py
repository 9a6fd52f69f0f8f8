import itertools

import pytest
from hypothesis import given, strategies as st

from latop.errors import InfiniteCarrier, MissingExtremum
from latop.lattice_core import (
    EMPTY_INTERVAL,
    ONE,
    ZERO,
    Lattice,
    ProductKind,
    associator,
    chain,
    coherence_mu,
    covering_edges,
    derived_lattice,
    find_isomorphism,
    from_poset,
    hasse_dot,
    lattice_law_failures,
    product,
    rhombus,
)
from latop.operad_zoo.tamari import tamari


def boolean(k):
    els = [frozenset(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]
    return Lattice(lambda a, b: a & b, lambda a, b: a | b, els, leq=lambda a, b: a <= b,
                   bottom=frozenset(), top=frozenset(range(k)), rank=len, name=f"B{k}")


def pentagon():
    order = {("0", x) for x in "0ab1c"} | {("a", "b"), ("a", "1"), ("b", "1"), ("c", "1")}
    order |= {(x, x) for x in "abc1"}
    return from_poset("0abc1", lambda x, y: (x, y) in order, name="N5")


SMALL = [chain(1), chain(2), chain(3), rhombus(), boolean(2), pentagon()]
lattices = st.sampled_from(SMALL)


def brute_covers(L):
    els = list(L.elements)
    out = set()
    for a, b in itertools.product(els, repeat=2):
        if a != b and L.leq(a, b):
            if not any(c not in (a, b) and L.leq(a, c) and L.leq(c, b) for c in els):
                out.add((a, b))
    return out


# products

@pytest.mark.parametrize("kind", list(ProductKind))
def test_product_kinds_are_enumerated(kind):
    assert ProductKind(kind.value) is kind


def test_four_product_tags():
    assert {k.value for k in ProductKind} == {"cartesian", "lower_truncated", "upper_truncated",
                                              "disjoint_union"}


@given(lattices, lattices, st.sampled_from(list(ProductKind)))
def test_products_are_lattices(P, Q, kind):
    if kind is not ProductKind.CARTESIAN and len(P.elements) == 1:
        P = chain(2)
    R = product(kind, P, Q)
    assert lattice_law_failures(R) == []


def test_lower_truncated_unit_is_two_element_lattice():
    for P in (rhombus(), chain(3), pentagon()):
        R = product("lower_truncated", chain(2), P)
        assert find_isomorphism(R, P) is not None


def test_cartesian_unit():
    for P in (rhombus(), pentagon()):
        assert find_isomorphism(product("cartesian", chain(1), P), P) is not None


def test_lower_truncated_rhombus_square_size():
    # (4 - 1) * (4 - 1) pairs of non-bottom elements plus one adjoined zero
    R = product("lower_truncated", rhombus(), rhombus())
    assert len(R) == 3 * 3 + 1
    assert R.bottom == ZERO


def test_upper_truncated_adjoins_one():
    R = product("upper_truncated", chain(3), chain(2))
    assert R.top == ONE
    assert len(R) == 2 * 1 + 1


def test_disjoint_union_glues_extremes():
    R = product("disjoint_union", rhombus(), chain(3))
    # two atoms of the rhombus, one middle element of the chain, shared 0 and 1
    assert len(R) == 2 + 1 + 2


def test_truncated_needs_extremes():
    Z = Lattice(min, max, name="Z")
    with pytest.raises(MissingExtremum):
        product("lower_truncated", Z, chain(2))
    with pytest.raises(MissingExtremum):
        product("disjoint_union", chain(2), Z)


# coherence map

def test_coherence_examples():
    P, Q = rhombus(), chain(3)
    assert coherence_mu(P, Q, ("+", 2)) == ("+", 2)
    assert coherence_mu(P, Q, ("E", 2)) == ZERO
    assert coherence_mu(P, Q, ("0", 0)) == ZERO


@pytest.mark.parametrize("P,Q", [(rhombus(), rhombus()), (chain(3), rhombus()), (pentagon(), chain(2))])
def test_coherence_preserves_meets_and_order(P, Q):
    C = product("cartesian", P, Q)
    D = product("lower_truncated", P, Q)
    mu = lambda x: coherence_mu(P, Q, x)
    for a, b in itertools.product(C.elements, repeat=2):
        assert mu(C.meet(a, b)) == D.meet(mu(a), mu(b))
        assert D.leq(D.join(mu(a), mu(b)), mu(C.join(a, b)))
        if C.leq(a, b):
            assert D.leq(mu(a), mu(b))


def test_coherence_does_not_preserve_joins():
    # (0, 1) and (a, 0) both collapse to 0, their join (a, 1) does not
    P, Q = chain(3), chain(2)
    C = product("cartesian", P, Q)
    D = product("lower_truncated", P, Q)
    x, y = (0, 1), (1, 0)
    assert coherence_mu(P, Q, C.join(x, y)) == (1, 1)
    assert D.join(coherence_mu(P, Q, x), coherence_mu(P, Q, y)) == ZERO


def test_coherence_hexagon_on_three_rhombi():
    # both paths (P x Q) x R -> P <> (Q <> R) agree
    P = rhombus()
    PQ = product("lower_truncated", P, P)
    QR = product("lower_truncated", P, P)
    for p, q, r in itertools.product(P.elements, repeat=3):
        left = coherence_mu(PQ, P, (coherence_mu(P, P, (p, q)), r))
        left = associator(left)
        right = coherence_mu(P, QR, (p, coherence_mu(P, P, (q, r))))
        assert left == right


def test_coherence_unit_square():
    # B1 x P -> B1 <> P ~ P sends (1, p) to p and (0, p) to the bottom
    P = rhombus()
    B1 = chain(2)
    for p in P.elements:
        assert coherence_mu(B1, P, (1, p)) == ((1, p) if p != P.bottom else ZERO)
        assert coherence_mu(B1, P, (0, p)) == ZERO


# derived lattices

def test_interval_of_two_chain():
    Int = derived_lattice("interval", chain(2))
    proper = [x for x in Int.elements if x != EMPTY_INTERVAL]
    assert sorted(proper) == [(0, 0), (0, 1), (1, 1)]
    # the empty interval is adjoined so that disjoint intervals have a meet
    assert Int.meet((0, 0), (1, 1)) == EMPTY_INTERVAL
    assert lattice_law_failures(Int) == []


def test_order_ideals_of_rhombus():
    Ord = derived_lattice("order_ideal", rhombus())
    assert len(Ord) == 6
    assert lattice_law_failures(Ord) == []


@given(lattices)
def test_dual_is_involution(L):
    D = derived_lattice("dual", derived_lattice("dual", L))
    for a, b in itertools.product(L.elements, repeat=2):
        assert D.meet(a, b) == L.meet(a, b)
        assert D.join(a, b) == L.join(a, b)
        assert D.leq(a, b) == L.leq(a, b)


@given(lattices, st.sampled_from(["interval", "order_ideal", "dual"]))
def test_derived_lattices_satisfy_laws(L, kind):
    assert lattice_law_failures(derived_lattice(kind, L)) == []


def test_derived_needs_finite():
    with pytest.raises(InfiniteCarrier):
        derived_lattice("interval", Lattice(min, max))


# covers and DOT

@given(lattices)
def test_covering_edges_match_brute_force(L):
    assert set(covering_edges(L)) == brute_covers(L)


@given(lattices)
def test_rank_increases_by_one_on_covers(L):
    if L.rank is None:
        return
    for a, b in covering_edges(L):
        assert L.rank(b) == L.rank(a) + 1


def test_cover_counts():
    assert len(covering_edges(chain(3))) == 2
    assert len(covering_edges(rhombus())) == 4


def test_tamari_w4_hasse():
    W4 = tamari().component(4)
    edges = {(W4.fmt(a).replace(",", ""), W4.fmt(b).replace(",", "")) for a, b in covering_edges(W4)}
    # the pentagon 1114 < 1124 < 1134 < 1234 and 1114 < 1214 < 1234
    assert edges == {("1114", "1124"), ("1124", "1134"), ("1134", "1234"), ("1114", "1214"),
                     ("1214", "1234")}


def test_hasse_dot_is_sorted_and_deterministic():
    text = hasse_dot(rhombus(), "R")
    assert text == hasse_dot(rhombus(), "R")
    lines = [x for x in text.splitlines() if "--" in x]
    assert lines == sorted(lines) and len(lines) == 4
    assert text.startswith('graph "R" {')


def test_from_poset_rejects_non_lattice():
    # two incomparable maximal elements and no top
    order = {("0", "a"), ("0", "b"), ("0", "0"), ("a", "a"), ("b", "b")}
    with pytest.raises(ValueError):
        from_poset("0ab", lambda x, y: (x, y) in order)


@given(lattices)
def test_leq_agrees_with_meet(L):
    for a, b in itertools.product(L.elements, repeat=2):
        assert L.leq(a, b) == (L.meet(a, b) == a)


def test_law_checker_catches_bad_lattice():
    bad = Lattice(lambda a, b: a, max, range(3), leq=lambda a, b: a <= b)
    assert lattice_law_failures(bad)


def test_symbolic_lattice_rejects_enumeration():
    Z = Lattice(min, max, name="Z")
    with pytest.raises(InfiniteCarrier):
        len(Z)
    with pytest.raises(InfiniteCarrier):
        covering_edges(Z)
