import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from latop.errors import (
    AlphabetMismatch, IndexOutOfRange, InvalidPartitionShape, LengthMismatch, NotAWeightSequence,
    NotDistinctParts, NotInL, StepNotInS,
)
from latop.lattice_core import ONE, ZERO, covering_edges
from latop.operad_core import (
    At, Special, all_passed, build_m_associative, check_lattice_compatibility, check_operad_laws,
)
from latop.operad_zoo import (
    get, inversions as iv, multi_index as mi, partitions as pa, permutations as pm, polygons as pg,
    tamari as ta, walks as wk, words as w,
)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# ----------------------------------------------------------------------- MZ

def test_mz_goldens():
    assert mi.mz_compose((1, 1), 1, (1, 1)) == (2, 2, 1)
    assert mi.mz_compose((0, 3), 2, (1, 2)) == (0, 4, 5)
    assert mi.mz_compose((4, 7), 2, (0, 0, 0)) == (4, 7, 7, 7)
    with pytest.raises(IndexOutOfRange):
        mi.mz_compose((1, 2), 3, (0,))


@pytest.mark.parametrize("tag", ["mz", "cz", "cz2"])
def test_counting_operads_are_lattice_operads(tag):
    P = get(tag)
    assert all_passed(check_operad_laws(P, 4))
    assert all_passed(check_lattice_compatibility(P, 4, mode="separate"))


# ------------------------------------------------------------------- Tamari

def test_weight_codec_on_sample_tree():
    # left subtree with weights (1,2,1,2,5), right subtree (1,1,3)
    w8 = (1, 2, 1, 2, 5, 1, 1, 8)
    t = ta.weights_to_tree(w8)
    assert ta.tree_to_weights(t) == w8
    assert ta.split(w8) == ((1, 2, 1, 2, 5), (1, 1, 3))
    assert ta.tree_to_weights(None) == (1,)
    with pytest.raises(NotAWeightSequence):
        ta.weights_to_tree((1, 2, 1, 3, 5))


@pytest.mark.parametrize("n", range(1, 8))
def test_weight_codec_round_trips_and_counts(n):
    ts = list(ta.trees(n))
    ws = {ta.tree_to_weights(t) for t in ts}
    assert len(ts) == len(ws) == catalan(n - 1)
    for t in ts:
        assert ta.weights_to_tree(ta.tree_to_weights(t)) == t
    assert ws == set(ta.weight_sequences(n))
    assert all(ta.is_weight_sequence(x) for x in ws)


def test_tamari_compose_golden():
    assert ta.tamari_compose((1, 1, 2, 4), 3, (1, 2, 3)) == (1, 1, 1, 2, 4, 6)
    assert ta.tamari_compose((1, 2, 1, 4), 2, (1,)) == (1, 2, 1, 4)


def test_tamari_compose_matches_grafting():
    for m in range(1, 6):
        for n in range(1, 6):
            for s in ta.trees(m):
                for t in ta.trees(n):
                    for i in range(1, m + 1):
                        want = ta.tree_to_weights(ta.graft(s, i, t))
                        assert ta.tamari_compose(ta.tree_to_weights(s), i, ta.tree_to_weights(t)) == want


def test_h_normalization_golden_and_errors():
    assert ta.normalize_h((1, 2, 1, 3, 5)) == (1, 2, 1, 4, 5)
    with pytest.raises(NotInL):
        ta.normalize_h((2, 2, 3))


@pytest.mark.parametrize("n", range(1, 7))
def test_h_is_least_weight_sequence_above(n):
    W = ta.weight_sequences(n)
    Ln = [(1,) + mid + (n,) for mid in itertools.product(*[range(1, j + 1) for j in range(2, n)])] if n > 1 else [(1,)]
    for u in Ln:
        above = [x for x in W if all(a <= b for a, b in zip(u, x))]
        h = ta.normalize_h(u)
        assert h in above
        assert all(all(a <= b for a, b in zip(h, x)) for x in above)
        assert ta.normalize_h(h) == h
        assert (h == u) == ta.is_weight_sequence(u)


def test_h_commutes_with_composition():
    L = lambda n: [(1,) + mid + (n,) for mid in itertools.product(*[range(1, j + 1) for j in range(2, n)])]
    for m in range(2, 5):
        for n in range(2, 5):
            for a in L(m):
                for b in L(n):
                    for i in range(1, m + 1):
                        lhs = ta.normalize_h(ta.tamari_compose(a, i, b))
                        assert lhs == ta.tamari_compose(ta.normalize_h(a), i, ta.normalize_h(b))


def test_tamari_meet_join():
    assert ta.tamari_meet((1, 2, 1, 4), (1, 1, 3, 4)) == (1, 1, 1, 4)
    u = (1, 2, 1, 4)
    assert ta.tamari_join(u, u) == u
    with pytest.raises(LengthMismatch):
        ta.tamari_meet((1,), (1, 2))


def test_w4_hasse_diagram():
    L = get("tamari").component(4)
    edges = {(L.fmt(a), L.fmt(b)) for a, b in covering_edges(L)}
    assert edges == {("1,1,1,4", "1,1,2,4"), ("1,1,2,4", "1,1,3,4"), ("1,1,3,4", "1,2,3,4"),
                     ("1,1,1,4", "1,2,1,4"), ("1,2,1,4", "1,2,3,4")}


@pytest.mark.parametrize("n", range(2, 7))
def test_weight_order_is_rotation_order(n):
    L = get("tamari").component(n)
    # a right rotation ((A,B),C) -> (A,(B,C)) moves down in the weight order
    covers = {(ta.tree_to_weights(s), ta.tree_to_weights(t)) for t in ta.trees(n) for s in ta.rotation_covers(t)}
    assert covers == set(covering_edges(L))


def test_tamari_is_full_lattice_operad():
    P = get("tamari")
    assert all_passed(check_operad_laws(P, 6))
    assert all_passed(check_lattice_compatibility(P, 6, mode="full"))


# -------------------------------------------------------------- permutations

def test_perm_golden():
    assert pm.perm_compose((3, 1, 4, 2, 5), 3, (2, 3, 1)) == (3, 1, 5, 6, 4, 2, 7)
    assert pm.perm_compose((2, 1, 3), 2, (1,)) == (2, 1, 3)


def test_inversion_image_decomposition():
    for m in range(1, 5):
        for n in range(1, 5):
            for a in itertools.permutations(range(1, m + 1)):
                for b in itertools.permutations(range(1, n + 1)):
                    for i in range(1, m + 1):
                        parts = pm.inversion_image(a, i, b).values()
                        union = frozenset().union(*parts)
                        assert sum(map(len, parts)) == len(union)
                        assert union == pm.inversions(pm.perm_compose(a, i, b))


def test_weak_order_example():
    assert pm.inversions((1, 3, 2)) == {(3, 2)}
    assert pm.inversions((3, 1, 2)) == {(3, 1), (3, 2)}
    assert pm.perm_leq((1, 3, 2), (3, 1, 2))


def test_join_via_closure_is_least_upper_bound():
    for n in range(1, 5):
        S = list(itertools.permutations(range(1, n + 1)))
        for a in S:
            assert pm.perm_join(a, a) == a
            for b in S:
                j, m = pm.perm_join(a, b), pm.perm_meet(a, b)
                ups = [c for c in S if pm.perm_leq(a, c) and pm.perm_leq(b, c)]
                downs = [c for c in S if pm.perm_leq(c, a) and pm.perm_leq(c, b)]
                assert j in ups and all(pm.perm_leq(j, c) for c in ups)
                assert m in downs and all(pm.perm_leq(c, m) for c in downs)


def test_second_argument_maps_are_injective_lattice_homs():
    P = get("perm")
    for m in range(1, 5):
        for n in range(1, 6 - m):
            L = P.component(n)
            for a in P.elements(m):
                for i in range(1, m + 1):
                    f = lambda x: pm.perm_compose(a, i, x)
                    assert len({f(x) for x in L.elements}) == len(L.elements)
                    T = P.component(m + n - 1)
                    for x in L.elements:
                        for y in L.elements:
                            assert f(L.meet(x, y)) == T.meet(f(x), f(y))
                            assert f(L.join(x, y)) == T.join(f(x), f(y))


def test_first_argument_monotonicity_fails():
    a, b = (1, 3, 2), (3, 1, 2)
    assert pm.perm_leq(a, b)
    left, right = pm.perm_compose(a, 1, (1, 2)), pm.perm_compose(b, 1, (1, 2))
    assert (left, right) == ((1, 2, 4, 3), (3, 4, 1, 2))
    assert not pm.perm_leq(left, right)


def test_perm_reversal_shape():
    for m in range(1, 4):
        for n in range(1, 4):
            for a in itertools.permutations(range(1, m + 1)):
                for d in itertools.permutations(range(1, n + 1)):
                    for i in range(1, m + 1):
                        assert pm.reverse(pm.perm_compose(a, i, d)) == pm.perm_compose(pm.reverse(a), m - i + 1,
                                                                                        pm.reverse(d))


# ---------------------------------------------------------------- partitions

def test_part_goldens():
    assert pa.part_compose((3, 2, 1, 1), 2, (2, 2)) == (5, 4, 4, 2, 1, 1)
    assert pa.part_compose((3, 2), 3, (2, 1, 1)) == (5, 4, 2, 1, 1)


def test_part_conjugate_notation_golden():
    P = get("part'")
    out = P.compose(P.parse("1^1,2^1,4^1"), 2, P.parse("2^2"))
    assert P.fmt(out) == "1^1,3^2,4^1,6^1"


def test_box_complement():
    assert pa.box_complement((5, 2, 1)) == (5, 4, 3)
    with pytest.raises(NotDistinctParts):
        pa.box_complement((2, 2))
    P = pa.part_d(5)
    for k in range(2, 6):
        for lam in P.elements(k):
            if lam[0] <= 5:
                assert pa.box_complement(pa.box_complement(lam)) == lam


def test_part_d_complement_is_reversing():
    reports = check_operad_laws(pa.part_d(2), 5)
    assert all_passed(reports)
    assert any(r.law == "action:#" for r in reports)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(lambda d: d[-1] > 0),
       st.lists(st.integers(0, 3), min_size=1, max_size=3).filter(lambda d: d[-1] > 0),
       st.data())
def test_part_compose_is_gap_insertion(d, e, data):
    i = data.draw(st.integers(1, len(d) + 1))
    lam, mu = pa.to_partition(tuple(d)), pa.to_partition(tuple(e))
    assert pa.to_tuple(lam) == tuple(d)
    assert pa.part_compose(lam, i, mu) == pa.to_partition(pa.gap_insert(tuple(d), i, tuple(e)))


def test_tuple_order_is_diagram_containment():
    P = get("part")
    for k in range(2, 5):
        L = P.component(k)
        for a in P.elements(k):
            for b in P.elements(k):
                tup = L.leq(a, b)
                contain = all(x <= y for x, y in zip(a, b))
                # tuple order implies containment; the converse fails
                assert not tup or contain
    a, b = (2, 1), (2, 2)
    assert all(x <= y for x, y in zip(a, b)) and not P.component(3).leq(a, b)


def test_conjugate_is_involutive():
    for lam in [(5, 4, 4, 2, 1, 1), (3,), (2, 2, 1)]:
        assert pa.conjugate(pa.conjugate(lam)) == lam


# -------------------------------------------------------------- inversions

def test_inv_component_bounds():
    P = get("inv")
    els = {x.value for x in P.elements(5)}
    assert els == {(d, v) for d in range(5) for v in range((4 - d) * d + 1)}


def test_inv_pairs_are_realized_and_bounded():
    for n in range(1, 6):
        seen = {(iv.degree(t), iv.inv(t)) for t in iv.labelled_trees(n)}
        assert seen == set(iv.component_pairs(n))
    assert (2, 4) in {(iv.degree(t), iv.inv(t)) for t in iv.labelled_trees(5)}


def test_inv_compose_is_max_over_realizations():
    for m in range(2, 4):
        for n in range(2, 4):
            trees_m, trees_n = list(iv.labelled_trees(m)), list(iv.labelled_trees(n))
            for i in range(1, m + 1):
                best = {}
                for s in trees_m:
                    for t in trees_n:
                        key = ((iv.degree(s), iv.inv(s)), (iv.degree(t), iv.inv(t)))
                        best[key] = max(best.get(key, -1), iv.inv(iv.graft(s, i, t)))
                for (p, q), v in best.items():
                    out = iv.inv_compose(At(m, p), i, At(n, q))
                    assert out == At(m + n - 1, (p[0] + q[0], v))


def test_inv_trivial_composite_and_budget():
    assert iv.inv_compose(At(2, (0, 0)), 1, At(3, (0, 0))) == At(4, (0, 0))
    from latop.errors import ArityTooLarge
    with pytest.raises(ArityTooLarge):
        iv.inv_compose(At(5, (0, 0)), 1, At(5, (0, 0)))


def test_inv_sequential_passes_parallel_fails():
    rep = {r.law: r for r in check_operad_laws(get("inv"), 6, laws=["sequential", "parallel"])}
    assert rep["sequential"].ok
    assert rep["parallel"].status == "fail"


# ------------------------------------------------------------------ subsets

def test_subset_goldens():
    S = get("subset")
    a = S.parse("[2,3]@3")
    assert S.fmt(S.compose(a, 1, S.parse("[1,2]@2"))) == "[3,4]@4"
    assert S.fmt(S.compose(a, 2, S.parse("[1,2]@2"))) == "[2,3,4]@4"


def test_triassociative_relations():
    r = w.triassociative_relations()
    assert (r["composites"], r["values"], r["relations"]) == (18, 7, 11)
    assert all(x.value for x in r["groups"])


def test_absorbing_subsets():
    S = get("subset-diamond")
    empty = At(2, frozenset())
    assert S.compose(At(3, frozenset({1, 2})), 1, empty).value == frozenset()
    assert all_passed(check_operad_laws(S, 4))


# --------------------------------------------------------------- word operads

def test_ternary_goldens():
    T, Tv = get("t"), get("tv")
    assert T.compose("0+", 2, "0") == "00"
    assert T.compose("0-", 2, "-0") == "0+0"
    assert Tv.compose("-", 1, "-+") == "+-"
    assert Tv.compose("-+", 2, "++") == "-++"


def test_ternary_hyperoctahedral_equivariance():
    for tag in ("t", "tv"):
        assert all_passed(w.check_hyperoctahedral(get(tag), 3))


def test_ternary_dual_has_same_compositions():
    T, Tv = get("t"), get("tv")
    for m in range(1, 4):
        for n in range(1, 4):
            for a in itertools.product("0+-", repeat=m):
                for b in itertools.product("0+-", repeat=n):
                    a_, b_ = "".join(a), "".join(b)
                    for i in range(1, m + 1):
                        x = T.compose(a_, i, b_)
                        if not isinstance(x, Special):
                            assert Tv.compose(a_, i, b_) == x


def test_comp_b_goldens():
    B, Bv = get("comp_b"), get("comp_bv")
    assert B.compose("+0", 3, "0") == "+00"
    assert B.compose("-", 1, "00") == "00-"
    assert Bv.compose("+-", 3, "+") == "+-+"
    with pytest.raises(AlphabetMismatch):
        w.gap_insert_compose("01", "0", 1, "2")


def test_colored_codec():
    assert w.fmt_colored(w.word_to_colored("-0-+0")) == "1_1+2_2+1_2+2_1"
    assert w.colored_to_word(w.parse_colored("1_1+2_2+1_2+2_1")) == "-0-+0"
    for n in range(1, 6):
        for word in itertools.product("0+-", repeat=n - 1):
            word = "".join(word)
            parts = w.word_to_colored(word)
            assert sum(p for p, _ in parts) == n and parts[0][1] == 1
            assert w.colored_to_word(parts) == word


def test_colored_compose_golden():
    C = get("colored")
    a, b = w.parse_colored("2_1+1_2+1_1"), w.parse_colored("2_1+1_2")
    assert w.fmt_colored(C.compose(a, 3, b)) == "2_1+2_2+1_2+1_1"


def test_type_b_partition_codec():
    pi = w.word_to_partition_b("-0+-")
    assert w.fmt_partition_b(pi) == "{{-1,3,-4,-5},{-2,2},{1,-3,4,5}}"
    assert w.partition_b_to_word(pi) == "-0+-"
    assert w.partition_b_to_word(w.trivial_partition_b(3)) == Special("E", 3)
    with pytest.raises(InvalidPartitionShape):
        w.partition_b_to_word([{1, 2}, {-1, -2}, {3}, {-3}])
    for n in range(1, 6):
        for word in itertools.product("0+-", repeat=n - 1):
            word = "".join(word)
            assert w.partition_b_to_word(w.word_to_partition_b(word)) == word


def test_flip_is_lattice_automorphism():
    B = get("comp_b")
    flip = B.action("flip").fn
    for n in range(1, 5):
        L = B.component(n)
        for a in L.elements:
            assert flip(flip(a)) == a
            for b in L.elements:
                assert flip(L.meet(a, b)) == L.meet(flip(a), flip(b))
                assert flip(L.join(a, b)) == L.join(flip(a), flip(b))


def test_comp_d_components():
    D = get("comp_d")
    assert {D.fmt(x) for x in D.component(3).elements} == {"++", "--", "00", "E"}
    words4 = {D.fmt(x) for x in D.component(4).elements}
    assert len(words4) == 12
    assert {"+++", "+--", "-+-", "--+"} <= words4


def test_comp_d_closed_and_lattice():
    B, D = get("comp_b"), get("comp_d")
    members = {n: [x for x in B.elements(n) if w.comp_d_member(x)] for n in range(1, 7)}
    for m in range(1, 7):
        for n in range(1, 8 - m):
            for a in members[m]:
                for b in members[n]:
                    for i in range(1, m + 1):
                        assert w.comp_d_member(B.compose(a, i, b))
    for n in range(1, 7):
        assert D.component(n).elements  # from_poset raises if meets or joins are missing


@pytest.mark.parametrize("alphabet", ["a", "ab", "abc"])
def test_m_associative_reversal_shape(alphabet):
    A = build_m_associative(alphabet, None, tag="A")
    assert all_passed(check_operad_laws(A, 5 if len(alphabet) < 3 else 4))


def test_comp_involutions():
    reports = {r.law: r for r in check_operad_laws(get("comp"), 5)}
    assert reports["action:*"].ok and reports["action:*:antimorphism"].ok
    assert reports["action:#"].ok


# ------------------------------------------------------------------ polygons

def test_gluing_worked_example():
    f = lambda t: pg.polygon_compose(4, 2, 1, 3, t)
    assert f((0, ("e", 2))) == ONE and f((1, ("e", 1))) == ONE
    assert f((1, ("e", 2))) == ("e", 2)
    assert f((1, ("e", 0))) == ("e", 3)
    assert f((0, ("e", 3))) == ("e", 4)
    assert f(ZERO) == ZERO and f(ONE) == ONE


@pytest.mark.parametrize("n,m", [(n, m) for n in range(3, 7) for m in range(3, 7)])
def test_gluing_is_monotone(n, m):
    src, tgt = pg.glued_source(n, m), pg.polygon_lattice(n + m - 2)
    for a in range(n):
        for b in range(m):
            f = lambda t: pg.polygon_compose(n, a, b, m, t)
            for x in src.elements:
                for y in src.elements:
                    if src.leq(x, y):
                        assert tgt.leq(f(x), f(y))


def test_gluing_is_not_a_lattice_hom():
    src = pg.glued_source(4, 3)
    x, y = (0, ("e", 2)), (1, ("e", 1))
    assert src.meet(x, y) == ZERO
    assert pg.polygon_compose(4, 2, 1, 3, x) == ONE == pg.polygon_compose(4, 2, 1, 3, y)


def test_pentagon_subdivisions():
    L = get("pt").component(4)
    sizes = sorted(len(x.value) if isinstance(x, At) else -1 for x in L.elements)
    assert sizes == [-1] + [0] + [1] * 5 + [2] * 5


@pytest.mark.parametrize("n", range(2, 8))
def test_atoms_are_triangulations(n):
    L = get("pt").component(n)
    atoms = [x for x in L.elements if x != L.bottom
             and not any(y not in (x, L.bottom) and L.leq(y, x) for y in L.elements)]
    assert len(atoms) == catalan(n - 1)
    assert {pg.tree_to_subdivision(t) for t in ta.trees(n)} == set(atoms)


@pytest.mark.parametrize("n", range(2, 7))
def test_rotations_are_diagonal_flips(n):
    for t in ta.trees(n):
        d = pg.tree_to_subdivision(t)
        for s in ta.rotation_covers(t):
            e = pg.tree_to_subdivision(s)
            assert len(d.value - e.value) == 1 and len(e.value - d.value) == 1


def test_subdivision_tree_codec_round_trips():
    P = get("pt")
    for n in range(1, 7):
        for t in ta.trees(n):
            assert pg.subdivision_to_tree(pg.tree_to_subdivision(t)) == t
        for x in pg.subdivisions(n):
            assert P.parse(pg.fmt_subdivision(x)) == x
            t = pg.subdivision_to_tree(x)
            # one internal vertex per diagonal plus the root
            count = lambda node: 0 if node is None else 1 + sum(map(count, node))
            assert count(t) == len(x.value) + (n > 1)


def test_subdivision_operad_laws():
    P = get("pt")
    assert all_passed(check_operad_laws(P, 5))
    assert all_passed(check_lattice_compatibility(P, 5, mode="separate"))


# --------------------------------------------------------------------- walks

def test_walk_goldens():
    assert wk.walk_compose("ENDD", 3, "DNE") == "ENDNEDD"
    assert wk.partition_to_walk((4, 2, 2, 1)) == "ENENNEEN"
    assert wk.walk_to_partition("ENENNEEN") == (4, 2, 2, 1)
    with pytest.raises(StepNotInS):
        wk.walk_compose("EX", 1, "E")


def test_hook_relation():
    assert wk.walk_compose(wk.hook(1, 2), 1, wk.hook(2, 1)) == wk.walk_compose(wk.hook(2, 2), 2, wk.hook(1, 1))


@given(st.integers(1, 4), st.integers(1, 3), st.integers(1, 4), st.integers(1, 3), st.data())
def test_hook_relations_general(a, b, c, d, data):
    i = data.draw(st.integers(1, c))
    lhs = wk.walk_compose(wk.hook(a, b), 1, wk.hook(c, d), wk.NE)
    rhs = wk.walk_compose(wk.hook(a + i - 1, b), i, wk.hook(c - i + 1, d), wk.NE)
    assert lhs == rhs


def test_partition_walk_codec_round_trips():
    for k in range(1, 5):
        for lam in pa.part_window(4)(k + 1):
            walk = wk.partition_to_walk(lam)
            assert wk.walk_to_partition(walk) == lam
            assert wk.endpoint(walk, wk.NE) == (lam[0], len(lam))


def test_walk_operad_laws():
    assert all_passed(check_operad_laws(get("walk"), 4))
