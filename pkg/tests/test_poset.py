import json

import pytest

from orthoposet.orbit import make_orthoset
from orthoposet.poset import (
    EdgeClass,
    NotAdmissible,
    Ordering,
    build_poset,
    check_closure_in_compare,
    check_compare_transitive,
    check_structure,
    classify_edge,
    compare,
    maximal_element,
    verify_order_axioms,
)
from orthoposet.root_system import build_root_system, parse_root
from support import admissible_classes, eps_height, orbit_for, orbit_of_roots, poset_for

SMALL = ["A3", "A4", "A5", "D4", "D5", "D6", "E6"]


def eps_roots(rs, B):
    return {rs.to_epsilon(rs.positive_roots[k]) for k in B}


def eps(n, i, j, sign):
    v = [0] * n
    v[i - 1] = 1
    v[j - 1] = sign
    return tuple(v)


def test_compare_examples():
    rs = build_root_system("A3")
    a1 = make_orthoset(rs, [rs.simple(1)])
    a12 = make_orthoset(rs, [(1, 1, 0)])
    assert compare(rs, a1, a1) is Ordering.EQUAL
    assert compare(rs, a1, a12) is Ordering.LESS
    assert compare(rs, a12, a1) is Ordering.GREATER
    a3 = make_orthoset(rs, [rs.simple(3)])
    assert compare(rs, a1, a3) is Ordering.INCOMPARABLE


def test_classify_examples():
    rs = build_root_system("A3")
    a1 = make_orthoset(rs, [rs.simple(1)])
    assert classify_edge(rs, 1, a1) is EdgeClass.FIXES_IN_B
    assert classify_edge(rs, 2, a1) is EdgeClass.RAISES
    assert classify_edge(rs, 3, a1) is EdgeClass.FIXES_PERP
    assert classify_edge(rs, 2, make_orthoset(rs, [(1, 1, 0)])) is EdgeClass.LOWERS


def test_d5_two_routes_to_b0():
    orbit = orbit_of_roots("D5", ("e3+e4", "e1+e2"))
    p = build_poset(orbit)
    rs = p.rs
    B = orbit.index_of[make_orthoset(rs, [parse_root(rs, "e3+e4"), parse_root(rs, "e1+e2")])]
    assert p.cls(B, 2) is EdgeClass.RAISES
    assert eps_roots(rs, maximal_element(p)) == {eps(5, 1, 4, 1), eps(5, 2, 3, 1)}
    # r_2 first, then r_1 or r_3; both a1 and a3 are orthogonal to B
    assert p.perp_nodes(B) == [1, 3]
    assert p.act(1, p.act(2, B)) == p.b0
    assert p.act(3, p.act(2, B)) == p.b0
    assert p.level[B] == 2


def test_a3_highest_root():
    p = poset_for("A3", 1)
    rs = p.rs
    assert maximal_element(p) == (rs.lookup[(1, 1, 1)],)
    assert sorted(set(p.level)) == [0, 1, 2]


@pytest.mark.parametrize("n", range(2, 9))
def test_type_a_closed_form(n):
    # A_{n-1} acting on e_1..e_n
    for p in range(1, n // 2 + 1):
        P = poset_for(f"A{n - 1}", p)
        rs = P.rs
        want = {eps(n, k, n - p + k, -1) for k in range(1, p + 1)}
        assert eps_roots(rs, maximal_element(P)) == want
        assert P.c_nodes == list(range(p + 1, n - p))
        want_type = () if n - 2 * p - 1 <= 0 else (("A", n - 2 * p - 1),)
        assert P.c_type() == want_type


@pytest.mark.parametrize("n", range(4, 9))
def test_type_d_closed_form(n):
    for p in range(1, n // 2 + 1):
        want = {eps(n, k, 2 * p + 1 - k, 1) for k in range(1, p + 1)}
        want_c = [p] + list(range(2 * p + 1, n + 1)) if n - 2 * p >= 2 else [p]
        posets = [poset_for(f"D{n}", p, 0, 0)]
        if 2 * p == n:
            posets.append(poset_for(f"D{n}", p, 1))
        got = [eps_roots(P.rs, maximal_element(P)) for P in posets]
        flipped = {eps(n, k, 2 * p + 1 - k, -1 if 2 * p + 1 - k == n else 1) for k in range(1, p + 1)}
        if 2 * p == n:
            # the two fused classes differ by the sign of e_n
            assert sorted(map(sorted, got)) == sorted(map(sorted, [want, flipped]))
        else:
            assert got == [want]
        for P in posets:
            assert P.c_nodes == want_c


def test_e7_size7_top():
    p = poset_for("E7", 7)
    assert p.level[p.b0] == 0 and p.c_nodes == []
    rs = p.rs
    B0 = maximal_element(p)
    assert len(B0) == 7
    assert all(rs.root_gram[a, b] == 0 for a in B0 for b in B0 if a != b)


@pytest.mark.parametrize("name,size", [("E6", 4), ("A5", 2), ("D5", 2)])
def test_b0_is_compare_maximum(name, size):
    # oracle: the top under the raw comparison on all members
    p = poset_for(name, size)
    rs = p.rs
    members = p.orbit.members
    tops = [
        m
        for m in range(len(members))
        if all(compare(rs, members[x], members[m]) is Ordering.LESS for x in range(len(members)) if x != m)
    ]
    assert tops == [p.b0]


def test_not_admissible_rejected():
    with pytest.raises(NotAdmissible):
        build_poset(orbit_of_roots("E6", ("a2", "a3", "a5")))


@pytest.mark.parametrize("name", ["A5", "A7", "D5", "D7"])
def test_compare_against_eps_heights(name):
    # oracle: heights read off the orthonormal coordinates
    rs = build_root_system(name)
    fam, n = rs.dtype.family, rs.rank
    orbit = orbit_for(name, 2)

    def h(k):
        return eps_height(fam, n, rs.to_epsilon(rs.positive_roots[k]))

    members = orbit.members
    for a in range(0, len(members), 3):
        for b in range(0, len(members), 5):
            A, B = set(members[a]), set(members[b])
            if A == B:
                continue
            ha, hb = min(h(k) for k in A - B), min(h(k) for k in B - A)
            want = Ordering.LESS if ha < hb else Ordering.GREATER if ha > hb else Ordering.INCOMPARABLE
            assert compare(rs, members[a], members[b]) is want


@pytest.mark.parametrize("cls", admissible_classes(SMALL), ids=str)
def test_axioms_and_structure(cls):
    p = poset_for(*cls)
    rep = verify_order_axioms(p)
    rep.merge(check_structure(p))
    assert rep.passed, rep.summary()
    assert rep.checked["comparable"] == len(p) * p.rs.rank


@pytest.mark.parametrize("cls", admissible_classes(SMALL), ids=str)
def test_closure_and_transitivity(cls):
    p = poset_for(*cls)
    rep = check_closure_in_compare(p)
    if len(p) <= 400:
        rep.merge(check_compare_transitive(p))
    assert rep.passed, rep.summary()


def test_single_member_orbit_vacuous():
    p = build_poset(orbit_of_roots("A1", ("a1",)))
    assert len(p) == 1 and p.b0 == 0
    rep = verify_order_axioms(p)
    rep.merge(check_structure(p))
    assert rep.passed


def test_case_exhaustive():
    p = poset_for("E6", 2)
    for m in range(len(p)):
        for i in p.rs.nodes:
            c = p.cls(m, i)
            assert (c in (EdgeClass.FIXES_IN_B, EdgeClass.FIXES_PERP)) == (p.act(i, m) == m)


def test_tree_word_descends():
    p = poset_for("D5", 2)
    for m in range(len(p)):
        w = p.tree_word(m)
        assert len(w) == p.level[m]
        cur = p.b0
        for i in reversed(w):
            assert p.cls(cur, i) is EdgeClass.LOWERS
            cur = p.act(i, cur)
        assert cur == m


def test_exports():
    p = poset_for("A3", 1)
    dot = p.to_dot()
    assert dot.startswith('digraph "A3" {')
    raises = sum(1 for m in range(len(p)) for i in p.rs.nodes if p.cls(m, i) is EdgeClass.RAISES)
    assert dot.count("->") == raises
    assert "(level 0)" in dot
    out = p.to_json()
    assert out["b0"] == p.b0 and out["levels"] == p.level
    assert out["edge_class"][p.b0].count("RAISES") == 0
    json.dumps(out)
    assert p.to_dot() == poset_for("A3", 1).to_dot()
