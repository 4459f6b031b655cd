import itertools

import pytest
from hypothesis import given, strategies as st

from gtrees.fingroup import (
    GroupError,
    check_monomorphism,
    class_of,
    conjugacy_class_reps,
    cyclic,
    from_table,
    is_conjugate_subgroup,
    make_group,
    subgroup_generated,
    symmetric,
)
from oracles import subgroup_closure

SMALL = [cyclic(1), cyclic(2), cyclic(4, "a"), cyclic(6, "b"), cyclic(12), symmetric(3), symmetric(4)]


def test_cyclic_one_is_trivial():
    g = cyclic(1)
    assert g.order == 1
    assert list(g.elements) == ["1"]


def test_cyclic_four():
    g = cyclic(4, "a")
    a = g.index("a")
    assert g.order == 4
    assert g.power(a, 4) == g.identity
    assert g.element_order(a) == 4
    assert g.name_of(g.power(a, 2)) == "a^2"


def test_default_generator_symbol():
    assert cyclic(3).name_of(1) == "g"


def test_symmetric_names_and_order():
    s3 = symmetric(3)
    assert s3.order == 6
    assert {"()", "(12)", "(13)", "(23)", "(123)", "(132)"} == set(s3.elements)
    assert symmetric(4).order == 24


def test_table_rejects_non_associative():
    # a Latin square with identity e that is not associative
    rows = {
        "e": ["e", "a", "b", "c", "d"],
        "a": ["a", "e", "c", "d", "b"],
        "b": ["b", "d", "e", "a", "c"],
        "c": ["c", "b", "d", "e", "a"],
        "d": ["d", "c", "a", "b", "e"],
    }
    with pytest.raises(GroupError, match=r"associativ.*\("):
        from_table("Q", rows)


def test_table_rejects_missing_identity():
    with pytest.raises(GroupError):
        from_table("Bad", {"x": ["y", "y"], "y": ["y", "y"]})


def test_table_round_trip_of_cyclic():
    g = cyclic(3, "c")
    rows = {x: [g.elements[g.mul(i, j)] for j in range(3)] for i, x in enumerate(g.elements)}
    h = from_table("C3", rows)
    assert h.order == 3 and h.is_abelian()


def test_make_group_specs():
    assert make_group(("cyclic", 5)).order == 5
    assert make_group(("symmetric", 3)).order == 6
    with pytest.raises(GroupError):
        make_group(("dihedral", 4))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_axioms_hold_exhaustively(g):
    e = g.identity
    for x in range(g.order):
        assert g.mul(e, x) == x == g.mul(x, e)
        assert g.mul(g.inv(x), x) == e
    for x, y, z in itertools.product(range(g.order), repeat=3):
        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


def test_subgroup_generated_examples():
    z4 = cyclic(4, "a")
    assert subgroup_generated(z4, ["a^2"]).names() == ["1", "a^2"]
    z6 = cyclic(6, "b")
    assert subgroup_generated(z6, ["b^3", "b^2"]).order == 6
    assert subgroup_generated(z6, []).members == frozenset([z6.identity])
    with pytest.raises(GroupError):
        subgroup_generated(z6, ["q"])


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_closure_matches_oracle_and_is_idempotent(g):
    for gens in itertools.combinations(range(g.order), 2):
        s = subgroup_generated(g, list(gens))
        assert s.members == subgroup_closure(g, gens)
        assert subgroup_generated(g, list(s.members)).members == s.members


def test_conjugacy_examples():
    z4 = cyclic(4, "a")
    h = subgroup_generated(z4, ["a^2"])
    ok, w = is_conjugate_subgroup(z4, h, h)
    assert ok and w == z4.identity
    assert is_conjugate_subgroup(z4, h, z4.whole()) == (False, None)
    s3 = symmetric(3)
    a = subgroup_generated(s3, ["(12)"])
    b = subgroup_generated(s3, ["(13)"])
    ok, w = is_conjugate_subgroup(s3, a, b)
    assert ok
    # brute force confirms the witness
    assert a.conjugate(w).members == b.members
    with pytest.raises(GroupError):
        is_conjugate_subgroup(s3, a, subgroup_generated(z4, ["a"]))


@pytest.mark.parametrize("g", [cyclic(6), symmetric(3), symmetric(4)], ids=lambda g: g.name)
def test_conjugacy_is_an_equivalence_relation(g):
    subs = g.subgroups()
    for a in subs:
        ok, w = is_conjugate_subgroup(g, a, a)
        assert ok
    for a, b in itertools.product(subs, repeat=2):
        ok, w = is_conjugate_subgroup(g, a, b)
        if ok:
            ok2, w2 = is_conjugate_subgroup(g, b, a)
            assert ok2
            assert b.conjugate(g.inv(w)).members == a.members
    for a, b, c in itertools.product(subs[:12], repeat=3):
        ok1, w1 = is_conjugate_subgroup(g, a, b)
        ok2, w2 = is_conjugate_subgroup(g, b, c)
        if ok1 and ok2:
            assert a.conjugate(g.mul(w2, w1)).members == c.members
    for a in subs:
        assert class_of(g, a) == class_of(g, conjugacy_class_reps(g)[class_of(g, a)])


@pytest.mark.parametrize("g", [cyclic(12), symmetric(3), symmetric(4)], ids=lambda g: g.name)
def test_conjugate_into_itself_is_equal(g):
    for a in g.subgroups():
        for x in range(g.order):
            conj = a.conjugate(x).members
            if conj <= a.members:
                assert conj == a.members


def test_lattice_sizes():
    # number of subgroups: Z6 has 4, S3 has 6, S4 has 30
    assert len(cyclic(6).subgroups()) == 4
    assert len(symmetric(3).subgroups()) == 6
    assert len(symmetric(4).subgroups()) == 30


def test_monomorphism_examples():
    z2 = cyclic(2, "x")
    z4 = cyclic(4, "a")
    m = check_monomorphism(z2, z4, {"x": "a^2"})
    assert m.image().names() == ["1", "a^2"]
    with pytest.raises(GroupError, match="homomorphism"):
        check_monomorphism(z2, z4, {"x": "a"})
    with pytest.raises(GroupError, match="injective"):
        check_monomorphism(z4, z2, {"a": "x"})


def test_monomorphism_into_symmetric_group():
    z3 = cyclic(3, "y")
    s3 = symmetric(3)
    m = check_monomorphism(z3, s3, {"y": "(123)"})
    assert m(z3.index("y^2")) == s3.index("(132)")


@given(st.integers(1, 24), st.integers(0, 23), st.integers(0, 23))
def test_cyclic_power_law(n, i, j):
    g = cyclic(n)
    gen = g.generators()[0] if n > 1 else g.identity
    x, y = g.power(gen, i), g.power(gen, j)
    assert g.mul(x, y) == g.mul(y, x) == g.power(gen, i + j)
    assert g.power(g.mul(x, y), n) == g.identity
