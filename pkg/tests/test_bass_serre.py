import random

import pytest
from hypothesis import given, settings, strategies as st

from gtrees import fixtures
from gtrees.bass_serre import (
    EllipticError,
    PathWord,
    WordError,
    act,
    ball,
    base_vertex,
    classify_finite_subgroup,
    distance,
    element_inv,
    element_mul,
    finite_subgroup_classes,
    fixed_set,
    fixed_vertex,
    fixes,
    format_word,
    is_elliptic,
    is_elliptic_subgroup,
    lift,
    normal_form,
    parse_word,
    path,
    stabilizer,
    translation_length,
)
from gen import random_loop, to_library
from oracles import OracleTree, britton, inverse, is_trivial, letters, raw_items


@pytest.fixture(scope="module")
def ssf1():
    return fixtures.load("SSF1")


def W(g, text):
    return parse_word(g, text)


def test_normal_form_examples(ssf1):
    assert normal_form(ssf1, "a·a·a·a").is_identity
    assert normal_form(ssf1, "a^2·b^3").is_identity
    abab = normal_form(ssf1, "a·b·a·b")
    # a·e·b·e⁻¹·a·e·b·e⁻¹ : four group syllables between letters
    assert len([s for s in abab.syllables[::2] if s != ssf1.group("u").identity]) == 4
    assert not britton(ssf1, raw_items(abab)) == []


def test_ill_formed_path_rejected(ssf1):
    with pytest.raises(WordError):
        parse_word(ssf1, "e⁻¹")
    with pytest.raises(WordError):
        parse_word(ssf1, "Z6.b", strict=True)


def test_mul_and_inv_examples(ssf1):
    a, b = W(ssf1, "a"), W(ssf1, "b")
    assert element_mul(a, W(ssf1, "a^3")).is_identity
    ab = a * b
    assert element_mul(ab, element_inv(b) * element_inv(a)).is_identity
    assert element_mul(ab, ab) == ab ** 2
    assert translation_length(ab ** 2) == 4


def test_mismatched_base_rejected(ssf1):
    other = fixtures.load("SSF1")
    with pytest.raises(WordError):
        W(ssf1, "a") * W(other, "a")
    with pytest.raises(WordError):
        act(W(ssf1, "a"), base_vertex(other))


def test_translation_length_examples(ssf1):
    a, b = W(ssf1, "a"), W(ssf1, "b")
    assert translation_length(a) == 0
    assert translation_length(a * b) == 2
    assert OracleTree(ssf1).translation_length(raw_items(a * b)) == 2
    assert translation_length(b * a * b.inverse()) == 0


def test_act_and_path_examples(ssf1):
    u = base_vertex(ssf1)
    assert act(PathWord.identity(ssf1), u) == u
    assert act(W(ssf1, "a"), u) == u
    bu = act(W(ssf1, "b"), u)
    assert distance(u, bu) == 2
    p = path(u, bu)
    assert len(p) == 3 and p[1] == lift(ssf1, "w")
    assert path(u, u) == [u]
    abu = act(W(ssf1, "a·b"), u)
    assert len(path(u, abu)) == 3


def test_fixed_set_examples(ssf1):
    assert len(fixed_set([PathWord.identity(ssf1)], 3)) == len(ball(ssf1, 3))
    assert fixed_set([W(ssf1, "a")], 2) == [base_vertex(ssf1)]
    assert set(fixed_set([W(ssf1, "a^2")], 2)) == set(ball(ssf1, 2))
    with pytest.raises(EllipticError):
        fixed_set([W(ssf1, "a·b")], 2)


def test_fixed_vertex_is_fixed(ssf1):
    for text in ("a", "b", "b·a·b⁻¹", "a·b·a^2·b·a^3·b⁻¹·a^2·b⁻¹·a⁻¹"):
        h = [W(ssf1, text)]
        x = fixed_vertex(h)
        assert all(fixes(k, x) for k in h)
        assert x in fixed_set(h, distance(base_vertex(ssf1), x))


def test_elliptic_subgroup_examples(ssf1):
    a, b = W(ssf1, "a"), W(ssf1, "b")
    assert is_elliptic_subgroup([a])
    assert not is_elliptic_subgroup([a, b])
    assert is_elliptic_subgroup([W(ssf1, "a^2"), b])


@pytest.mark.parametrize("name, n", [("TRIV", 4), ("SSF1", 5), ("FREE3", 4)])
def test_finite_subgroup_class_counts(name, n):
    assert len(finite_subgroup_classes(fixtures.load(name))) == n


def test_ssf1_class_orders(ssf1):
    assert sorted(c.order for c in finite_subgroup_classes(ssf1)) == [1, 2, 3, 4, 6]


def test_classification_of_conjugates(ssf1):
    a, b = W(ssf1, "a"), W(ssf1, "b")
    k = classify_finite_subgroup([a])
    assert classify_finite_subgroup([a.conj(b)]) == k
    assert classify_finite_subgroup([W(ssf1, "a^2")]) == classify_finite_subgroup([W(ssf1, "b^3")])
    assert classify_finite_subgroup([W(ssf1, "b^2")]) != classify_finite_subgroup([W(ssf1, "b^3")])


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_format_parse_round_trip(name):
    g = fixtures.load(name)
    rng = random.Random(7)
    for _ in range(100):
        w = PathWord.from_raw(g, to_library(random_loop(g, rng, 10)))
        text = format_word(g, w.syllables)
        assert parse_word(g, text, strict=True) == w


# ---------------------------------------------------------------------------
# properties against the oracles

_NAMES = st.sampled_from(fixtures.NAMES)
_SEEDS = st.integers(0, 2**32 - 1)


def _word(g, seed, length=12):
    items = random_loop(g, random.Random(seed), length)
    return items, PathWord.from_raw(g, to_library(items))


@given(_NAMES, _SEEDS)
def test_normal_form_soundness(name, seed):
    g = fixtures.load(name)
    items, w = _word(g, seed)
    assert w.is_identity == is_trivial(g, items)
    assert (w * w.inverse()).is_identity
    # canonical forms have the same letter count as the Britton-reduced word
    assert w.edge_length == letters(britton(g, items))


@given(_NAMES, _SEEDS)
def test_identity_moves_nothing(name, seed):
    g = fixtures.load(name)
    items, w = _word(g, seed)
    if w.is_identity:
        assert all(act(w, v) == v for v in ball(g, 3))


@given(_NAMES, _SEEDS)
def test_action_law(name, seed):
    g = fixtures.load(name)
    rng = random.Random(seed)
    x = PathWord.from_raw(g, to_library(random_loop(g, rng, 6)))
    y = PathWord.from_raw(g, to_library(random_loop(g, rng, 6)))
    for v in ball(g, 2)[:8]:
        assert act(x, act(y, v)) == act(element_mul(x, y), v)


@given(_NAMES, _SEEDS)
@settings(max_examples=30)
def test_translation_length_matches_ball_oracle(name, seed):
    g = fixtures.load(name)
    items, w = _word(g, seed, 8)
    assert translation_length(w) == OracleTree(g).translation_length(items)


@given(_NAMES, _SEEDS)
def test_stabilizers_are_conjugate_vertex_groups(name, seed):
    g = fixtures.load(name)
    vs = ball(g, 3)
    v = vs[random.Random(seed).randrange(len(vs))]
    stab = stabilizer(v, generators_only=False)
    assert len(set(stab)) == g.group(v.orbit).order
    assert all(fixes(h, v) for h in stab)
    T = v.translator()
    # conjugating back by the translator lands in the lift's vertex group
    local = {T.inverse() * h * T for h in stab}
    assert local == set(stabilizer(lift(g, v.orbit), generators_only=False))


def test_distance_matches_oracle_on_ball():
    for name in ("SSF1", "HNN1", "FREE3"):
        g = fixtures.load(name)
        vs = ball(g, 2)
        for u in vs[:10]:
            for v in vs:
                pu = raw_items(u.translator())
                pv = raw_items(v.translator())
                # the lifts of different orbits are joined inside the spanning tree
                tu = g.tree_path(u.orbit)
                tv = g.tree_path(v.orbit)
                oracle = letters(britton(g, [("y", L.inverse().edge, L.inverse().sign) for L in reversed(tu)]
                                         + inverse(g, pu) + pv
                                         + [("y", L.edge, L.sign) for L in tv]))
                assert distance(u, v) == oracle, (u, v)


def _bipartite(g):
    side = {g.base: 0}
    todo = [g.base]
    while todo:
        v = todo.pop()
        for end in g.ends_at(v):
            w = g.end_vertex(g.departing(end).arrival)
            if w not in side:
                side[w] = 1 - side[v]
                todo.append(w)
            elif side[w] == side[v]:
                return False
    return True


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_same_orbit_distances_are_even(name):
    g = fixtures.load(name)
    if not _bipartite(g):
        # HNN1: t moves its vertex to a neighbour
        assert name == "HNN1"
        return
    vs = ball(g, 3)
    for u in vs[:15]:
        for v in vs:
            if u.orbit == v.orbit:
                assert distance(u, v) % 2 == 0


@given(_NAMES, _SEEDS)
def test_elliptic_displacements_are_even(name, seed):
    g = fixtures.load(name)
    rng = random.Random(seed)
    vs = ball(g, 2)
    h = rng.choice(stabilizer(vs[rng.randrange(len(vs))], generators_only=False))
    for x in vs:
        assert distance(x, act(h, x)) % 2 == 0


@given(_NAMES, _SEEDS)
def test_serre_lemma(name, seed):
    g = fixtures.load(name)
    rng = random.Random(seed)
    ell = []
    while len(ell) < 2:
        v = ball(g, 2)[rng.randrange(len(ball(g, 2)))]
        stab = stabilizer(v, generators_only=False)
        h = stab[rng.randrange(len(stab))]
        if is_elliptic(h):
            ell.append(h)
    f1 = set(fixed_set([ell[0]], 4))
    f2 = set(fixed_set([ell[1]], 4))
    if not (f1 & f2):
        assert translation_length(ell[0] * ell[1]) > 0
