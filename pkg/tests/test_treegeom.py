import itertools
import random
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from gtrees.treegeom import (
    FiniteTree,
    TreeError,
    check_backtracking,
    ft_bridge,
    ft_center,
    ft_distance,
    ft_hull,
    ft_path,
    ft_projection,
    random_tree,
    sample_sequence,
)

PATH4 = FiniteTree([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
STAR = FiniteTree(["c", "l1", "l2", "l3"], [("c", "l1"), ("c", "l2"), ("c", "l3")])


def bfs_dist(t, src):
    adj = {v: [] for v in t.vertices}
    for u, v in t.edges:
        adj[u].append(v)
        adj[v].append(u)
    d = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in d:
                d[y] = d[x] + 1
                q.append(y)
    return d


def test_invalid_trees_rejected():
    with pytest.raises(TreeError):
        FiniteTree([1, 2, 3], [(1, 2)])
    with pytest.raises(TreeError):
        FiniteTree([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(TreeError):
        ft_path(PATH4, 1, 9)


def test_path_and_hull_examples():
    assert ft_path(PATH4, 1, 3) == [1, 2, 3]
    assert ft_path(PATH4, 3, 3) == [3]
    assert ft_hull(STAR, {"l1", "l2"}) == {"l1", "c", "l2"}
    assert ft_hull(STAR, {"l3"}) == {"l3"}


def test_bridge_examples():
    assert ft_bridge(PATH4, {1}, {3}) == [1, 2, 3]
    assert ft_bridge(PATH4, {1}, {2}) == [1, 2]
    with pytest.raises(TreeError, match="intersect"):
        ft_bridge(PATH4, {1, 2}, {2, 3})
    with pytest.raises(TreeError, match="subtree"):
        ft_bridge(PATH4, {1, 3}, {4})


def test_projection_examples():
    assert ft_projection(PATH4, 2, {1, 2}) == 2
    assert ft_projection(PATH4, 4, {1, 2}) == 2
    assert ft_projection(STAR, "l2", {"l1"}) == "l1"
    with pytest.raises(TreeError):
        ft_projection(PATH4, 2, {1, 4})


def test_center_examples():
    assert ft_center(PATH4, {2}).vertex == 2
    assert ft_center(PATH4, {1, 3}).vertex == 2
    c = ft_center(PATH4, {1, 2})
    assert not c.is_vertex and set(c.edge) == {1, 2}


def test_backtracking_examples():
    rep = check_backtracking(PATH4, [1, 2, 4])
    assert rep.hypotheses_hold and rep.lemma_holds
    rep = check_backtracking(PATH4, [2, 1, 4])
    assert not rep.hyp_strict
    assert any(f.startswith("(2)") for f in rep.failures)
    rep = check_backtracking(PATH4, [1, 3])
    assert rep.hyp_distinct and rep.hyp_strict and rep.conclusion_checked
    assert rep.conclusion_violations == []
    assert not check_backtracking(PATH4, [1, 1]).hyp_distinct
    with pytest.raises(TreeError):
        check_backtracking(PATH4, [1])


def test_triple_hypothesis_reported():
    rep = check_backtracking(STAR, ["l1", "l2", "l3", "l1"])
    assert not rep.hyp_triple


def test_edge_list_round_trip():
    t = random_tree(25, random.Random(3))
    s = t.to_edge_list()
    u = FiniteTree.from_edge_list(s)
    assert sorted(map(sorted, u.edges)) == sorted(sorted((str(a), str(b))) for a, b in t.edges)
    assert FiniteTree.from_edge_list("# one vertex\nx\n").vertices == ["x"]


@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_distance_matches_bfs(n, s):
    t = random_tree(n, random.Random(s))
    for u in t.vertices[:5]:
        d = bfs_dist(t, u)
        for v in t.vertices:
            assert ft_distance(t, u, v) == d[v]
            assert len(ft_path(t, u, v)) == d[v] + 1


def _random_subtree(t, rng):
    k = rng.randint(1, min(4, len(t)))
    return ft_hull(t, rng.sample(list(t.vertices), k))


@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_projection_is_unique_minimiser(n, s):
    rng = random.Random(s)
    t = random_tree(n, rng)
    a = _random_subtree(t, rng)
    for x in t.vertices:
        d = bfs_dist(t, x)
        best = min(d[y] for y in a)
        argmins = [y for y in a if d[y] == best]
        assert argmins == [ft_projection(t, x, a)]
        if x not in a:
            p = ft_projection(t, x, a)
            assert ft_path(t, p, x) == ft_bridge(t, a, {x})


def _contains_subpath(arc, sub):
    k = len(sub)
    return any(arc[i:i + k] == sub for i in range(len(arc) - k + 1))


@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_bridge_lies_on_every_joining_arc(n, s):
    rng = random.Random(s)
    t = random_tree(n, rng)
    a = _random_subtree(t, rng)
    rest = [v for v in t.vertices if v not in a]
    if not rest:
        return
    b = ft_hull(t, [rng.choice(rest)])
    # grow b while it stays disjoint from a
    for v in rng.sample(rest, min(3, len(rest))):
        bigger = ft_hull(t, b | {v})
        if not bigger & a:
            b = bigger
    br = ft_bridge(t, a, b)
    assert br[0] in a and br[-1] in b
    for x, y in itertools.product(a, b):
        assert _contains_subpath(ft_path(t, x, y), br)


@given(st.integers(1, 30), st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_center_is_midpoint_of_hull_diameter(n, s):
    rng = random.Random(s)
    t = random_tree(n, rng)
    pts = rng.sample(list(t.vertices), rng.randint(1, min(5, n)))
    diam = max(ft_distance(t, x, y) for x in pts for y in pts)
    c = ft_center(t, pts)
    if diam % 2 == 0:
        assert max(ft_distance(t, c.vertex, x) for x in pts) == diam // 2
    else:
        u, w = c.edge
        assert ft_distance(t, u, w) == 1
        assert max(min(ft_distance(t, u, x), ft_distance(t, w, x)) for x in pts) == diam // 2


def _arc_set(t, u, v):
    return set(ft_path(t, u, v))


@given(st.integers(2, 60), st.integers(0, 2**32 - 1), st.integers(1, 10))
@settings(max_examples=80)
def test_backtracking_on_sampled_sequences(n, s, k):
    rng = random.Random(s)
    t = random_tree(n, rng)
    seq, rate = sample_sequence(t, rng, k)
    assert 0.0 <= rate <= 1.0
    if len(seq) < 2:
        return
    rep = check_backtracking(t, seq)
    assert rep.hypotheses_hold
    assert rep.conclusion_violations == []
    assert rep.induction_violations == []
    # independent set-based recheck of the conclusion
    arcs = [_arc_set(t, seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
    for i, j in itertools.combinations(range(len(arcs)), 2):
        if j - i >= 2:
            assert not arcs[i] & arcs[j]


@given(st.integers(2, 20), st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_hypothesis_flags_match_set_oracle(n, s):
    rng = random.Random(s)
    t = random_tree(n, rng)
    seq = [rng.choice(t.vertices) for _ in range(rng.randint(2, 6))]
    rep = check_backtracking(t, seq)
    arcs = [_arc_set(t, seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
    assert rep.hyp_distinct == all(seq[i] != seq[i + 1] for i in range(len(seq) - 1))
    strict = all(not (arcs[i] <= arcs[i + 1] or arcs[i + 1] <= arcs[i]) for i in range(len(arcs) - 1))
    assert rep.hyp_strict == strict
    triple = all(not (arcs[i] & arcs[i + 1] & arcs[i + 2]) for i in range(len(arcs) - 2))
    assert rep.hyp_triple == triple
