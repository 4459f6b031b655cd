"""Finite simplicial trees: paths, hulls, bridges, projections, centres, and a
checker for the backtracking property of vertex sequences.

Arcs are closed vertex sets, stored as integer bitmasks over vertex indices;
set intersection of simplicial arcs is then exact and cheap.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class TreeError(ValueError):
    pass


class FiniteTree:
    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise TreeError("duplicate vertex ids")
        self.edges = [tuple(e) for e in edges]
        n = len(self.vertices)
        if n == 0:
            raise TreeError("empty tree")
        if len(self.edges) != n - 1:
            raise TreeError(f"a tree on {n} vertices needs {n - 1} edges, got {len(self.edges)}")
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            if u not in self.index or v not in self.index:
                raise TreeError(f"edge ({u}, {v}) has an unknown endpoint")
            i, j = self.index[u], self.index[v]
            if i == j:
                raise TreeError(f"self-loop at {u}")
            self.adj[i].append(j)
            self.adj[j].append(i)
        self.parent = [-1] * n
        self.depth = [0] * n
        seen = [False] * n
        seen[0] = True
        q = deque([0])
        while q:
            i = q.popleft()
            for j in self.adj[i]:
                if not seen[j]:
                    seen[j] = True
                    self.parent[j] = i
                    self.depth[j] = self.depth[i] + 1
                    q.append(j)
        if not all(seen):
            raise TreeError("graph is disconnected (hence not a tree)")
        self._paths: dict[tuple[int, int], int] = {}

    @classmethod
    def from_edge_list(cls, text: str) -> "FiniteTree":
        """One ``u v`` pair per line; ``#`` starts a comment."""
        edges = []
        verts: dict[str, None] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                verts.setdefault(parts[0])
                continue
            if len(parts) != 2:
                raise TreeError(f"line {lineno}: expected 'u v', got {line!r}")
            u, v = parts
            verts.setdefault(u)
            verts.setdefault(v)
            edges.append((u, v))
        return cls(list(verts), edges)

    def to_edge_list(self) -> str:
        if not self.edges:
            return f"{self.vertices[0]}\n"
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def _i(self, v) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise TreeError(f"unknown vertex {v!r}") from None

    # -- index-level primitives ----------------------------------------------
    def _path_idx(self, i: int, j: int) -> list[int]:
        up, down = [], []
        while self.depth[i] > self.depth[j]:
            up.append(i)
            i = self.parent[i]
        while self.depth[j] > self.depth[i]:
            down.append(j)
            j = self.parent[j]
        while i != j:
            up.append(i)
            down.append(j)
            i, j = self.parent[i], self.parent[j]
        return up + [i] + down[::-1]

    def arc(self, i: int, j: int) -> int:
        """Bitmask of the arc between vertex indices i and j."""
        key = (i, j) if i <= j else (j, i)
        m = self._paths.get(key)
        if m is None:
            m = 0
            for k in self._path_idx(i, j):
                m |= 1 << k
            self._paths[key] = m
        return m

    def dist_idx(self, i: int, j: int) -> int:
        return self.arc(i, j).bit_count() - 1

    def mask(self, vs: Iterable) -> int:
        m = 0
        for v in vs:
            m |= 1 << self._i(v)
        return m

    def unmask(self, m: int) -> set:
        return {self.vertices[k] for k in range(len(self.vertices)) if m >> k & 1}

    def hull_mask(self, idx: Sequence[int]) -> int:
        if not idx:
            return 0
        m = 0
        for j in idx:
            m |= self.arc(idx[0], j)
        return m

    def is_subtree_mask(self, m: int) -> bool:
        if m == 0:
            return False
        start = (m & -m).bit_length() - 1
        seen = 1 << start
        stack = [start]
        while stack:
            i = stack.pop()
            for j in self.adj[i]:
                if m >> j & 1 and not seen >> j & 1:
                    seen |= 1 << j
                    stack.append(j)
        return seen == m


# ---------------------------------------------------------------------------
# public operations


def ft_path(t: FiniteTree, u, v) -> list:
    return [t.vertices[k] for k in t._path_idx(t._i(u), t._i(v))]


def ft_distance(t: FiniteTree, u, v) -> int:
    return t.dist_idx(t._i(u), t._i(v))


def ft_hull(t: FiniteTree, s: Iterable) -> set:
    idx = [t._i(v) for v in s]
    return t.unmask(t.hull_mask(idx))


def _subtree(t: FiniteTree, a: Iterable, what: str) -> int:
    m = t.mask(a)
    if not t.is_subtree_mask(m):
        raise TreeError(f"{what} does not span a subtree")
    return m


def ft_bridge(t: FiniteTree, a: Iterable, b: Iterable) -> list:
    """The shortest arc from subtree a to subtree b (endpoints included)."""
    ma, mb = _subtree(t, a, "a"), _subtree(t, b, "b")
    if ma & mb:
        raise TreeError("subtrees intersect; no bridge")
    a0 = (ma & -ma).bit_length() - 1
    b0 = (mb & -mb).bit_length() - 1
    p = t._path_idx(a0, b0)
    x = max(k for k, i in enumerate(p) if ma >> i & 1)
    y = min(k for k, i in enumerate(p) if mb >> i & 1)
    return [t.vertices[i] for i in p[x:y + 1]]


def ft_projection(t: FiniteTree, x, a: Iterable):
    ma = _subtree(t, a, "a")
    xi = t._i(x)
    if ma >> xi & 1:
        return x
    a0 = (ma & -ma).bit_length() - 1
    for i in t._path_idx(xi, a0):
        if ma >> i & 1:
            return t.vertices[i]
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Center:
    vertex: Hashable | None = None
    edge: tuple | None = None

    @property
    def is_vertex(self) -> bool:
        return self.edge is None


def ft_center(t: FiniteTree, s: Iterable) -> Center:
    idx = [t._i(v) for v in s]
    if not idx:
        raise TreeError("centre of an empty set")
    b = max(idx, key=lambda j: (t.dist_idx(idx[0], j), j))
    c = max(idx, key=lambda j: (t.dist_idx(b, j), j))
    p = t._path_idx(b, c)
    d = len(p) - 1
    if d % 2 == 0:
        return Center(vertex=t.vertices[p[d // 2]])
    u, w = t.vertices[p[d // 2]], t.vertices[p[d // 2 + 1]]
    return Center(edge=(u, w))


# ---------------------------------------------------------------------------
# backtracking


@dataclass
class BacktrackReport:
    n_arcs: int
    hyp_distinct: bool
    hyp_strict: bool
    hyp_triple: bool
    failures: list[str] = field(default_factory=list)
    conclusion_checked: bool = False
    conclusion_violations: list[tuple[int, int]] = field(default_factory=list)
    induction_violations: list[int] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.hyp_distinct and self.hyp_strict and self.hyp_triple

    @property
    def lemma_holds(self) -> bool:
        """False only on a counterexample: hypotheses hold and the conclusion fails."""
        return not (self.hypotheses_hold and self.conclusion_violations)


def _arcs(t: FiniteTree, idx: Sequence[int]) -> list[int]:
    # arcs[k] = [u_k, u_{k+1}]
    return [t.arc(idx[k], idx[k + 1]) for k in range(len(idx) - 1)]


def check_backtracking(t: FiniteTree, seq: Sequence) -> BacktrackReport:
    if len(seq) < 2:
        raise TreeError("need at least two vertices")
    idx = [t._i(v) for v in seq]
    n = len(idx) - 1
    arcs = _arcs(t, idx)
    rep = BacktrackReport(n, True, True, True)
    for i in range(n):
        if idx[i] == idx[i + 1]:
            rep.hyp_distinct = False
            rep.failures.append(f"(1) u_{i} = u_{i + 1}")
    for i in range(1, n):
        a, b = arcs[i - 1], arcs[i]
        inter = a & b
        if inter == a or inter == b:
            rep.hyp_strict = False
            rep.failures.append(f"(2) arcs [u_{i - 1},u_{i}] and [u_{i},u_{i + 1}] nested")
    for i in range(1, n - 1):
        if arcs[i - 1] & arcs[i] & arcs[i + 1]:
            rep.hyp_triple = False
            rep.failures.append(f"(3) arcs {i - 1},{i},{i + 1} share a point")
    if not rep.hypotheses_hold:
        return rep
    rep.conclusion_checked = True
    for i in range(n):
        for j in range(i + 2, n):
            if arcs[i] & arcs[j]:
                # report with 1-based arc indices: arc k = [u_{k-1}, u_k]
                rep.conclusion_violations.append((i + 1, j + 1))
    hull = 1 << idx[0]
    hulls = [hull]
    for k in range(1, n + 1):
        hull |= t.arc(idx[0], idx[k])
        hulls.append(hull)
    # (P_i): u_{i+1} not in C_i, and [u_i, u_{i+1}] misses C_{i-1}
    for i in range(1, n):
        if hulls[i] >> idx[i + 1] & 1 or arcs[i] & hulls[i - 1]:
            rep.induction_violations.append(i)
    return rep


def random_tree(n: int, rng: random.Random) -> FiniteTree:
    """Random labelled tree on 0..n-1 (uniform, via a Prüfer sequence)."""
    if n == 1:
        return FiniteTree([0], [])
    if n == 2:
        return FiniteTree([0, 1], [(0, 1)])
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    edges = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return FiniteTree(range(n), edges)


def sample_sequence(t: FiniteTree, rng: random.Random, max_arcs: int) -> tuple[list, float]:
    """Grow a sequence greedily inside the hypothesis region.

    Each step picks u_{i+1} uniformly among vertices that keep hypotheses
    (1)-(3).  Returns the sequence and the mean fraction of admissible
    candidates per step.
    """
    n = len(t)
    if n < 2:
        return [t.vertices[0]], 0.0
    u0 = rng.randrange(n)
    u1 = rng.choice([j for j in range(n) if j != u0])
    idx = [u0, u1]
    rates = []
    while len(idx) - 1 < max_arcs:
        prev = t.arc(idx[-2], idx[-1])
        prev2 = t.arc(idx[-3], idx[-2]) if len(idx) >= 3 else None
        cands = []
        for c in range(n):
            if c == idx[-1]:
                continue
            a = t.arc(idx[-1], c)
            inter = prev & a
            if inter == prev or inter == a:
                continue
            if prev2 is not None and prev2 & inter:
                continue
            cands.append(c)
        rates.append(len(cands) / (n - 1))
        if not cands:
            break
        idx.append(rng.choice(cands))
    return [t.vertices[i] for i in idx], (sum(rates) / len(rates) if rates else 0.0)
