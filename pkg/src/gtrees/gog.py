"""Graphs of finite groups and the structural predicates on their Bass–Serre trees.

The tree predicates (reduced, minimal, strongly slide-free) are evaluated on
quotient data.  Tree edges at a lift of a vertex v are pairs
(incident end, left coset of the end's image in G_v), so two tree edges at the
same lift lie in one G_v-orbit exactly when they come from the same end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .fingroup import FiniteGroup, GroupError, Mono, Subgroup, left_transversal


class GraphError(ValueError):
    pass


class EdgeEnd(NamedTuple):
    edge: str
    side: str  # "a" or "b"

    def __str__(self) -> str:
        return f"{self.edge}.{self.side}"


@dataclass(frozen=True, eq=False)
class Edge:
    name: str
    group: FiniteGroup
    a: str
    b: str
    alpha: Mono  # G_e -> G_a
    omega: Mono  # G_e -> G_b

    @property
    def is_loop(self) -> bool:
        return self.a == self.b

    def vertex(self, side: str) -> str:
        return self.a if side == "a" else self.b

    def inclusion(self, side: str) -> Mono:
        return self.alpha if side == "a" else self.omega


class Letter(NamedTuple):
    """An oriented edge traversal; sign +1 goes from end a to end b."""

    edge: str
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.edge, -self.sign)

    @property
    def departure(self) -> EdgeEnd:
        return EdgeEnd(self.edge, "a" if self.sign > 0 else "b")

    @property
    def arrival(self) -> EdgeEnd:
        return EdgeEnd(self.edge, "b" if self.sign > 0 else "a")

    def __str__(self) -> str:
        return self.edge if self.sign > 0 else f"{self.edge}⁻¹"


class GraphOfGroups:
    """A finite connected graph of finite groups with a base vertex and spanning tree."""

    def __init__(self, vertices: dict[str, FiniteGroup], edges: Iterable[Edge],
                 base: str | None = None, spanning_tree: Iterable[str] | None = None,
                 name: str = ""):
        self.name = name
        self.vertices = dict(vertices)
        self.edges = {e.name: e for e in edges}
        if not self.vertices:
            raise GraphError("graph of groups needs at least one vertex")
        for e in self.edges.values():
            for side in "ab":
                v = e.vertex(side)
                if v not in self.vertices:
                    raise GraphError(f"edge {e.name!r} references unknown vertex {v!r}")
                inc = e.inclusion(side)
                if inc.domain is not e.group or inc.codomain is not self.vertices[v]:
                    raise GraphError(f"edge {e.name!r}: inclusion at end {side} has wrong domain/codomain")
        self.base = base if base is not None else min(self.vertices)
        if self.base not in self.vertices:
            raise GraphError(f"unknown base vertex {self.base!r}")
        if spanning_tree is None:
            spanning_tree = default_spanning_tree(self.vertices, self.edges, self.base)
        self.tree = frozenset(spanning_tree)
        self._check_tree()
        self._split: dict[EdgeEnd, list[tuple[int, int]]] = {}
        self._transversal: dict[EdgeEnd, list[int]] = {}
        self._ends_at: dict[str, list[EdgeEnd]] = {v: [] for v in self.vertices}
        for name in sorted(self.edges):
            for side in "ab":
                self._ends_at[self.edges[name].vertex(side)].append(EdgeEnd(name, side))
        self._tree_paths: dict[str, tuple] | None = None

    def _check_tree(self) -> None:
        for name in self.tree:
            e = self.edges.get(name)
            if e is None:
                raise GraphError(f"spanning tree names unknown edge {name!r}")
            if e.is_loop:
                raise GraphError(f"spanning tree contains loop {name!r}")
        if len(self.tree) != len(self.vertices) - 1:
            raise GraphError("spanning tree has the wrong number of edges")
        reached = _reach(self.vertices, [self.edges[n] for n in self.tree], self.base)
        if reached != set(self.vertices):
            raise GraphError("spanning tree does not span the graph")

    def __repr__(self) -> str:
        return f"GraphOfGroups({self.name!r}, {len(self.vertices)} vertices, {len(self.edges)} edges)"

    # -- local structure --------------------------------------------------
    def group(self, v: str) -> FiniteGroup:
        return self.vertices[v]

    def ends_at(self, v: str) -> list[EdgeEnd]:
        return self._ends_at[v]

    def end_vertex(self, end: EdgeEnd) -> str:
        return self.edges[end.edge].vertex(end.side)

    def inclusion(self, end: EdgeEnd) -> Mono:
        return self.edges[end.edge].inclusion(end.side)

    def image(self, end: EdgeEnd) -> Subgroup:
        return self.inclusion(end).image()

    def other_end(self, end: EdgeEnd) -> EdgeEnd:
        return EdgeEnd(end.edge, "b" if end.side == "a" else "a")

    def index(self, end: EdgeEnd) -> int:
        return self.group(self.end_vertex(end)).order // self.edges[end.edge].group.order

    def degree(self, v: str) -> int:
        return sum(self.index(end) for end in self.ends_at(v))

    def departing(self, end: EdgeEnd) -> Letter:
        """The letter that leaves the end's vertex through this end."""
        return Letter(end.edge, 1 if end.side == "a" else -1)

    def transversal(self, end: EdgeEnd) -> list[int]:
        t = self._transversal.get(end)
        if t is None:
            g = self.group(self.end_vertex(end))
            t = left_transversal(g, self.image(end))
            self._transversal[end] = t
        return t

    def split(self, end: EdgeEnd) -> list[tuple[int, int]]:
        """``split(end)[x] = (t, c)`` with x = t·ι(c), t the transversal representative."""
        s = self._split.get(end)
        if s is None:
            g = self.group(self.end_vertex(end))
            inc = self.inclusion(end)
            s = [None] * g.order  # type: ignore[list-item]
            for t in self.transversal(end):
                for c, m in enumerate(inc.images):
                    s[g.mul(t, m)] = (t, c)
            self._split[end] = s
        return s

    # -- spanning tree paths ------------------------------------------------
    def tree_path(self, v: str) -> tuple:
        """Letters along the spanning tree from the base vertex to v."""
        if self._tree_paths is None:
            paths: dict[str, tuple] = {self.base: ()}
            queue = deque([self.base])
            while queue:
                u = queue.popleft()
                for end in self.ends_at(u):
                    if end.edge not in self.tree:
                        continue
                    w = self.end_vertex(self.other_end(end))
                    if w not in paths:
                        paths[w] = paths[u] + (self.departing(end),)
                        queue.append(w)
            self._tree_paths = paths
        return self._tree_paths[v]

    def non_tree_edges(self) -> list[str]:
        return sorted(n for n in self.edges if n not in self.tree)

    def with_base(self, base: str, spanning_tree=None) -> "GraphOfGroups":
        return GraphOfGroups(self.vertices, self.edges.values(), base, spanning_tree, self.name)

    def group_orders(self) -> list[int]:
        return sorted(g.order for g in self.vertices.values())


def _reach(vertices, edges, start) -> set[str]:
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for e in edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def default_spanning_tree(vertices, edges: dict[str, Edge], base: str) -> frozenset[str]:
    """Breadth-first from base, scanning edges in name order."""
    if _reach(vertices, edges.values(), base) != set(vertices):
        raise GraphError("underlying graph is disconnected")
    chosen = set()
    seen = {base}
    queue = deque([base])
    ordered = sorted(edges)
    while queue:
        u = queue.popleft()
        for name in ordered:
            e = edges[name]
            if e.is_loop:
                continue
            if e.a == u and e.b not in seen:
                w = e.b
            elif e.b == u and e.a not in seen:
                w = e.a
            else:
                continue
            chosen.add(name)
            seen.add(w)
            queue.append(w)
    return frozenset(chosen)


def make_edge(name: str, group: FiniteGroup, a: str, alpha: Mono, b: str, omega: Mono) -> Edge:
    if alpha.domain is not group or omega.domain is not group:
        raise GroupError(f"edge {name!r}: inclusions must have the edge group as domain")
    return Edge(name, group, a, b, alpha, omega)


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class SlideWitness:
    vertex: str
    end1: EdgeEnd
    end2: EdgeEnd
    conjugator: int  # x with x·image(end1)·x^-1 ⊆ image(end2)

    def describe(self, g: GraphOfGroups) -> str:
        x = g.group(self.vertex).name_of(self.conjugator)
        return f"vertex {self.vertex}: {x}·G[{self.end1}]·{x}⁻¹ ⊆ G[{self.end2}]"


def is_reduced(g: GraphOfGroups) -> tuple[bool, str | None]:
    """False with a witness edge if some non-loop edge has a surjective end inclusion."""
    for name in sorted(g.edges):
        e = g.edges[name]
        if e.is_loop:
            continue
        if e.group.order in (g.group(e.a).order, g.group(e.b).order):
            return False, name
    return True, None


def is_minimal(g: GraphOfGroups) -> tuple[bool, str | None]:
    """Every vertex lift has degree >= 2; a lone vertex without edges counts as minimal."""
    if len(g.vertices) == 1 and not g.edges:
        return True, None
    for v in sorted(g.vertices):
        if g.degree(v) < 2:
            return False, v
    return True, None


def is_strongly_slide_free(g: GraphOfGroups) -> tuple[bool, SlideWitness | None]:
    for v in sorted(g.vertices):
        grp = g.group(v)
        ends = g.ends_at(v)
        for e1 in ends:
            im1 = g.image(e1).members
            for e2 in ends:
                if e1 == e2:
                    continue
                im2 = g.image(e2).members
                if len(im1) > len(im2):
                    continue
                for x in range(grp.order):
                    if all(grp.conj(x, m) in im2 for m in im1):
                        return False, SlideWitness(v, e1, e2, x)
    return True, None


def local_index_sums(g: GraphOfGroups) -> dict[str, int]:
    return {v: g.degree(v) for v in g.vertices}
