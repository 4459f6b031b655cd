"""Fundamental groups of graphs of finite groups and their Bass–Serre trees.

Elements are loops at the base vertex written as path words

    g0 · y1 · g1 · y2 · ... · yn · gn

with gi in the group of the vertex reached after yi.  The canonical form keeps
every gi (i < n) a left-transversal representative of the image of the end
through which y(i+1) departs, and admits no pinch y·ι(c)·y⁻¹.  Dropping the
trailing gn gives the canonical name of the tree vertex (gn is a coset
ambiguity), so tree vertices compare syntactically and the tree is rooted at
the base vertex's lift: the parent of a vertex is its prefix minus one
(t, y) pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .fingroup import Subgroup, class_of, conjugacy_class_reps
from .gog import EdgeEnd, GraphOfGroups, Letter

DEFAULT_RADIUS = 6
DEFAULT_ORBIT_CAP = 48


class WordError(ValueError):
    pass


class EllipticError(ValueError):
    pass


# ---------------------------------------------------------------------------
# reduction


def _extend(g: GraphOfGroups, out: list, verts: list, items: Iterable) -> None:
    """Push raw syllables onto a canonical stack (``out`` ends with an element)."""
    for it in items:
        v = verts[-1]
        if isinstance(it, Letter):
            dep = it.departure
            if g.end_vertex(dep) != v:
                raise WordError(f"edge letter {it} does not leave vertex {v}")
            t, c = g.split(dep)[out[-1]]
            if len(out) > 1 and out[-2] == it.inverse() and t == g.group(v).identity:
                prev = out[-2]
                out.pop()
                out.pop()
                verts.pop()
                u = verts[-1]
                out[-1] = g.group(u).mul(out[-1], g.inclusion(prev.departure)(c))
            else:
                arr = it.arrival
                out[-1] = t
                out.append(it)
                out.append(g.inclusion(arr)(c))
                verts.append(g.end_vertex(arr))
        else:
            out[-1] = g.group(v).mul(out[-1], it)


def reduce_path(g: GraphOfGroups, items: Iterable, start: str | None = None) -> tuple[tuple, str]:
    """Canonical form of a raw path from ``start``; returns (syllables, end vertex)."""
    start = g.base if start is None else start
    out = [g.group(start).identity]
    verts = [start]
    _extend(g, out, verts, items)
    return tuple(out), verts[-1]


def _vertices_along(g: GraphOfGroups, syl: Sequence, start: str) -> list[str]:
    vs = [start]
    for it in syl[1::2]:
        vs.append(g.end_vertex(it.arrival))
    return vs


def invert_path(g: GraphOfGroups, syl: Sequence, start: str) -> list:
    """Raw inverse of an alternating path word that starts at ``start``."""
    vs = _vertices_along(g, syl, start)
    out: list = []
    n = len(syl) // 2
    for i in range(n, -1, -1):
        out.append(g.group(vs[i]).inv(syl[2 * i]))
        if i > 0:
            out.append(syl[2 * i - 1].inverse())
    return out


# ---------------------------------------------------------------------------
# elements


class PathWord:
    """A canonical element of the fundamental group (a loop at the base vertex)."""

    __slots__ = ("gog", "syllables")

    def __init__(self, gog: GraphOfGroups, syllables: tuple):
        self.gog = gog
        self.syllables = syllables

    @classmethod
    def from_raw(cls, gog: GraphOfGroups, items: Iterable) -> "PathWord":
        syl, end = reduce_path(gog, items)
        if end != gog.base:
            raise WordError(f"word ends at {end}, not at the base vertex {gog.base}")
        return cls(gog, syl)

    @classmethod
    def identity(cls, gog: GraphOfGroups) -> "PathWord":
        return cls(gog, (gog.group(gog.base).identity,))

    @classmethod
    def local(cls, gog: GraphOfGroups, v: str, x: int) -> "PathWord":
        """The loop p_v · x · p_v⁻¹ along the spanning tree."""
        p = gog.tree_path(v)
        items: list = []
        for L in p:
            items.append(L)
        items.append(x)
        for L in reversed(p):
            items.append(L.inverse())
        return cls.from_raw(gog, items)

    @classmethod
    def stable(cls, gog: GraphOfGroups, edge: str) -> "PathWord":
        """The loop p_a · e · p_b⁻¹ (trivial when e lies in the spanning tree)."""
        e = gog.edges[edge]
        items = list(gog.tree_path(e.a)) + [Letter(edge, 1)] + [L.inverse() for L in reversed(gog.tree_path(e.b))]
        return cls.from_raw(gog, items)

    def _check(self, other: "PathWord") -> None:
        if other.gog is not self.gog:
            raise WordError("elements of different graphs of groups")

    def __mul__(self, other: "PathWord") -> "PathWord":
        self._check(other)
        out = list(self.syllables)
        verts = _vertices_along(self.gog, self.syllables, self.gog.base)
        _extend(self.gog, out, verts, other.syllables)
        return PathWord(self.gog, tuple(out))

    def inverse(self) -> "PathWord":
        return PathWord.from_raw(self.gog, invert_path(self.gog, self.syllables, self.gog.base))

    def __pow__(self, k: int) -> "PathWord":
        base = self if k >= 0 else self.inverse()
        r = PathWord.identity(self.gog)
        for _ in range(abs(k)):
            r = r * base
        return r

    def conj(self, by: "PathWord") -> "PathWord":
        """by · self · by⁻¹"""
        return by * self * by.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, PathWord) and other.gog is self.gog and other.syllables == self.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    @property
    def letters(self) -> tuple:
        return self.syllables[1::2]

    @property
    def edge_length(self) -> int:
        return len(self.syllables) // 2

    @property
    def is_identity(self) -> bool:
        return len(self.syllables) == 1 and self.syllables[0] == self.gog.group(self.gog.base).identity

    def __str__(self) -> str:
        return format_word(self.gog, self.syllables)

    def __repr__(self) -> str:
        return f"PathWord({self})"


def normal_form(g: GraphOfGroups, w) -> PathWord:
    """Canonical form of a word given as text or as a raw syllable sequence."""
    if isinstance(w, str):
        return parse_word(g, w)
    return PathWord.from_raw(g, w)


def element_mul(x: PathWord, y: PathWord) -> PathWord:
    return x * y


def element_inv(x: PathWord) -> PathWord:
    return x.inverse()


# ---------------------------------------------------------------------------
# word serialization

_SUPER = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")
_SUP_RUN = re.compile(r"([⁻]?[⁰¹²³⁴⁵⁶⁷⁸⁹]+)$")


def format_word(g: GraphOfGroups, syl: Sequence, start: str | None = None) -> str:
    start = g.base if start is None else start
    vs = _vertices_along(g, syl, start)
    parts = []
    for i, x in enumerate(syl):
        if i % 2:
            parts.append(str(x))
        else:
            grp = g.group(vs[i // 2])
            if x != grp.identity:
                parts.append(f"{grp.name}.{grp.name_of(x)}")
    return "·".join(parts) or "1"


def _split_inverse(tok: str) -> tuple[str, bool]:
    for suffix in ("⁻¹", "^-1"):
        if tok.endswith(suffix):
            return tok[: -len(suffix)], True
    return tok, False


def _desuper(tok: str) -> str:
    m = _SUP_RUN.search(tok)
    if not m:
        return tok
    return tok[: m.start()] + "^" + m.group(1).translate(_SUPER)


def parse_word(g: GraphOfGroups, text: str, strict: bool = False) -> PathWord:
    """Parse a word; canonical output of ``format_word`` always round-trips.

    Tokens are separated by ``·``.  Edge letters are ``e`` or ``e⁻¹``; group
    elements are ``Group.name`` or bare names.  Unless ``strict``, an element
    of another vertex's group is reached along the spanning tree, and the word
    returns to the base the same way.
    """
    text = text.strip()
    items: list = []
    cur = g.base
    if text in ("", "1"):
        return PathWord.identity(g)

    def travel(dst: str):
        nonlocal cur
        items.extend(L.inverse() for L in reversed(g.tree_path(cur)))
        items.extend(g.tree_path(dst))
        cur = dst

    for raw in re.split(r"\s*·\s*", text):
        if not raw:
            raise WordError(f"empty syllable in {text!r}")
        tok, inv = _split_inverse(raw)
        if tok in g.edges and "." not in tok:
            L = Letter(tok, -1 if inv else 1)
            if g.end_vertex(L.departure) != cur:
                raise WordError(f"edge letter {L} is not incident to current vertex {cur}")
            items.append(L)
            cur = g.end_vertex(L.arrival)
            continue
        tok = _desuper(raw)
        qual, dot, name = tok.partition(".")
        if not dot:
            qual, name = "", tok
        target = _resolve_vertex(g, cur, qual, name)
        if target != cur:
            if strict:
                raise WordError(f"{raw!r} is not an element of the group at {cur}")
            travel(target)
        try:
            items.append(g.group(cur).parse_element(name))
        except ValueError as exc:
            raise WordError(str(exc)) from None
    if cur != g.base:
        if strict:
            raise WordError(f"word ends at {cur}, not at the base vertex {g.base}")
        travel(g.base)
    return PathWord.from_raw(g, items)


def _parses(grp, name: str) -> bool:
    try:
        grp.parse_element(name)
        return True
    except ValueError:
        return False


def _resolve_vertex(g: GraphOfGroups, cur: str, qual: str, name: str) -> str:
    if qual:
        if qual in (cur, g.group(cur).name):
            return cur
        if qual in g.vertices:
            return qual
        hits = [v for v in sorted(g.vertices) if g.group(v).name == qual]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise WordError(f"unknown group or vertex qualifier {qual!r}")
        raise WordError(f"qualifier {qual!r} is ambiguous; use a vertex id")
    if _parses(g.group(cur), name):
        return cur
    hits = [v for v in sorted(g.vertices) if _parses(g.group(v), name)]
    if len(hits) == 1:
        return hits[0]
    if not hits:
        raise WordError(f"{name!r} is not an element of any vertex group")
    raise WordError(f"{name!r} is ambiguous between vertices {hits}; qualify it")


# ---------------------------------------------------------------------------
# tree vertices


@dataclass(frozen=True)
class TreeVertex:
    gog: GraphOfGroups
    orbit: str
    prefix: tuple  # (t0, y1, t1, y2, ..., y_n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TreeVertex) and other.gog is self.gog
                and other.orbit == self.orbit and other.prefix == self.prefix)

    def __hash__(self) -> int:
        return hash((self.orbit, self.prefix))

    @property
    def depth(self) -> int:
        return len(self.prefix) // 2

    def sort_key(self):
        return (self.depth, format_word(self.gog, self.prefix + (self.gog.group(self.orbit).identity,)))

    def __str__(self) -> str:
        if not self.prefix:
            return f"[{self.orbit}]"
        return f"{format_word(self.gog, self.prefix + (self.gog.group(self.orbit).identity,))}[{self.orbit}]"

    __repr__ = __str__

    def translator(self) -> PathWord:
        """The element sending the spanning-tree lift of ``orbit`` to this vertex."""
        back = [L.inverse() for L in reversed(self.gog.tree_path(self.orbit))]
        return PathWord.from_raw(self.gog, list(self.prefix) + [self.gog.group(self.orbit).identity] + back)


def base_vertex(g: GraphOfGroups) -> TreeVertex:
    return TreeVertex(g, g.base, ())


def lift(g: GraphOfGroups, v: str) -> TreeVertex:
    syl, end = reduce_path(g, g.tree_path(v))
    return TreeVertex(g, end, syl[:-1])


def _state(v: TreeVertex) -> tuple[list, list]:
    g = v.gog
    out = list(v.prefix) + [g.group(v.orbit).identity]
    verts = _vertices_along(g, out, g.base)
    return out, verts


def _vertex_from(g: GraphOfGroups, out: list, verts: list) -> TreeVertex:
    return TreeVertex(g, verts[-1], tuple(out[:-1]))


def act(x: PathWord, v: TreeVertex) -> TreeVertex:
    if x.gog is not v.gog:
        raise WordError("element and vertex belong to different graphs of groups")
    g = x.gog
    out = list(x.syllables)
    verts = _vertices_along(g, out, g.base)
    _extend(g, out, verts, v.prefix)
    return _vertex_from(g, out, verts)


def local_element(x: PathWord, v: TreeVertex) -> int | None:
    """If x fixes v (= P·G_w), the k in G_w with x·P = P·k; otherwise None."""
    g = x.gog
    out = list(x.syllables)
    verts = _vertices_along(g, out, g.base)
    _extend(g, out, verts, v.prefix)
    if verts[-1] != v.orbit or tuple(out[:-1]) != v.prefix:
        return None
    return out[-1]


def fixes(x: PathWord, v: TreeVertex) -> bool:
    return act(x, v) == v


def neighbors(v: TreeVertex) -> list[tuple[TreeVertex, EdgeEnd]]:
    """Adjacent vertices, each with the end (at v's orbit) of the connecting edge."""
    g = v.gog
    res = []
    for end in g.ends_at(v.orbit):
        L = g.departing(end)
        for t in g.transversal(end):
            out, verts = _state(v)
            _extend(g, out, verts, (t, L))
            res.append((_vertex_from(g, out, verts), end))
    return res


def edge_end_at(u: TreeVertex, w: TreeVertex) -> EdgeEnd:
    """The end at u's orbit of the tree edge [u, w] (u, w adjacent)."""
    if w.depth == u.depth + 1 and w.prefix[: len(u.prefix)] == u.prefix:
        return w.prefix[-1].departure
    if u.depth == w.depth + 1 and u.prefix[: len(w.prefix)] == w.prefix:
        return u.prefix[-1].arrival
    raise WordError(f"{u} and {w} are not adjacent")


def edge_orbit(u: TreeVertex, w: TreeVertex) -> str:
    return edge_end_at(u, w).edge


def stabilizer(v: TreeVertex, generators_only: bool = True) -> list[PathWord]:
    """P·h·P⁻¹ for h in (generators of) G_orbit."""
    g = v.gog
    grp = g.group(v.orbit)
    hs = grp.generators() if generators_only else range(grp.order)
    P = list(v.prefix) + [grp.identity]
    back = invert_path(g, P, g.base)
    return [PathWord.from_raw(g, list(v.prefix) + [h] + back) for h in hs]


def stabilizer_order(v: TreeVertex) -> int:
    return v.gog.group(v.orbit).order


def _common_pairs(p: tuple, q: tuple) -> int:
    k = 0
    n = min(len(p), len(q)) // 2
    while k < n and p[2 * k] == q[2 * k] and p[2 * k + 1] == q[2 * k + 1]:
        k += 1
    return k


def distance(u: TreeVertex, v: TreeVertex) -> int:
    k = _common_pairs(u.prefix, v.prefix)
    return u.depth + v.depth - 2 * k


def ancestor(v: TreeVertex, depth: int) -> TreeVertex:
    g = v.gog
    if depth == 0:
        return TreeVertex(g, g.base, ())
    pre = v.prefix[: 2 * depth]
    return TreeVertex(g, g.end_vertex(pre[-1].arrival), pre)


def path(u: TreeVertex, v: TreeVertex) -> list[TreeVertex]:
    if u.gog is not v.gog:
        raise WordError("vertices of different trees")
    k = _common_pairs(u.prefix, v.prefix)
    up = [ancestor(u, d) for d in range(u.depth, k - 1, -1)]
    down = [ancestor(v, d) for d in range(k + 1, v.depth + 1)]
    return up + down


def ball(g: GraphOfGroups, radius: int, center: TreeVertex | None = None) -> list[TreeVertex]:
    """All tree vertices within ``radius`` of ``center`` (default: base lift), BFS order."""
    center = center or base_vertex(g)
    key = ("ball", center.orbit, center.prefix, radius)
    cache = g.__dict__.setdefault("_ball_cache", {})
    if key in cache:
        return cache[key]
    seen = {center}
    order = [center]
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y, _end in neighbors(x):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    cache[key] = order
    return order


# ---------------------------------------------------------------------------
# ellipticity


def translation_length(x: PathWord) -> int:
    """Minimal displacement of x on the tree; 0 exactly when x is elliptic.

    Cyclic reduction, done geometrically: the minimum of d(P, x·P) is attained
    on the geodesic from the base lift to x·(base lift), whose vertices are the
    prefixes of x's canonical form.
    """
    g = x.gog
    if x.edge_length == 0:
        return 0
    top = act(x, base_vertex(g))
    best = None
    for d in range(top.depth + 1):
        P = ancestor(top, d)
        m = distance(P, act(x, P))
        if best is None or m < best:
            best = m
            if m == 0:
                break
    return best


def is_elliptic(x: PathWord) -> bool:
    return translation_length(x) == 0


def is_elliptic_subgroup(gens: Sequence[PathWord]) -> bool:
    """Serre's criterion: generators and their pairwise products are elliptic."""
    gens = list(gens)
    if not all(is_elliptic(h) for h in gens):
        return False
    return all(is_elliptic(a * b) for a, b in combinations(gens, 2))


def orbit_of(gens: Sequence[PathWord], v: TreeVertex, cap: int = DEFAULT_ORBIT_CAP) -> list[TreeVertex]:
    seen = {v}
    order = [v]
    frontier = [v]
    while frontier:
        nxt = []
        for y in frontier:
            for h in gens:
                z = act(h, y)
                if z not in seen:
                    seen.add(z)
                    order.append(z)
                    nxt.append(z)
                    if len(order) > cap:
                        raise EllipticError(f"orbit exceeds cap {cap}: subgroup is not finite within the cap")
        frontier = nxt
    return order


def fixed_vertex(gens: Sequence[PathWord], g: GraphOfGroups | None = None,
                 cap: int = DEFAULT_ORBIT_CAP) -> TreeVertex:
    """Centre of the orbit of the base lift under the finite subgroup <gens>."""
    gens = list(gens)
    if g is None:
        if not gens:
            raise ValueError("need the graph of groups when no generators are given")
        g = gens[0].gog
    for h in gens:
        if not is_elliptic(h):
            raise EllipticError(f"generator {h} is hyperbolic")
    orbit = orbit_of(gens, base_vertex(g), cap)
    c = center_of(orbit)
    for h in gens:
        if not fixes(h, c):
            raise EllipticError(f"orbit centre {c} is not fixed by {h}")
    return c


def center_of(vs: Sequence[TreeVertex]) -> TreeVertex:
    a = vs[0]
    b = max(vs, key=lambda y: (distance(a, y), y.sort_key()))
    c = max(vs, key=lambda y: (distance(b, y), y.sort_key()))
    d = distance(b, c)
    if d % 2:
        raise EllipticError("orbit has odd diameter; centre is an edge midpoint")
    return path(b, c)[d // 2]


def fixed_set(gens: Sequence[PathWord], radius: int = DEFAULT_RADIUS, g: GraphOfGroups | None = None,
              center: TreeVertex | None = None) -> list[TreeVertex]:
    gens = list(gens)
    if g is None:
        g = gens[0].gog
    for h in gens:
        if not is_elliptic(h):
            raise EllipticError(f"generator {h} is hyperbolic")
    return [v for v in ball(g, radius, center) if all(fixes(h, v) for h in gens)]


def fixed_subtree(gens: Sequence[PathWord], start: TreeVertex, radius: int) -> list[TreeVertex]:
    """Fix(<gens>) explored from a fixed vertex out to ``radius`` (BFS inside the fixed set)."""
    seen = {start}
    order = [start]
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y, _end in neighbors(x):
                if y not in seen and all(fixes(h, y) for h in gens):
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return order


def nearest_fixed_vertex(gens: Sequence[PathWord], g: GraphOfGroups, to: TreeVertex | None = None,
                         cap: int = DEFAULT_ORBIT_CAP) -> TreeVertex:
    """Projection of ``to`` (default: base lift) onto Fix(<gens>)."""
    to = to or base_vertex(g)
    x = fixed_vertex(gens, g, cap) if gens else to
    best = x
    for y in path(x, to)[1:]:
        if all(fixes(h, y) for h in gens):
            best = y
        else:
            break
    return best


# ---------------------------------------------------------------------------
# finite subgroups


@dataclass
class SubgroupClass:
    index: int
    representative: list[PathWord]
    witness_vertex: TreeVertex
    local_form: Subgroup

    @property
    def order(self) -> int:
        return self.local_form.order


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _class_table(g: GraphOfGroups):
    cached = g.__dict__.get("_fsc")
    if cached is not None:
        return cached
    uf = _UnionFind()
    verts = sorted(g.vertices)
    for v in verts:
        for k in range(len(conjugacy_class_reps(g.group(v)))):
            uf.find((v, k))
    for name in sorted(g.edges):
        e = g.edges[name]
        for K in conjugacy_class_reps(e.group):
            ka = Subgroup(g.group(e.a), frozenset(e.alpha(x) for x in K.members))
            kb = Subgroup(g.group(e.b), frozenset(e.omega(x) for x in K.members))
            uf.union((e.a, class_of(g.group(e.a), ka)), (e.b, class_of(g.group(e.b), kb)))
    roots = sorted({uf.find((v, k)) for v in verts for k in range(len(conjugacy_class_reps(g.group(v))))},
                   key=lambda r: (conjugacy_class_reps(g.group(r[0]))[r[1]].order, r))
    label = {r: i for i, r in enumerate(roots)}
    classes = []
    for i, (v, k) in enumerate(roots):
        grp = g.group(v)
        sub = conjugacy_class_reps(grp)[k]
        gens = _small_gens(grp, sub)
        rep = [PathWord.local(g, v, x) for x in gens]
        classes.append(SubgroupClass(i, rep, lift(g, v), sub))
    table = (uf, label, classes)
    g.__dict__["_fsc"] = table
    return table


def _small_gens(grp, sub: Subgroup) -> list[int]:
    gens: list[int] = []
    span = frozenset([grp.identity])
    for x in sorted(sub.members, key=lambda i: (-grp.element_order(i), i)):
        if x not in span:
            gens.append(x)
            span = grp.closure(gens)
            if span == sub.members:
                break
    return gens


def finite_subgroup_classes(g: GraphOfGroups) -> list[SubgroupClass]:
    """Conjugacy classes of finite subgroups of the fundamental group."""
    return _class_table(g)[2]


def local_form(gens: Sequence[PathWord], v: TreeVertex) -> Subgroup:
    grp = v.gog.group(v.orbit)
    ks = []
    for h in gens:
        k = local_element(h, v)
        if k is None:
            raise EllipticError(f"{h} does not fix {v}")
        ks.append(k)
    return Subgroup(grp, grp.closure(ks))


def classify_finite_subgroup(gens: Sequence[PathWord], g: GraphOfGroups | None = None) -> int:
    """Index into ``finite_subgroup_classes`` of the class of <gens>."""
    gens = list(gens)
    if g is None:
        g = gens[0].gog
    uf, label, _ = _class_table(g)
    x = fixed_vertex(gens, g) if gens else base_vertex(g)
    sub = local_form(gens, x)
    return label[uf.find((x.orbit, class_of(g.group(x.orbit), sub)))]


def all_elements(gens: Sequence[PathWord], g: GraphOfGroups | None = None, cap: int = DEFAULT_ORBIT_CAP) -> list[PathWord]:
    """Enumerate the finite subgroup <gens> (error past ``cap`` elements)."""
    gens = list(gens)
    g = g or gens[0].gog
    e = PathWord.identity(g)
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = x * h
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > cap:
                        raise EllipticError(f"subgroup exceeds order cap {cap}")
        frontier = nxt
    return order
