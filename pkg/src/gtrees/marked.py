"""Marked graphs of groups: a graph of groups whose fundamental group is
identified, through verified generator tables, with that of a fixed reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bass_serre import (
    EllipticError,
    PathWord,
    TreeVertex,
    _extend,
    _vertices_along,
    act,
    classify_finite_subgroup,
    edge_end_at,
    finite_subgroup_classes,
    fixed_vertex,
    fixes,
    lift,
    neighbors,
    stabilizer_order,
)
from .gog import GraphOfGroups, Letter


class MarkingError(ValueError):
    pass


def generator_words(g: GraphOfGroups) -> list[tuple[tuple, PathWord]]:
    """Generators of the fundamental group: vertex-group generators along the
    spanning tree, then one stable letter per non-tree edge."""
    gens = []
    for v in sorted(g.vertices):
        for x in g.group(v).generators():
            gens.append((("v", v, x), PathWord.local(g, v, x)))
    for e in g.non_tree_edges():
        gens.append((("e", e), PathWord.stable(g, e)))
    return gens


class Marking:
    """A homomorphism between fundamental groups, stored as images of every
    vertex-group element and of every non-tree edge letter."""

    def __init__(self, source: GraphOfGroups, target: GraphOfGroups,
                 local: dict[str, list[PathWord]], stable: dict[str, PathWord]):
        self.source = source
        self.target = target
        self.local = local
        self.stable = stable
        self.stable_inv = {e: w.inverse() for e, w in stable.items()}

    @classmethod
    def identity(cls, g: GraphOfGroups) -> "Marking":
        local = {v: [PathWord.local(g, v, x) for x in range(g.group(v).order)] for v in g.vertices}
        stable = {e: PathWord.stable(g, e) for e in g.non_tree_edges()}
        return cls(g, g, local, stable)

    @classmethod
    def from_generators(cls, source: GraphOfGroups, target: GraphOfGroups,
                        images: dict[tuple, PathWord]) -> "Marking":
        """Extend generator images (keys as in ``generator_words``) to full tables.

        Raises MarkingError if the images do not respect a vertex group's
        multiplication.
        """
        local = {}
        for v in sorted(source.vertices):
            grp = source.group(v)
            gens = grp.generators()
            table: list = [None] * grp.order
            table[grp.identity] = PathWord.identity(target)
            frontier = [grp.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = grp.mul(x, s)
                        im = table[x] * images[("v", v, s)]
                        if table[y] is None:
                            table[y] = im
                            nxt.append(y)
                        elif table[y] != im:
                            raise MarkingError(f"images at vertex {v} do not respect the group law")
                frontier = nxt
            local[v] = table
        stable = {e: images[("e", e)] for e in source.non_tree_edges()}
        return cls(source, target, local, stable)

    def apply(self, w: PathWord) -> PathWord:
        if w.gog is not self.source:
            raise MarkingError("word does not belong to the marking's source")
        g = self.source
        tgt = self.target
        out = [tgt.group(tgt.base).identity]
        verts = [tgt.base]
        vs = _vertices_along(g, w.syllables, g.base)
        for i, s in enumerate(w.syllables):
            if i % 2 == 0:
                if s != g.group(vs[i // 2]).identity:
                    _extend(tgt, out, verts, self.local[vs[i // 2]][s].syllables)
            elif s.edge not in g.tree:
                img = self.stable[s.edge] if s.sign > 0 else self.stable_inv[s.edge]
                _extend(tgt, out, verts, img.syllables)
        return PathWord(tgt, tuple(out))

    def __call__(self, w: PathWord) -> PathWord:
        return self.apply(w)

    def relator_failures(self) -> list[str]:
        """Defining relations of the source whose images are non-trivial."""
        g = self.source
        bad = []
        for v in sorted(g.vertices):
            grp = g.group(v)
            tab = self.local[v]
            for x in range(grp.order):
                for s in grp.generators():
                    if tab[x] * tab[s] != tab[grp.mul(x, s)]:
                        bad.append(f"vertex {v}: {grp.name_of(x)}*{grp.name_of(s)}")
        one = PathWord.identity(self.target)
        for name in sorted(g.edges):
            e = g.edges[name]
            t = self.stable.get(name, one)
            for c in e.group.generators():
                lhs = self.local[e.a][e.alpha(c)] * t
                rhs = t * self.local[e.b][e.omega(c)]
                if lhs != rhs:
                    bad.append(f"edge {name}: relation at {e.group.name_of(c)}")
        return bad


@dataclass(eq=False)
class MarkedGraphOfGroups:
    gog: GraphOfGroups
    reference: GraphOfGroups
    to_ref: Marking
    from_ref: Marking
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def seed(cls, g: GraphOfGroups) -> "MarkedGraphOfGroups":
        ident = Marking.identity(g)
        return cls(g, g, ident, ident, label=g.name)

    def twisted(self, w: PathWord, label: str = "") -> "MarkedGraphOfGroups":
        """Same graph, marking composed with conjugation by w (a reference word)."""
        if w.gog is not self.reference:
            raise MarkingError("twisting word must be a reference word")
        wi = w.inverse()
        to = {k: w * self.to_ref.apply(x) * wi for k, x in generator_words(self.gog)}
        fr = {k: self.from_ref.apply(wi * x * w) for k, x in generator_words(self.reference)}
        return MarkedGraphOfGroups(
            self.gog, self.reference,
            Marking.from_generators(self.gog, self.reference, to),
            Marking.from_generators(self.reference, self.gog, fr),
            label=label or f"{self.label}^{w}",
        )

    def translate_to(self, other: "MarkedGraphOfGroups") -> Callable[[PathWord], PathWord]:
        if other.reference is not self.reference:
            raise MarkingError("marked graphs have different references")
        return lambda w: other.from_ref.apply(self.to_ref.apply(w))

    def marking_failures(self) -> list[str]:
        """Empty iff both tables are homomorphisms and mutually inverse on generators."""
        bad = [f"to_ref {s}" for s in self.to_ref.relator_failures()]
        bad += [f"from_ref {s}" for s in self.from_ref.relator_failures()]
        for key, w in generator_words(self.gog):
            if self.from_ref.apply(self.to_ref.apply(w)) != w:
                bad.append(f"round trip on generator {key}")
        for key, w in generator_words(self.reference):
            if self.to_ref.apply(self.from_ref.apply(w)) != w:
                bad.append(f"round trip on reference generator {key}")
        return bad

    def vertex_group_in_ref(self, v: str) -> list[PathWord]:
        return [self.to_ref.apply(PathWord.local(self.gog, v, x)) for x in self.gog.group(v).generators()]

    def vertex_classes(self) -> dict[str, int]:
        """Reference finite-subgroup class of each vertex group."""
        if "vclass" not in self._cache:
            self._cache["vclass"] = {
                v: classify_finite_subgroup(self.vertex_group_in_ref(v), self.reference)
                for v in sorted(self.gog.vertices)
            }
        return self._cache["vclass"]

    def subgroup_census(self) -> list[int]:
        """Reference classes of this graph's finite-subgroup classes, in order."""
        return [classify_finite_subgroup([self.to_ref.apply(w) for w in c.representative], self.reference)
                for c in finite_subgroup_classes(self.gog)]

    def fingerprint(self) -> tuple:
        if "fp" not in self._cache:
            g = self.gog
            cls = self.vertex_classes()
            verts = sorted(
                (g.group(v).order, tuple(sorted(g.image(end).order for end in g.ends_at(v))), cls[v])
                for v in g.vertices
            )
            edges = sorted(e.group.order for e in g.edges.values())
            self._cache["fp"] = (len(g.vertices), len(g.edges), tuple(verts), tuple(edges))
        return self._cache["fp"]


# ---------------------------------------------------------------------------
# equivariant isomorphism search


@dataclass
class IsoResult:
    isomorphic: bool
    proven: bool  # False when a negative answer rests on a truncated search
    assignment: dict[str, TreeVertex] | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _tree_order(g: GraphOfGroups) -> list[tuple[str, str | None, Letter | None]]:
    """(vertex, tree parent, letter parent->vertex) in spanning-tree BFS order."""
    order = [(g.base, None, None)]
    seen = {g.base}
    i = 0
    while i < len(order):
        u = order[i][0]
        i += 1
        for end in g.ends_at(u):
            if end.edge not in g.tree:
                continue
            w = g.end_vertex(g.other_end(end))
            if w not in seen:
                seen.add(w)
                order.append((w, u, g.departing(end)))
    return order


def equivariant_assignments(source: GraphOfGroups, target: GraphOfGroups,
                            translate: Callable[[PathWord], PathWord],
                            search_radius: int = 4):
    """Yield vertex assignments F(lift v) with G_F(x) = G_x exactly that extend
    to an equivariant isomorphism of trees.  Returns the truncation flag via
    StopIteration value."""
    if len(source.vertices) != len(target.vertices) or len(source.edges) != len(target.edges):
        return False
    if source.group_orders() != target.group_orders():
        return False
    H = {v: [translate(PathWord.local(source, v, x)) for x in source.group(v).generators()]
         for v in source.vertices}
    order_of = {v: source.group(v).order for v in source.vertices}
    stable = {e: translate(PathWord.stable(source, e)) for e in source.non_tree_edges()}

    def exact(v, y: TreeVertex) -> bool:
        return stabilizer_order(y) == order_of[v] and all(fixes(h, y) for h in H[v])

    base = source.base
    try:
        x0 = fixed_vertex(H[base], target)
    except EllipticError:
        return False
    truncated = False
    cands = []
    seen = {x0}
    frontier = [x0]
    if exact(base, x0):
        cands.append(x0)
    for r in range(search_radius):
        nxt = []
        for x in frontier:
            for y, _ in neighbors(x):
                if y not in seen and all(fixes(h, y) for h in H[base]):
                    seen.add(y)
                    nxt.append(y)
                    if exact(base, y):
                        cands.append(y)
        frontier = nxt
    if frontier:
        truncated = True
    order = _tree_order(source)

    def check(F: dict[str, TreeVertex]) -> bool:
        if len({y.orbit for y in F.values()}) != len(F):
            return False
        edge_img = set()
        ends_at: dict[str, set] = {v: set() for v in source.vertices}
        for name in sorted(source.edges):
            e = source.edges[name]
            x = F[e.a]
            y = F[e.b] if name in source.tree else act(stable[name], F[e.b])
            try:
                ea = edge_end_at(x, y)
                eb = edge_end_at(y, x)
            except ValueError:
                return False
            if ea.edge in edge_img:
                return False
            edge_img.add(ea.edge)
            for v, end in ((e.a, ea), (e.b, eb)):
                if end in ends_at[v]:
                    return False
                ends_at[v].add(end)
        return True

    def extend(i: int, F: dict[str, TreeVertex]):
        if i == len(order):
            if check(F):
                yield dict(F)
            return
        v, parent, _L = order[i]
        for y, _end in neighbors(F[parent]):
            if exact(v, y):
                F[v] = y
                yield from extend(i + 1, F)
                del F[v]

    for c in cands:
        yield from extend(1, {base: c})
    return truncated


def marked_iso(m1: MarkedGraphOfGroups, m2: MarkedGraphOfGroups, search_radius: int = 4) -> IsoResult:
    """Search for a G-equivariant isomorphism between the two Bass–Serre trees."""
    if m1.reference is not m2.reference:
        raise MarkingError("marked graphs have different references")
    if m1.fingerprint() != m2.fingerprint():
        return IsoResult(False, True)
    gen = equivariant_assignments(m1.gog, m2.gog, m1.translate_to(m2), search_radius)
    try:
        F = next(gen)
    except StopIteration as stop:
        return IsoResult(False, not stop.value)
    return IsoResult(True, True, F)
