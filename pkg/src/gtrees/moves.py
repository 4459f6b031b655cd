"""Collapse and expansion moves on marked graphs of groups, and bounded
breadth-first enumeration of the reduced trees they reach.

Each move comes with an explicit pair of path-level isomorphisms between the
old and new path groups; the marking of the result is the old marking pushed
through them and is re-verified after every move.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .bass_serre import PathWord, _vertices_along
from .fingroup import Mono, Subgroup, conjugacy_class_reps, double_coset_reps
from .gog import Edge, EdgeEnd, GraphOfGroups, Letter, is_minimal, is_reduced
from .marked import Marking, MarkedGraphOfGroups, MarkingError, generator_words, marked_iso


class MoveError(ValueError):
    pass


@dataclass
class MoveRecord:
    kind: str  # "collapse" | "expansion"
    params: dict
    inverse: dict  # parameters of the inverse move on the target

    def describe(self) -> str:
        p = self.params
        if self.kind == "collapse":
            return f"collapse {p['edge']} (remove {p['removed']})"
        ends = ",".join(f"{e}^{c}" for e, c in zip(p["ends"], p["conj"]))
        return f"expand {p['vertex']} <{'|'.join(p['subgroup'])}> [{ends}]"

    def as_json(self) -> dict:
        return {"kind": self.kind, "params": self.params, "inverse": self.inverse}


def _fresh(existing: Iterable[str], stem: str) -> str:
    existing = set(existing)
    k = 1
    while f"{stem}{k}" in existing:
        k += 1
    return f"{stem}{k}"


def _push_marking(m: MarkedGraphOfGroups, new: GraphOfGroups,
                  phi: Callable[[PathWord], PathWord], psi: Callable[[PathWord], PathWord],
                  label: str) -> MarkedGraphOfGroups:
    """Marking of ``new`` given isomorphisms phi: old -> new and psi: new -> old."""
    to_imgs = {key: m.to_ref.apply(psi(w)) for key, w in generator_words(new)}
    from_imgs = {key: phi(m.from_ref.apply(w)) for key, w in generator_words(m.reference)}
    to_ref = Marking.from_generators(new, m.reference, to_imgs)
    from_ref = Marking.from_generators(m.reference, new, from_imgs)
    return MarkedGraphOfGroups(new, m.reference, to_ref, from_ref, label=label)


# ---------------------------------------------------------------------------
# collapse


def collapsible_side(g: GraphOfGroups, edge: str) -> str | None:
    e = g.edges[edge]
    if e.is_loop:
        return None
    if e.group.order == g.group(e.a).order:
        return "a"
    if e.group.order == g.group(e.b).order:
        return "b"
    return None


def collapse(m: MarkedGraphOfGroups, edge: str, remove: str | None = None) -> tuple[MarkedGraphOfGroups, MoveRecord]:
    """Contract ``edge``, merging the vertex at its surjective end into the other end."""
    g = m.gog
    if edge not in g.edges:
        raise MoveError(f"unknown edge {edge!r}")
    e = g.edges[edge]
    if e.is_loop:
        raise MoveError(f"edge {edge!r} is a loop")
    if remove is None:
        remove = collapsible_side(g, edge)
        if remove is None:
            raise MoveError(f"edge {edge!r}: neither end inclusion is surjective")
    elif e.group.order != g.group(e.vertex(remove)).order:
        raise MoveError(f"edge {edge!r}: end {remove} is not surjective")
    keep = "b" if remove == "a" else "a"
    v1, v2 = e.vertex(remove), e.vertex(keep)
    inc1, inc2 = e.inclusion(remove), e.inclusion(keep)
    G1, G2 = g.group(v1), g.group(v2)
    conv = [inc2(inc1.preimage(x)) for x in range(G1.order)]

    moved: set[EdgeEnd] = set()
    edges = []
    for name in sorted(g.edges):
        if name == edge:
            continue
        f = g.edges[name]
        a, alpha, b, omega = f.a, f.alpha, f.b, f.omega
        if a == v1:
            a, alpha = v2, Mono(f.group, G2, tuple(conv[y] for y in alpha.images))
            moved.add(EdgeEnd(name, "a"))
        if b == v1:
            b, omega = v2, Mono(f.group, G2, tuple(conv[y] for y in omega.images))
            moved.add(EdgeEnd(name, "b"))
        edges.append(Edge(name, f.group, a, b, alpha, omega))
    vertices = {v: grp for v, grp in g.vertices.items() if v != v1}
    base = v2 if g.base == v1 else g.base
    tree = (g.tree - {edge}) if edge in g.tree else None
    new = GraphOfGroups(vertices, edges, base, tree, name=g.name)

    L12 = Letter(edge, 1 if remove == "a" else -1)  # v1 -> v2

    def phi(w: PathWord) -> PathWord:
        vs = _vertices_along(g, w.syllables, g.base)
        items = []
        for i, s in enumerate(w.syllables):
            if i % 2 == 0:
                items.append(conv[s] if vs[i // 2] == v1 else s)
            elif s.edge != edge:
                items.append(s)
        return PathWord.from_raw(new, items)

    def psi(w: PathWord) -> PathWord:
        items: list = []
        if g.base == v1:
            items.append(L12)
        for i, s in enumerate(w.syllables):
            if i % 2 == 0:
                items.append(s)
                continue
            if s.departure in moved:
                items.append(L12.inverse())
            items.append(s)
            if s.arrival in moved:
                items.append(L12)
        if g.base == v1:
            items.append(L12.inverse())
        return PathWord.from_raw(g, items)

    res = _push_marking(m, new, phi, psi, label=m.label)
    res._cache["phi"], res._cache["psi"] = phi, psi
    img = inc2.image()
    record = MoveRecord(
        "collapse",
        {"edge": edge, "removed": v1, "kept": v2},
        {"vertex": v2, "subgroup": img.names(), "ends": sorted(map(str, moved)),
         "conj": [G2.name_of(G2.identity)] * len(moved)},
    )
    return res, record


# ---------------------------------------------------------------------------
# expansion


def expand(m: MarkedGraphOfGroups, v: str, a: Subgroup, ends: Iterable[EdgeEnd] = (),
           conj: Mapping[EdgeEnd, int] | None = None) -> tuple[MarkedGraphOfGroups, MoveRecord]:
    """Blow vertex v up into an edge v --a-- w, reattaching ``ends`` to w.

    Each end ε is reattached with inclusion x -> c·ι_ε(x)·c⁻¹ (c = conj[ε]),
    which must land in ``a``.
    """
    g = m.gog
    if v not in g.vertices:
        raise MoveError(f"unknown vertex {v!r}")
    Gv = g.group(v)
    if a.parent is not Gv or Gv.closure(a.members) != a.members:
        raise MoveError("expansion subgroup is not a subgroup of the vertex group")
    ends = sorted(set(EdgeEnd(*x) for x in ends))
    conj = {EdgeEnd(*k): c for k, c in (conj or {}).items()}
    for end in ends:
        if end.edge not in g.edges or g.end_vertex(end) != v:
            raise MoveError(f"end {end} is not incident to {v}")
        c = conj.setdefault(end, Gv.identity)
        twisted = {Gv.conj(c, y) for y in g.image(end).members}
        if not twisted <= a.members:
            raise MoveError(
                f"end {end}: {Gv.name_of(c)}·image·{Gv.name_of(c)}⁻¹ is not contained in the expansion subgroup"
            )
    S = set(ends)
    w = _fresh(g.vertices, "x")
    f = _fresh(g.edges, "f")
    A, incl = Gv.subgroup_as_group(a, name=f"{Gv.name}_{a.order}")
    edges = []
    for name in sorted(g.edges):
        e = g.edges[name]
        aa, alpha, bb, omega = e.a, e.alpha, e.b, e.omega
        if EdgeEnd(name, "a") in S:
            aa, alpha = w, alpha.twist(conj[EdgeEnd(name, "a")]).restrict_codomain(A, incl)
        if EdgeEnd(name, "b") in S:
            bb, omega = w, omega.twist(conj[EdgeEnd(name, "b")]).restrict_codomain(A, incl)
        edges.append(Edge(name, e.group, aa, bb, alpha, omega))
    edges.append(Edge(f, A, v, w, incl, Mono(A, A, tuple(range(A.order)))))
    vertices = dict(g.vertices)
    vertices[w] = A
    new = GraphOfGroups(vertices, edges, g.base, g.tree | {f}, name=g.name)
    Lf = Letter(f, 1)

    def phi(word: PathWord) -> PathWord:
        items: list = []
        for i, s in enumerate(word.syllables):
            if i % 2 == 0:
                items.append(s)
                continue
            if s.departure in S:
                items += [Gv.inv(conj[s.departure]), Lf]
            items.append(s)
            if s.arrival in S:
                items += [Lf.inverse(), conj[s.arrival]]
        return PathWord.from_raw(new, items)

    def psi(word: PathWord) -> PathWord:
        vs = _vertices_along(new, word.syllables, new.base)
        items: list = []
        for i, s in enumerate(word.syllables):
            if i % 2 == 0:
                items.append(incl(s) if vs[i // 2] == w else s)
                continue
            if s.edge == f:
                continue
            if s.departure in S:
                items.append(conj[s.departure])
            items.append(s)
            if s.arrival in S:
                items.append(Gv.inv(conj[s.arrival]))
        return PathWord.from_raw(g, items)

    res = _push_marking(m, new, phi, psi, label=m.label)
    res._cache["phi"], res._cache["psi"] = phi, psi
    record = MoveRecord(
        "expansion",
        {"vertex": v, "subgroup": a.names(), "ends": [str(x) for x in ends],
         "conj": [Gv.name_of(conj[x]) for x in ends], "new_vertex": w, "new_edge": f},
        {"edge": f, "removed": w, "kept": v},
    )
    return res, record


def expansion_candidates(g: GraphOfGroups, v: str, valence_cap: int = 4, minimal_only: bool = True,
                         max_order: int = 48):
    """(subgroup, ends, conj) triples for expansions at v.

    Subgroups are taken up to G_v-conjugacy and conjugators up to
    A \\ G_v / image(ε); both reductions give equal trees.
    """
    Gv = g.group(v)
    ends = g.ends_at(v)
    if len(ends) > valence_cap:
        return None
    out = []
    for a in conjugacy_class_reps(Gv):
        if a.order > max_order:
            continue
        for r in range(1, len(ends) + 1):
            for S in itertools.combinations(ends, r):
                options = []
                for end in S:
                    im = g.image(end)
                    cs = [c for c in double_coset_reps(Gv, a, im)
                          if all(Gv.conj(c, y) in a.members for y in im.members)]
                    options.append(cs)
                if any(not o for o in options):
                    continue
                if minimal_only:
                    rest = sum(g.index(e) for e in ends if e not in S)
                    if Gv.order // a.order + rest < 2:
                        continue
                for cs in itertools.product(*options):
                    out.append((a, list(S), dict(zip(S, cs))))
    return out


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class Caps:
    depth: int = 3
    max_edges: int = 8
    max_order: int = 48
    valence: int = 4
    search_radius: int = 4


@dataclass
class Enumeration:
    classes: list[MarkedGraphOfGroups]
    depth: list[int]
    moves: list[tuple[int, int, MoveRecord]]
    truncated: bool
    unproven: list[tuple[int, int]] = field(default_factory=list)

    @property
    def reduced(self) -> list[int]:
        return [i for i, m in enumerate(self.classes) if is_reduced(m.gog)[0] and is_minimal(m.gog)[0]]

    def reduced_classes(self) -> list[MarkedGraphOfGroups]:
        return [self.classes[i] for i in self.reduced]


def _legal_moves(m: MarkedGraphOfGroups, caps: Caps, reverse: bool):
    g = m.gog
    moves = []
    for name in sorted(g.edges):
        if collapsible_side(g, name) is not None:
            moves.append(("collapse", name))
    truncated = False
    if len(g.edges) < caps.max_edges:
        for v in sorted(g.vertices):
            cands = expansion_candidates(g, v, caps.valence, max_order=caps.max_order)
            if cands is None:
                truncated = True
                continue
            for a, S, conj in cands:
                moves.append(("expand", v, a, S, conj))
    else:
        truncated = True
    if reverse:
        moves.reverse()
    return moves, truncated


def _apply(m: MarkedGraphOfGroups, mv):
    if mv[0] == "collapse":
        return collapse(m, mv[1])
    _, v, a, S, conj = mv
    return expand(m, v, a, S, conj)


def enumerate_reduced(m: MarkedGraphOfGroups, caps: Caps | None = None, reverse: bool = False,
                      verify: bool = False) -> Enumeration:
    """Breadth-first closure of m under collapses and minimal expansions,
    deduplicated by equivariant isomorphism."""
    caps = caps or Caps()
    if not is_minimal(m.gog)[0]:
        raise MoveError("enumeration needs a minimal seed")
    classes = [m]
    depth = [0]
    buckets: dict[tuple, list[int]] = {m.fingerprint(): [0]}
    moves: list = []
    unproven: list = []
    truncated = False
    frontier = [0]
    for d in range(caps.depth):
        nxt = []
        for i in frontier:
            legal, trunc = _legal_moves(classes[i], caps, reverse)
            truncated |= trunc
            for mv in legal:
                new, rec = _apply(classes[i], mv)
                if verify:
                    bad = new.marking_failures()
                    if bad:
                        raise MarkingError(f"marking broken after {rec.describe()}: {bad[:3]}")
                fp = new.fingerprint()
                match = None
                for j in buckets.get(fp, []):
                    r = marked_iso(new, classes[j], caps.search_radius)
                    if r.isomorphic:
                        match = j
                        break
                    if not r.proven:
                        unproven.append((j, len(classes)))
                if match is None:
                    match = len(classes)
                    classes.append(new)
                    depth.append(d + 1)
                    buckets.setdefault(fp, []).append(match)
                    nxt.append(match)
                moves.append((i, match, rec))
        frontier = nxt
    if frontier:
        truncated = True
    return Enumeration(classes, depth, moves, truncated, unproven)


# ---------------------------------------------------------------------------
# export


def fingerprint_label(m: MarkedGraphOfGroups) -> str:
    nv, ne, verts, edges = m.fingerprint()
    vs = " ".join(f"{o}{list(ends)}c{c}" for o, ends, c in verts)
    return f"V{nv} E{ne} | {vs} | edges {list(edges)}"


def enumeration_json(en: Enumeration) -> dict:
    red = set(en.reduced)
    classes = []
    for i, m in enumerate(en.classes):
        g = m.gog
        classes.append({
            "id": i,
            "depth": en.depth[i],
            "fingerprint": fingerprint_label(m),
            "reduced": i in red,
            "vertices": {v: {"order": g.group(v).order, "class": m.vertex_classes()[v]} for v in sorted(g.vertices)},
            "edges": {n: {"order": e.group.order, "from": e.a, "to": e.b,
                          "indices": [g.group(e.a).order // e.group.order, g.group(e.b).order // e.group.order]}
                      for n, e in sorted(g.edges.items())},
        })
    moves = [{"from": i, "to": j, **rec.as_json()} for i, j, rec in en.moves]
    return {"classes": classes, "moves": moves, "truncated": en.truncated,
            "unproven_pairs": [list(p) for p in en.unproven]}


def enumeration_dot(en: Enumeration) -> str:
    red = set(en.reduced)
    lines = ["digraph moves {"]
    for i, m in enumerate(en.classes):
        shape = "doublecircle" if i in red else "circle"
        lines.append(f'  n{i} [shape={shape}, label="{i}: {fingerprint_label(m)}"];')
    for i, j, rec in en.moves:
        lines.append(f'  n{i} -> n{j} [label="{rec.describe()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
