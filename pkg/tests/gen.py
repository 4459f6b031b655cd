"""Random valid graphs of groups for property tests."""

import random

from gtrees.fingroup import check_monomorphism, cyclic, symmetric
from gtrees.gog import GraphOfGroups, Letter, make_edge

_POOL = [("cyclic", n) for n in (1, 2, 3, 4, 6, 8, 12)] + [("symmetric", 3), ("symmetric", 4)]


def _group(spec, name):
    kind, n = spec
    return cyclic(n, "g", name=name) if kind == "cyclic" else symmetric(n, name=name)


def _elements_of_order(g, k):
    return [x for x in range(g.order) if g.element_order(x) == k]


def random_gog(rng: random.Random, max_vertices: int = 3, max_edges: int = 4, order_cap: int = 24) -> GraphOfGroups:
    pool = [s for s in _POOL if (s[1] if s[0] == "cyclic" else (6 if s[1] == 3 else 24)) <= order_cap]
    nv = rng.randint(1, max_vertices)
    vertices = {f"v{i}": _group(rng.choice(pool), f"G{i}") for i in range(nv)}
    names = sorted(vertices)
    ne_min = nv - 1
    ne = rng.randint(ne_min, max(ne_min, max_edges))
    # spanning edges first keep the graph connected
    pairs = [(names[rng.randrange(i)], names[i]) for i in range(1, nv)]
    while len(pairs) < ne:
        pairs.append((rng.choice(names), rng.choice(names)))
    edges = []
    for k, (a, b) in enumerate(pairs):
        if rng.random() < 0.5:
            a, b = b, a
        Ga, Gb = vertices[a], vertices[b]
        orders = [d for d in range(1, 13)
                  if _elements_of_order(Ga, d) and _elements_of_order(Gb, d)]
        d = rng.choice(orders)
        E = cyclic(d, "x", name=f"E{k}")
        if d == 1:
            alpha = check_monomorphism(E, Ga, {0: Ga.identity})
            omega = check_monomorphism(E, Gb, {0: Gb.identity})
        else:
            alpha = check_monomorphism(E, Ga, {1: rng.choice(_elements_of_order(Ga, d))})
            omega = check_monomorphism(E, Gb, {1: rng.choice(_elements_of_order(Gb, d))})
        edges.append(make_edge(f"e{k}", E, a, alpha, b, omega))
    return GraphOfGroups(vertices, edges, names[0], name=f"rand{rng.random():.6f}")


def random_loop(g: GraphOfGroups, rng: random.Random, length: int) -> list:
    """Random loop at the base as oracle items, ``length`` steps then home along the tree."""
    v = g.base
    items = []
    for _ in range(length):
        ends = g.ends_at(v)
        if ends and rng.random() < 0.5:
            end = rng.choice(ends)
            L = g.departing(end)
            items.append(("y", L.edge, L.sign))
            v = g.end_vertex(L.arrival)
        else:
            items.append(("g", v, rng.randrange(g.group(v).order)))
    for L in reversed(g.tree_path(v)):
        L = L.inverse()
        items.append(("y", L.edge, L.sign))
    return items


def to_library(items) -> list:
    """Oracle items -> raw syllables accepted by ``PathWord.from_raw``."""
    return [it[2] if it[0] == "g" else Letter(it[1], it[2]) for it in items]


def all_loops(g: GraphOfGroups, length: int):
    """Every loop of exactly ``length`` steps (each a non-identity element or an edge letter)."""
    def rec(v, items, left):
        if left == 0:
            if v == g.base:
                yield list(items)
            return
        for end in g.ends_at(v):
            L = g.departing(end)
            items.append(("y", L.edge, L.sign))
            yield from rec(g.end_vertex(L.arrival), items, left - 1)
            items.pop()
        if not items or items[-1][0] != "g":
            for x in range(g.group(v).order):
                if x != g.group(v).identity:
                    items.append(("g", v, x))
                    yield from rec(v, items, left - 1)
                    items.pop()
    yield from rec(g.base, [], length)


def random_move(m, rng: random.Random, max_edges: int = 5):
    """Apply one random legal collapse or expansion; returns (new, record) or None."""
    from gtrees.moves import collapse, collapsible_side, expand, expansion_candidates

    g = m.gog
    options = [("collapse", n) for n in sorted(g.edges) if collapsible_side(g, n) is not None]
    if len(g.edges) < max_edges:
        for v in sorted(g.vertices):
            for a, S, conj in expansion_candidates(g, v, valence_cap=6, minimal_only=False) or []:
                options.append(("expand", v, a, S, conj))
    if not options:
        return None
    mv = rng.choice(options)
    if mv[0] == "collapse":
        return collapse(m, mv[1])
    return expand(m, mv[1], mv[2], mv[3], mv[4])
