"""Independent oracles used by the test-suite.

Nothing here touches the library's transversals, canonical forms or tree
model.  Words are raw item lists, ``("g", vertex, x)`` for a vertex-group
element and ``("y", edge, sign)`` for an edge letter, read along a path that
starts at the base vertex.

* ``britton`` rewrites by pinching y·c·y⁻¹ -> ι(c) and merging adjacent group
  elements until nothing changes.  A path word is trivial iff this leaves a
  single identity element (no letters).
* ``OracleTree`` realises the Bass-Serre tree as reduced paths from the base
  modulo right multiplication by the end vertex group, with coset equality
  decided by ``britton``.  Distance between two vertices is the letter count
  of the reduced path p⁻¹·q.
"""

from __future__ import annotations

import itertools
import math


def _arrival(g, item):
    e = g.edges[item[1]]
    return e.b if item[2] > 0 else e.a


def _incl(g, edge, side):
    e = g.edges[edge]
    return e.alpha if side == "a" else e.omega


def raw_items(w):
    """Raw items of a library PathWord (only used to feed its words in)."""
    g = w.gog
    v = g.base
    out = []
    for i, s in enumerate(w.syllables):
        if i % 2 == 0:
            out.append(("g", v, s))
        else:
            out.append(("y", s.edge, s.sign))
            e = g.edges[s.edge]
            v = e.b if s.sign > 0 else e.a
    return out


def britton(g, items):
    items = list(items)
    changed = True
    while changed:
        changed = False
        # merge neighbouring group elements, drop identities
        out = []
        for it in items:
            if it[0] == "g":
                grp = g.group(it[1])
                if out and out[-1][0] == "g":
                    prev = out.pop()
                    it = ("g", it[1], grp.mul(prev[2], it[2]))
                    changed = True
                if it[2] == grp.identity:
                    continue
            out.append(it)
        items = out
        # pinch y c y^-1 (c possibly absent)
        for i, it in enumerate(items):
            if it[0] != "y":
                continue
            j = i + 1
            c = None
            if j < len(items) and items[j][0] == "g":
                c = items[j]
                j += 1
            if j >= len(items) or items[j][0] != "y":
                continue
            nxt = items[j]
            if nxt[1] != it[1] or nxt[2] != -it[2]:
                continue
            e = g.edges[it[1]]
            arr_side = "b" if it[2] > 0 else "a"
            dep_side = "a" if it[2] > 0 else "b"
            arr = _incl(g, it[1], arr_side)
            dep = _incl(g, it[1], dep_side)
            cod = arr.codomain
            x = cod.identity if c is None else c[2]
            pre = [k for k in range(e.group.order) if arr.images[k] == x]
            if not pre:
                continue
            v = e.vertex(dep_side)
            items = items[:i] + [("g", v, dep.images[pre[0]])] + items[j + 1:]
            changed = True
            break
    return items


def letters(items) -> int:
    return sum(1 for it in items if it[0] == "y")


def is_trivial(g, items) -> bool:
    return not britton(g, items)


def inverse(g, items, start=None):
    out = []
    for it in reversed(items):
        if it[0] == "g":
            out.append(("g", it[1], g.group(it[1]).inv(it[2])))
        else:
            out.append(("y", it[1], -it[2]))
    return out


def end_vertex(g, items, start=None):
    v = start or g.base
    for it in items:
        if it[0] == "y":
            v = _arrival(g, it)
    return v


class OracleTree:
    def __init__(self, g):
        self.g = g
        self._balls = {}

    def children(self, p):
        """Neighbours of vertex p (a reduced path), excluding its parent."""
        g = self.g
        v = end_vertex(g, p)
        grp = g.group(v)
        out = []
        for name in sorted(g.edges):
            e = g.edges[name]
            for side, sign in (("a", 1), ("b", -1)):
                if e.vertex(side) != v:
                    continue
                y = ("y", name, sign)
                reps = []
                for x in range(grp.order):
                    # same coset as an earlier representative?
                    if any(letters(britton(g, [("y", name, -sign), ("g", v, grp.mul(grp.inv(r), x)), y])) == 0
                           for r in reps):
                        continue
                    reps.append(x)
                for x in reps:
                    q = britton(g, p + [("g", v, x), y])
                    if letters(q) > letters(p):
                        out.append(q)
        return out

    def ball(self, radius):
        if radius not in self._balls:
            level = [[]]
            allv = [[]]
            for _ in range(radius):
                level = [q for p in level for q in self.children(p)]
                allv += level
            self._balls[radius] = allv
        return self._balls[radius]

    def displacement(self, x_items, p) -> int:
        g = self.g
        return letters(britton(g, inverse(g, p) + x_items + p))

    def translation_length(self, x_items) -> int:
        """min d(p, x·p) over the ball of radius ceil(d(v0, x·v0) / 2).

        d(v0, x·v0) = ℓ + 2·d(v0, Min(x)), so Min(x) meets that ball and the
        minimum is exact."""
        d = letters(britton(self.g, x_items))
        r = math.ceil(d / 2)
        return min(self.displacement(x_items, p) for p in self.ball(r))


def subgroup_closure(grp, gens):
    """Closure by repeated multiplication until stable."""
    s = {grp.identity} | set(gens)
    while True:
        new = {grp.mul(a, b) for a, b in itertools.product(s, s)} | s
        if new == s:
            return frozenset(s)
        s = new
