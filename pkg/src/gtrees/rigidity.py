"""The canonical equivariant map between two marked trees in one deformation
space, with fold and tripod diagnostics.

Given marked graphs of groups T (source) and T' (target) over the same
reference group, each source vertex orbit v is sent to the vertex of T'
fixed by the translated G_v that lies closest to the base of T'.  The map is
extended equivariantly: x = g·lift(v) goes to τ(g)·f(lift v), where τ
translates source words into target words.

Everything is checked on finite data: arcs at the orbit representatives, a
source ball of configurable radius for injectivity, and fixed subtrees in T'
for uniqueness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .bass_serre import (
    EllipticError,
    PathWord,
    TreeVertex,
    act,
    ball,
    distance,
    fixed_subtree,
    fixes,
    is_elliptic_subgroup,
    lift,
    nearest_fixed_vertex,
    neighbors,
    path,
    stabilizer,
    translation_length,
)
from .gog import is_minimal, is_reduced, is_strongly_slide_free
from .marked import MarkedGraphOfGroups, MarkingError

ISOMORPHISM = "isomorphism"
FOLD = "fold-detected"
PRECONDITION = "precondition-failed"

RADIUS_CAP = 6

Edge = tuple[TreeVertex, TreeVertex]


class RigidityError(ValueError):
    pass


@dataclass
class FoldReport:
    vertex: TreeVertex
    e1: Edge
    e2: Edge
    end1: str
    end2: str
    overlap: int  # edges shared by the two image arcs
    length1: int
    length2: int
    same_orbit: bool
    witness: PathWord | None  # g in G_v with g·e1 = e2
    H: list[PathWord]  # generators of <G_e1, G_e2>, source words
    H_order: int
    H_elliptic: bool
    H_fixes_overlap: bool  # translated H fixes the shared part of the arcs in T'
    strict: bool  # overlap strictly inside both image arcs

    @property
    def orbit_status(self) -> str:
        return "same orbit" if self.same_orbit else "different ends"

    def as_json(self) -> dict:
        return {
            "vertex": str(self.vertex),
            "e1": [str(x) for x in self.e1],
            "e2": [str(x) for x in self.e2],
            "ends": [self.end1, self.end2],
            "overlap": self.overlap,
            "arc_lengths": [self.length1, self.length2],
            "orbit_status": self.orbit_status,
            "witness": None if self.witness is None else str(self.witness),
            "H_order": self.H_order,
            "H_elliptic": self.H_elliptic,
            "H_fixes_overlap": self.H_fixes_overlap,
            "strict": self.strict,
        }


@dataclass
class CanonicalMap:
    source: MarkedGraphOfGroups
    target: MarkedGraphOfGroups
    radius: int
    vertex_assignment: dict[str, TreeVertex] = field(default_factory=dict)
    verdict: str = PRECONDITION
    preconditions: dict[str, object] = field(default_factory=dict)
    checks: dict[str, bool | None] = field(default_factory=dict)
    edge_arcs: dict[str, int] = field(default_factory=dict)
    diagnostics: list[FoldReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    translate: Callable[[PathWord], PathWord] | None = field(default=None, repr=False)

    # -- the map on source tree vertices ---------------------------------
    def image(self, x: TreeVertex) -> TreeVertex:
        if not self.vertex_assignment:
            raise RigidityError("map was not constructed")
        return act(self.translate(x.translator()), self.vertex_assignment[x.orbit])

    def arc(self, e: Edge) -> list[TreeVertex]:
        return path(self.image(e[0]), self.image(e[1]))

    def group_words(self, v: str) -> list[PathWord]:
        g = self.source.gog
        return [self.translate(PathWord.local(g, v, x)) for x in g.group(v).generators()]

    def as_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "source": self.source.label,
            "target": self.target.label,
            "radius": self.radius,
            "preconditions": self.preconditions,
            "vertex_assignment": [
                {"vertex": v, "order": self.source.gog.group(v).order,
                 "image": str(y), "image_orbit": y.orbit}
                for v, y in sorted(self.vertex_assignment.items())
            ],
            "checks": dict(self.checks),
            "edge_arcs": dict(sorted(self.edge_arcs.items())),
            "diagnostics": [d.as_json() for d in self.diagnostics],
            "notes": list(self.notes),
        }


def _preconditions(t: MarkedGraphOfGroups, tp: MarkedGraphOfGroups) -> dict[str, object]:
    out: dict[str, object] = {}
    ok, w = is_minimal(t.gog)
    out["source_minimal"] = True if ok else f"vertex {w} has degree < 2"
    ok, w = is_strongly_slide_free(t.gog)
    out["source_slide_free"] = True if ok else w.describe(t.gog)
    ok, w = is_minimal(tp.gog)
    out["target_minimal"] = True if ok else f"vertex {w} has degree < 2"
    ok, w = is_reduced(tp.gog)
    out["target_reduced"] = True if ok else f"edge {w} is collapsible"
    return out


def default_radius(max_arc: int) -> int:
    return min(2 * max_arc + 2, RADIUS_CAP)


def canonical_map(t: MarkedGraphOfGroups, t_prime: MarkedGraphOfGroups, radius: int | None = None,
                  check_hypotheses: bool = True) -> CanonicalMap:
    """Build f : T -> T' and certify it.

    ``check_hypotheses=False`` builds f even when the theorem's hypotheses
    fail; it exists for exercising the diagnostics and is not exposed by the CLI.
    """
    if t.reference is not t_prime.reference:
        raise MarkingError("marked graphs have different references")
    cm = CanonicalMap(t, t_prime, radius or 0)
    cm.preconditions = _preconditions(t, t_prime)
    if check_hypotheses and any(v is not True for v in cm.preconditions.values()):
        cm.verdict = PRECONDITION
        return cm
    cm.translate = t.translate_to(t_prime)
    src, tgt = t.gog, t_prime.gog
    for v in sorted(src.vertices):
        H = [cm.translate(PathWord.local(src, v, x)) for x in src.group(v).generators()]
        try:
            cm.vertex_assignment[v] = nearest_fixed_vertex(H, tgt)
        except EllipticError as exc:
            raise RigidityError(f"no fixed vertex for the group of {v}: {exc}") from None
    cm.checks["fixed_points"] = all(
        fixes(h, cm.vertex_assignment[v]) for v in src.vertices for h in cm.group_words(v))

    lengths = {}
    for name in sorted(src.edges):
        e = src.edges[name]
        a = lift(src, e.a)
        b = lift(src, e.b)
        if name not in src.tree:
            b = act(PathWord.stable(src, name), b)
        lengths[name] = distance(cm.image(a), cm.image(b))
    cm.edge_arcs = lengths
    max_arc = max(lengths.values(), default=1)
    if radius is None:
        cm.radius = default_radius(max_arc)
    cm.checks["edge_lengths"] = all(n == 1 for n in lengths.values())
    cm.checks["degrees"] = all(
        src.degree(v) == tgt.degree(cm.vertex_assignment[v].orbit) for v in src.vertices)
    cm.checks["injectivity"] = _injective_on_ball(cm)
    cm.diagnostics = find_folds(cm)

    if cm.checks["edge_lengths"] and cm.checks["degrees"] and cm.checks["injectivity"]:
        cm.verdict = ISOMORPHISM
        cm.checks["uniqueness"] = all(
            len(fixed_subtree(cm.group_words(v), y, cm.radius)) == 1
            for v, y in cm.vertex_assignment.items())
    else:
        cm.verdict = FOLD
        cm.checks["uniqueness"] = None
        if not cm.diagnostics:
            cm.notes.append("checks failed without a fold at the orbit representatives")
    return cm


def _injective_on_ball(cm: CanonicalMap) -> bool:
    seen: dict[TreeVertex, TreeVertex] = {}
    for x in ball(cm.source.gog, cm.radius):
        y = cm.image(x)
        if y in seen:
            cm.notes.append(f"injectivity: {seen[y]} and {x} both map to {y}")
            return False
        seen[y] = x
    return True


def _incident(x: TreeVertex) -> list[tuple[TreeVertex, str]]:
    return [(y, str(end)) for y, end in neighbors(x)]


def find_folds(cm: CanonicalMap) -> list[FoldReport]:
    """Fold reports for every pair of edges at an orbit representative whose
    image arcs share more than one vertex."""
    out = []
    for v in sorted(cm.source.gog.vertices):
        x = lift(cm.source.gog, v)
        inc = _incident(x)
        for (y1, end1), (y2, end2) in combinations(inc, 2):
            if _overlap(cm, x, y1, y2) >= 1:
                out.append(diagnose_fold(cm, (x, y1), (x, y2)))
    return out


def _overlap(cm: CanonicalMap, x: TreeVertex, y1: TreeVertex, y2: TreeVertex) -> int:
    p1 = cm.arc((x, y1))
    p2 = cm.arc((x, y2))
    k = 0
    while k < min(len(p1), len(p2)) and p1[k] == p2[k]:
        k += 1
    return k - 1


def _common(e1: Edge, e2: Edge) -> tuple[TreeVertex, TreeVertex, TreeVertex]:
    for x in e1:
        if x in e2:
            y1 = e1[1] if e1[0] == x else e1[0]
            y2 = e2[1] if e2[0] == x else e2[0]
            if y1 == y2:
                break
            return x, y1, y2
    raise RigidityError("edges do not share exactly one vertex")


def _edge_stabilizer(x: TreeVertex, y: TreeVertex) -> list[PathWord]:
    return [h for h in stabilizer(x, generators_only=False) if fixes(h, y)]


def diagnose_fold(cm: CanonicalMap, e1: Edge, e2: Edge) -> FoldReport:
    x, y1, y2 = _common(e1, e2)
    for y in (y1, y2):
        if distance(x, y) != 1:
            raise RigidityError(f"{x} and {y} are not adjacent")
    ov = _overlap(cm, x, y1, y2)
    if ov < 1:
        raise RigidityError("no fold: image arcs meet in at most one vertex")
    l1 = distance(cm.image(x), cm.image(y1))
    l2 = distance(cm.image(x), cm.image(y2))
    gx = stabilizer(x, generators_only=False)
    witness = next((h for h in gx if act(h, y1) == y2), None)
    Ge1 = _edge_stabilizer(x, y1)
    Ge2 = _edge_stabilizer(x, y2)
    H = _generated(Ge1 + Ge2, gx)
    H_gens = [h for h in Ge1 + Ge2 if not h.is_identity]
    shared = cm.arc((x, y1))[: ov + 1]
    H_fix = all(fixes(cm.translate(h), p) for h in H_gens for p in shared)
    end1 = str(_end_of(x, y1))
    end2 = str(_end_of(x, y2))
    return FoldReport(
        vertex=x, e1=(x, y1), e2=(x, y2), end1=end1, end2=end2,
        overlap=ov, length1=l1, length2=l2,
        same_orbit=witness is not None, witness=witness,
        H=H_gens, H_order=len(H),
        H_elliptic=is_elliptic_subgroup(H_gens) if H_gens else True,
        H_fixes_overlap=H_fix,
        strict=ov < l1 and ov < l2,
    )


def _end_of(x: TreeVertex, y: TreeVertex):
    for z, end in neighbors(x):
        if z == y:
            return end
    raise RigidityError(f"{x} and {y} are not adjacent")


def _generated(gens: list[PathWord], ambient: list[PathWord]) -> set[PathWord]:
    # subgroup of the finite group `ambient` generated by gens
    one = PathWord.identity(ambient[0].gog)
    sub = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for a in frontier:
            for h in gens:
                b = a * h
                if b not in sub:
                    sub.add(b)
                    nxt.append(b)
        frontier = nxt
    return sub


# ---------------------------------------------------------------------------
# tripods


@dataclass
class TripodResult:
    disjoint: bool
    common: list[TreeVertex] = field(default_factory=list)
    gamma1: PathWord | None = None
    gamma2: PathWord | None = None
    target_elliptic: bool | None = None  # τ(γ1γ2) fixes a common point in T'
    source_translation: int | None = None  # translation length of γ1γ2 in T

    @property
    def certificate_verified(self) -> bool:
        return bool(self.target_elliptic) and bool(self.source_translation)

    def as_json(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "common": [str(p) for p in self.common],
            "gamma1": None if self.gamma1 is None else str(self.gamma1),
            "gamma2": None if self.gamma2 is None else str(self.gamma2),
            "target_elliptic": self.target_elliptic,
            "source_translation": self.source_translation,
        }


def check_tripod(cm: CanonicalMap, e1: Edge, e2: Edge, e3: Edge) -> TripodResult:
    try:
        v1, a, b = _common(e1, e2)
        v2, c, d = _common(e2, e3)
    except RigidityError:
        raise RigidityError("edges are not consecutive") from None
    if v1 == v2 or b != v2 or c != v1:
        raise RigidityError("edges are not consecutive")
    arcs = [set(cm.arc(e)) for e in (e1, e2, e3)]
    common = arcs[0] & arcs[1] & arcs[2]
    if not common:
        return TripodResult(True)
    res = TripodResult(False, sorted(common, key=lambda p: p.sort_key()))
    # γ1 ∈ G_v1 sends e1 to e2, γ2 ∈ G_v2 sends e2 to e3
    res.gamma1 = next((h for h in stabilizer(v1, False) if act(h, a) == v2), None)
    res.gamma2 = next((h for h in stabilizer(v2, False) if act(h, v1) == d), None)
    if res.gamma1 is not None and res.gamma2 is not None:
        prod = res.gamma1 * res.gamma2
        p = res.common[0]
        res.target_elliptic = fixes(cm.translate(prod), p)
        res.source_translation = translation_length(prod)
    return res


def consecutive_triples(cm: CanonicalMap):
    """Consecutive edge triples with middle edge starting at an orbit
    representative; every triple of T is a translate of one of these."""
    g = cm.source.gog
    for v in sorted(g.vertices):
        v1 = lift(g, v)
        nb = [y for y, _ in neighbors(v1)]
        for v2 in nb:
            for x0 in nb:
                if x0 == v2:
                    continue
                for x3, _ in neighbors(v2):
                    if x3 != v1:
                        yield (x0, v1), (v1, v2), (v2, x3)


# ---------------------------------------------------------------------------
# uniqueness across an enumerated space


@dataclass
class UniquenessReport:
    reduced: int
    slide_free: list[int]
    maps: list[tuple[int, int, str]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    duplicates: list[tuple[int, int]] = field(default_factory=list)  # for re-examination by marked_iso
    certificates: list[tuple[int, int, dict]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "THEOREM-VIOLATION" if self.violations else "ok"

    def summary(self) -> str:
        return f"{len(self.slide_free)} strongly slide-free among {self.reduced} reduced classes"

    def as_json(self) -> dict:
        return {
            "status": self.status,
            "reduced_classes": self.reduced,
            "slide_free_classes": self.slide_free,
            "maps": [{"source": i, "target": j, "verdict": v} for i, j, v in self.maps],
            "violations": list(self.violations),
            "duplicates": [list(p) for p in self.duplicates],
            "summary": self.summary(),
        }


def verify_unique_ssf(space, radius: int | None = None) -> UniquenessReport:
    """At most one strongly slide-free class among the reduced classes of an
    enumeration, and the canonical map from it to each reduced class is an
    isomorphism."""
    red = space.reduced
    ssf = [i for i in red if is_strongly_slide_free(space.classes[i].gog)[0]]
    rep = UniquenessReport(len(red), ssf)
    if len(ssf) > 1:
        rep.violations.append(f"{len(ssf)} strongly slide-free reduced classes: {ssf}")
    for i in ssf:
        for j in red:
            cm = canonical_map(space.classes[i], space.classes[j], radius)
            rep.maps.append((i, j, cm.verdict))
            rep.certificates.append((i, j, cm.as_json()))
            if cm.verdict != ISOMORPHISM:
                rep.violations.append(f"canonical map {i} -> {j}: {cm.verdict}")
            elif i != j:
                rep.duplicates.append((i, j))
    return rep
