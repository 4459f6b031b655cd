"""What the canonical map looks like when the hypotheses fail.

FREE3 is Z2 * Z2 * Z2 split along a path of three vertices.  The middle
vertex can carry any of the three factors, so its reduced trees are not
unique, and maps between them fold.
"""

from gtrees import Caps, canonical_map, enumerate_reduced, fixtures
from gtrees.bass_serre import PathWord, base_vertex
from gtrees.marked import MarkedGraphOfGroups
from gtrees.rigidity import FOLD, CanonicalMap, check_tripod, consecutive_triples

m = MarkedGraphOfGroups.seed(fixtures.load("FREE3"))
print("with hypotheses checked:", canonical_map(m, m).preconditions["source_slide_free"])

space = enumerate_reduced(m, Caps(depth=2))
red = space.reduced_classes()
print(len(red), "reduced classes")
for tgt in red[1:]:
    cm = canonical_map(red[0], tgt, check_hypotheses=False)
    print(f"-> {cm.verdict:20s} arcs {cm.edge_arcs}")
    if cm.verdict == FOLD:
        rep = cm.diagnostics[0]
        print("   first fold:", rep.as_json())
        break

# Tripod certificate: send the whole tree to one point and every word to 1.
# All image arcs then overlap, and the witnesses g1, g2 multiply to an element
# that is hyperbolic in the source although its image fixes the common point.
s = MarkedGraphOfGroups.seed(fixtures.load("SSF1"))
one = PathWord.identity(s.gog)
flat = CanonicalMap(s, s, 3, {v: base_vertex(s.gog) for v in s.gog.vertices}, FOLD,
                    translate=lambda w: one)
for tri in list(consecutive_triples(flat))[:3]:
    r = check_tripod(flat, *tri)
    print("tripod:", r.gamma1, "|", r.gamma2, "| translation", r.source_translation,
          "| certificate", r.certificate_verified)
