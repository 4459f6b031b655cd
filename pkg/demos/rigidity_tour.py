"""A walk through one deformation space.

Run with ``python demos/rigidity_tour.py``.
"""

from gtrees import Caps, canonical_map, enumerate_reduced, fixtures, is_strongly_slide_free, parse_word
from gtrees.bass_serre import act, base_vertex, distance, translation_length
from gtrees.marked import MarkedGraphOfGroups
from gtrees.rigidity import verify_unique_ssf

g = fixtures.load("SSF1")
print("SSF1 is Z4 *_{Z2} Z6, the amalgam identifying a^2 with b^3")
print("strongly slide-free:", is_strongly_slide_free(g)[0])

# Elements are loops at the base vertex; a and b are elliptic, ab is not.
a, b = parse_word(g, "a"), parse_word(g, "b")
for w in (a, b, a * b, (a * b) ** 3):
    print(f"  {str(w):40s} translation length {translation_length(w)}")

u = base_vertex(g)
print("d(u, b.u) =", distance(u, act(b, u)))

# Every tree reachable by collapses and expansions, up to equivariant isomorphism.
m = MarkedGraphOfGroups.seed(g)
space = enumerate_reduced(m, Caps(depth=3))
print(f"{len(space.classes)} marked trees reached, {len(space.reduced)} of them reduced")
print(verify_unique_ssf(space).summary())

# The canonical map to a re-marked copy is still an isomorphism.
twisted = m.twisted(parse_word(g, "a·b"))
cm = canonical_map(m, twisted)
print("canonical map to the twisted marking:", cm.verdict)
for row in cm.as_json()["vertex_assignment"]:
    print("  ", row)
print("checks:", cm.checks)
