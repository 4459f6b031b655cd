"""Sampling vertex sequences that satisfy the three backtracking hypotheses.

Each sampled sequence u0, u1, ... has distinct neighbours, strictly
overlapping consecutive arcs, and no point shared by three consecutive arcs.
Arcs two or more apart then never meet.
"""

import random

from gtrees.treegeom import check_backtracking, random_tree, sample_sequence

rng = random.Random(1)
t = random_tree(20, rng)
print(t.to_edge_list())
seq, rate = sample_sequence(t, rng, 8)
print("sequence:", seq, f"(mean acceptance {rate:.2f})")
rep = check_backtracking(t, seq)
print("hypotheses hold:", rep.hypotheses_hold)
print("conclusion violations:", rep.conclusion_violations)

# A sequence that doubles back fails hypothesis (2).
bad = [seq[0], seq[1], seq[0]]
print(check_backtracking(t, bad).failures)
