"""Which 2-step circulants on Z_2 x Z_4 and Z_2 x Z_8 are ordinary circulants?"""
from itertools import combinations

from multicirc import build, is_circulant_2step
from multicirc.oracle import has_regular_cyclic_subgroup
from multicirc.quotient import diagonal_group

for s in [(2, 4), (2, 8)]:
    g = diagonal_group(*s)
    nonzero = [e for e in g.elements() if e != g.zero]
    pairs = [p for p in combinations(nonzero, 2) if g.generates(p)]
    for mode in (False, True):
        tally = {}
        for a1, a2 in pairs:
            ok, rule = is_circulant_2step(g, [a1, a2], mode)
            # cross-check against a direct search for a cyclic automorphism
            assert ok == has_regular_cyclic_subgroup(build(g, [a1, a2], mode))
            tally[rule] = tally.get(rule, 0) + 1
        print(g.describe(), "graph" if mode else "digraph", len(pairs), "pairs", tally)
