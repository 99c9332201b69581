"""Pairs of isomorphic circulants whose groups differ: Z_2eta x Z_2 vs Z_4eta."""
from multicirc import adam_isomorphic, exceptional_case
from multicirc.dimension import exceptional_pair
from multicirc.oracle import find_isomorphism

for eta in (1, 2, 3, 4):
    for symmetric in (False, True):
        G, C = exceptional_pair(eta, symmetric)
        f = find_isomorphism(G, C)
        print(
            f"eta={eta} {'graph' if symmetric else 'digraph'}:",
            G.group.describe(), "vs", C.group.describe(),
            "| detected eta", exceptional_case(G.group, G.jumps.jumps[:2], symmetric),
            "| isomorphism", f,
            "| same group presentation", adam_isomorphic(G.group, G.jumps, C.group, C.jumps, symmetric),
        )
