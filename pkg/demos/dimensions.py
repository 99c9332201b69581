"""Dimension of a few small circulants, closed forms next to brute force."""
from multicirc import analyze, build, cartesian_product, detect_directions
from multicirc.circulant import complete, cycle
from multicirc.graph import hypercube
from multicirc.oracle import dimension_bruteforce
from multicirc.quotient import diagonal_group

cases = {
    "directed C3 x C3": cartesian_product(cycle(3, directed=True), cycle(3, directed=True)),
    "K3 x K3": cartesian_product(complete(3), complete(3)),
    "C5 x C5": cartesian_product(cycle(5), cycle(5)),
    "Z_2 x Z_4 on e1, e2": build(diagonal_group(2, 4), [(1, 0), (0, 1)], symmetric=True),
}
for name, G in cases.items():
    rep = analyze(G.group, G.jumps.jumps, symmetric=not G.directed)
    brute = dimension_bruteforce(G, limit=25) if G.n <= 25 else None
    print(f"{name}: bounds {rep.upper_bound}, closed form {rep.exact_dimension} ({rep.provenance}), brute force {brute}")

print("3-cube:", dimension_bruteforce(hypercube(3)))

part = detect_directions(cases["C5 x C5"], 5)
print("C5 x C5 splits into", part.n_directions, "directions of", len(part.direction_of_edge), "edges")
