"""Rewrite G(diag(2,2,3); e1, e2, 2e3) over its Smith group Z_2 x Z_6."""
from multicirc import IntMatrix, adam_canonical, build, make_group, smith_normal_form
from multicirc.oracle import graphs_isomorphic

M = IntMatrix.diag(2, 2, 3)
A = [(1, 0, 0), (0, 1, 0), (0, 0, 2)]

dec = smith_normal_form(M)
print("S =", dec.S.diagonal())
print("U =", dec.U.tolist())
print("V =", dec.V.tolist())

g = make_group(M)
print("group:", g.describe(), "order", g.m, "rank", g.r)
print("images of the jumps:", [g.to_snf_coords(a) for a in A])

target, jumps = adam_canonical(g, A)
print("canonical presentation:", target.describe(), list(jumps))
print("isomorphic to the original:", graphs_isomorphic(build(g, A), build(target, jumps)))
