"""Multidimensional circulants G(M; A) over Z^n / M Z^n."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from .errors import (
    AlreadyConnected,
    AsymmetricJumpSet,
    IdentityJump,
    JumpNotInGroup,
    MixedDirectedness,
    TooLarge,
)
from .graph import Graph
from .intmat import IntMatrix
from .quotient import Element, QuotientGroup, diagonal_group, make_group


@dataclass(frozen=True)
class JumpSet:
    """Canonical, duplicate-free jumps; ``symmetric`` means ``A == -A``."""

    jumps: tuple[Element, ...]
    symmetric: bool = False

    def __len__(self):
        return len(self.jumps)

    def __iter__(self):
        return iter(self.jumps)


def _as_vector(a, n: int) -> tuple[int, ...]:
    if isinstance(a, int):
        a = (a,)
    a = tuple(a)
    if len(a) != n:
        raise JumpNotInGroup(f"jump {a} has {len(a)} coordinates, group has {n}")
    return a


def make_jumps(g: QuotientGroup, A, symmetric: bool = False, strict: bool = False) -> JumpSet:
    """Canonicalize a jump list for ``g``.

    Order of first appearance is kept. In symmetric mode missing negatives
    are appended, unless ``strict`` asks for an error instead.
    """
    if isinstance(A, JumpSet):
        A = A.jumps
    seen: dict[Element, None] = {}
    for a in A:
        c = g.canonicalize(_as_vector(a, g.n))
        if c == g.zero:
            raise IdentityJump(f"jump {tuple(a)} is the identity")
        seen.setdefault(c, None)
    jumps = list(seen)
    if symmetric:
        missing = [g.neg(a) for a in jumps if g.neg(a) not in seen]
        if missing and strict:
            raise AsymmetricJumpSet(f"jump set is not closed under negation, missing {missing[0]}")
        for a in missing:
            seen.setdefault(a, None)
        jumps = list(seen)
    return JumpSet(tuple(jumps), symmetric)


def _jumpset(g: QuotientGroup, A, symmetric: bool | None) -> JumpSet:
    if isinstance(A, JumpSet) and (symmetric is None or symmetric == A.symmetric):
        return make_jumps(g, A.jumps, A.symmetric)
    return make_jumps(g, A, bool(symmetric))


class CirculantGraph(Graph):
    """Explicit realization of G(M; A); vertices in lexicographic order."""

    def __init__(self, group: QuotientGroup, jumps: JumpSet):
        self.group = group
        self.jumps = jumps
        self.vertices = group.elements()
        self.index = {v: i for i, v in enumerate(self.vertices)}
        out = [[self.index[group.add(v, a)] for a in jumps] for v in self.vertices]
        super().__init__(len(self.vertices), out, directed=not jumps.symmetric)

    def labels(self) -> list[str]:
        return [",".join(map(str, v)) for v in self.vertices]

    def to_dot(self, labels=None, name: str = "G") -> str:
        return super().to_dot(self.labels() if labels is None else labels, name)

    def translation(self, t) -> list[int]:
        """Vertex permutation ``u -> u + t``."""
        return [self.index[self.group.add(v, t)] for v in self.vertices]

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        js = ", ".join(",".join(map(str, a)) for a in self.jumps)
        return f"<circulant {kind} over {self.group.describe()} with jumps {{{js}}}>"


def build(g: QuotientGroup | IntMatrix, A, symmetric: bool | None = None) -> CirculantGraph:
    if not isinstance(g, QuotientGroup):
        g = make_group(g)
    return CirculantGraph(g, _jumpset(g, A, symmetric))


def cycle(p: int, directed: bool = False) -> CirculantGraph:
    return build(diagonal_group(p), [1], symmetric=not directed)


def complete(p: int) -> CirculantGraph:
    return build(diagonal_group(p), list(range(1, p)), symmetric=True)


def cartesian_product(G1: CirculantGraph, G2: CirculantGraph) -> CirculantGraph:
    """Product over the block-diagonal matrix with jumps (a, 0) and (0, b)."""
    if G1.directed != G2.directed:
        raise MixedDirectedness("cannot multiply a digraph by a graph")
    n1, n2 = G1.group.n, G2.group.n
    M = IntMatrix.block_diag(G1.group.M, G2.group.M)
    A = [tuple(a) + (0,) * n2 for a in G1.jumps] + [(0,) * n1 + tuple(b) for b in G2.jumps]
    return build(make_group(M), A, symmetric=not G1.directed)


def components(G: CirculantGraph) -> tuple[int, list[list[int]]]:
    """Number of components (subgroup index of <A>) and their vertex sets."""
    comps = G.weak_components()
    alpha = G.group.subgroup_index(G.jumps.jumps) if len(G.jumps) else G.group.m
    if alpha != len(comps):
        raise RuntimeError(f"subgroup index {alpha} disagrees with {len(comps)} BFS components")
    return alpha, comps


@dataclass(frozen=True)
class DisconnectedReduction:
    """A disconnected G(M; A) rewritten as G(alpha M'; alpha A')."""

    alpha: int
    presentation: IntMatrix  # relation matrix of <A> over the jumps
    component_matrix: IntMatrix  # M', diagonal in Smith form
    component_jumps: tuple[tuple[int, ...], ...]
    scaled_matrix: IntMatrix  # M' with first row multiplied by alpha
    scaled_jumps: tuple[tuple[int, ...], ...]
    symmetric: bool

    @property
    def dimension_bound(self) -> int:
        return self.component_matrix.rows

    def component_graph(self) -> CirculantGraph:
        return build(self.component_matrix, self.component_jumps, self.symmetric)

    def scaled_graph(self) -> CirculantGraph:
        return build(self.scaled_matrix, self.scaled_jumps, self.symmetric)


def reduce_disconnected(g: QuotientGroup, A, symmetric: bool | None = None) -> DisconnectedReduction:
    js = _jumpset(g, A, symmetric)
    alpha = g.subgroup_index(js.jumps)
    if alpha == 1:
        raise AlreadyConnected("jump set generates the group")
    gens = list(js.jumps)
    P = g.presentation_from_generators(gens)
    sub = make_group(P)
    d = len(gens)
    units = [tuple(int(i == j) for i in range(d)) for j in range(d)]
    comp_group = diagonal_group(sub.Sprime)
    comp_jumps = tuple(sub.to_snf_coords(e) for e in units)
    k = comp_group.n
    scale = IntMatrix.diag(alpha, *([1] * (k - 1)))
    scaled_M = scale @ comp_group.M
    scaled_A = tuple((alpha * a[0],) + tuple(a[1:]) for a in comp_jumps)
    return DisconnectedReduction(
        alpha=alpha,
        presentation=P,
        component_matrix=comp_group.M,
        component_jumps=comp_jumps,
        scaled_matrix=scaled_M,
        scaled_jumps=scaled_A,
        symmetric=js.symmetric,
    )


def adam_canonical(g: QuotientGroup, A, symmetric: bool | None = None) -> tuple[QuotientGroup, JumpSet]:
    """Move G(M; A) to the Smith group ``Z^r / S' Z^r`` through ``a -> U' a``.

    The map is a group isomorphism, so the result is Adam isomorphic to the
    input. Jumps come back sorted; because U is not unique the jump set is
    canonical only up to that choice.
    """
    js = _jumpset(g, A, symmetric)
    target = diagonal_group(g.Sprime) if g.r else make_group([[1]])
    if g.r:
        images = sorted({g.to_snf_coords(a) for a in js.jumps})
    else:
        images = []
    return target, JumpSet(tuple(images), js.symmetric)


def _diag_elements(s: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(e) for e in product(*(range(x) for x in s))]


def _diag_combine(coeffs: Sequence[int], images: Sequence[tuple[int, ...]], s: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(s)
    for c, b in zip(coeffs, images):
        if c:
            for i, x in enumerate(b):
                out[i] += c * x
    return tuple(x % m for x, m in zip(out, s))


def group_automorphisms(s: Sequence[int], limit: int = 10**6):
    """Yield automorphisms of ``Z_s1 x ... x Z_sr`` as basis-image tuples."""
    s = tuple(s)
    elems = _diag_elements(s)
    cands = []
    for si in s:
        cands.append([e for e in elems if all((si * x) % m == 0 for x, m in zip(e, s))])
    if prod(len(c) for c in cands) > limit:
        raise TooLarge("automorphism search space too large")
    grp = diagonal_group(s) if s else None
    for images in product(*cands):
        if grp is not None and grp.generates(images):
            yield images


def adam_isomorphic(g1: QuotientGroup, A1, g2: QuotientGroup, A2, symmetric: bool | None = None) -> bool:
    """True iff a group isomorphism carries jump set A1 onto A2."""
    G1, J1 = adam_canonical(g1, A1, symmetric)
    G2, J2 = adam_canonical(g2, A2, symmetric)
    if g1.Sprime != g2.Sprime or len(J1) != len(J2):
        return False
    s = g1.Sprime
    if not s:
        return True
    src = list(J1.jumps)
    dst = set(J2.jumps)
    for images in group_automorphisms(s):
        if all(_diag_combine(x, images, s) in dst for x in src):
            return True
    return False
