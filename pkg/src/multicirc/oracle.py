"""Brute-force verifiers.

Nothing in here relies on the normal-form machinery it is meant to check:
candidate Cayley graphs are built with plain modular arithmetic, and
isomorphism/automorphism questions are answered by backtracking search.
These are correctness anchors for small instances, not production paths.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import NotVertexTransitive, TooLarge
from .graph import Graph

FULL_LIMIT = 16
SEARCH_LIMIT = 32


@dataclass
class PermutationGroupSample:
    degree: int
    perms: list[tuple[int, ...]]
    complete: bool

    @property
    def order(self) -> int | None:
        """Group order when the enumeration ran to completion."""
        return len(self.perms) if self.complete else None


def is_automorphism(G: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(G.n)):
        return False
    for u in range(G.n):
        image = sorted(perm[w] for w in G.out[u])
        if tuple(image) != G.out[perm[u]]:
            return False
    return True


# --- colour refinement + backtracking ----------------------------------


def _refine(graphs: Sequence[Graph]) -> list[list[int]]:
    """Joint 1-WL colouring so colours are comparable across graphs."""
    ins = [g.in_lists for g in graphs]
    colors = [[(len(g.out[v]), len(ins[k][v])) for v in range(g.n)] for k, g in enumerate(graphs)]
    n_classes = -1
    while True:
        sigs = []
        for k, g in enumerate(graphs):
            c = colors[k]
            sigs.append(
                [
                    (c[v], tuple(sorted(c[w] for w in g.out[v])), tuple(sorted(c[w] for w in ins[k][v])))
                    for v in range(g.n)
                ]
            )
        palette = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        colors = [[palette[s] for s in ss] for ss in sigs]
        if len(palette) == n_classes:
            return colors
        n_classes = len(palette)


def _search_order(G: Graph, colors: Sequence[int]) -> tuple[list[int], list[int | None]]:
    """BFS order starting in the rarest colour class, plus each vertex's parent."""
    nb = G.underlying()
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    remaining = sorted(range(G.n), key=lambda v: (counts[colors[v]], v))
    seen = [False] * G.n
    order: list[int] = []
    parent: list[int | None] = []
    for s in remaining:
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([(s, None)])
        while queue:
            v, p = queue.popleft()
            order.append(v)
            parent.append(p)
            for w in sorted(nb[v], key=lambda w: (counts[colors[w]], w)):
                if not seen[w]:
                    seen[w] = True
                    queue.append((w, v))
    return order, parent


def _isomorphisms(G1: Graph, G2: Graph, limit: int) -> Iterator[list[int]]:
    if max(G1.n, G2.n) > limit:
        raise TooLarge(f"graph with {max(G1.n, G2.n)} vertices exceeds the oracle limit {limit}")
    if G1.n != G2.n or G1.directed != G2.directed or len(G1.edges()) != len(G2.edges()):
        return
    n = G1.n
    if n == 0:
        yield []
        return
    c1, c2 = _refine([G1, G2])
    if sorted(c1) != sorted(c2):
        return
    out1 = [set(x) for x in G1.out]
    out2 = [set(x) for x in G2.out]
    nb2 = G2.underlying()
    order, parent = _search_order(G1, c1)
    f = [-1] * n
    used = [False] * n
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)

    def consistent(k: int, v: int, x: int) -> bool:
        for i in range(k):
            w = order[i]
            y = f[w]
            if (w in out1[v]) != (y in out2[x]) or (v in out1[w]) != (x in out2[y]):
                return False
        return True

    def extend(k: int):
        if k == n:
            yield list(f)
            return
        v = order[k]
        p = parent[k]
        pool = sorted(nb2[f[p]]) if p is not None else by_color[c1[v]]
        for x in pool:
            if used[x] or c2[x] != c1[v] or not consistent(k, v, x):
                continue
            f[v] = x
            used[x] = True
            yield from extend(k + 1)
            used[x] = False
            f[v] = -1

    yield from extend(0)


def graphs_isomorphic(G1: Graph, G2: Graph, limit: int = SEARCH_LIMIT) -> bool:
    return find_isomorphism(G1, G2, limit) is not None


def find_isomorphism(G1: Graph, G2: Graph, limit: int = SEARCH_LIMIT) -> list[int] | None:
    """A vertex map ``f`` with ``u -> v`` in G1 iff ``f[u] -> f[v]`` in G2."""
    for f in _isomorphisms(G1, G2, limit):
        return f
    return None


def automorphisms(G: Graph, cap: int | None = None, limit: int = SEARCH_LIMIT) -> PermutationGroupSample:
    perms = []
    complete = True
    for f in _isomorphisms(G, G, limit):
        if not is_automorphism(G, f):
            raise AssertionError(f"search produced a non-automorphism {f}")
        perms.append(tuple(f))
        if cap is not None and len(perms) >= cap:
            complete = False
            break
    return PermutationGroupSample(G.n, perms, complete)


# --- circulant test ----------------------------------------------------


def _distance_profile(G: Graph, root: int = 0) -> tuple[int, ...]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in G.out[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    counts = [0] * (max(dist.values()) + 1)
    for d in dist.values():
        counts[d] += 1
    near = set(G.out[root])
    # two-step walks that land back among the out-neighbours
    wedges = sum(w in near for u in G.out[root] for w in G.out[u])
    return tuple(counts) + (wedges,)


def _connection_sets(n: int, deg: int, directed: bool) -> Iterator[tuple[int, ...]]:
    """Subsets of Z_n minus 0 of size deg, one per orbit under the units."""
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    if directed:
        pool = [tuple(c) for c in combinations(range(1, n), deg)]
    else:
        half = [d for d in range(1, n // 2 + 1)]
        pool = []
        for r in range(deg + 1):
            for c in combinations(half, r):
                S = sorted({x for d in c for x in (d, n - d)})
                if len(S) == deg:
                    pool.append(tuple(S))
    for S in pool:
        if all(tuple(sorted(u * x % n for x in S)) >= S for u in units):
            yield S


def regular_cycle(G: Graph, limit: int = SEARCH_LIMIT) -> list[int] | None:
    """An automorphism that is a single n-cycle, or None.

    G is a circulant iff it is isomorphic to some ``C_n(S)``. Connection
    sets are enumerated up to multiplication by units, filtered by the
    distance profile from a vertex, and tested by isomorphism search. An
    isomorphism ``f`` from ``C_n(S)`` turns the rotation ``i -> i+1`` into
    the required automorphism.
    """
    n = G.n
    if n > limit:
        raise TooLarge(f"graph with {n} vertices exceeds the oracle limit {limit}")
    if n == 1:
        return [0]
    deg = len(G.out[0])
    if any(len(o) != deg for o in G.out):
        return None
    target = _distance_profile(G)
    for S in _connection_sets(n, deg, G.directed):
        C = Graph.from_edges(n, [(i, (i + s) % n) for i in range(n) for s in S], G.directed)
        if _distance_profile(C) != target:
            continue
        f = find_isomorphism(C, G, limit)
        if f is None:
            continue
        perm = [0] * n
        for i in range(n):
            perm[f[i]] = f[(i + 1) % n]
        if not is_automorphism(G, perm):
            raise AssertionError("conjugated rotation is not an automorphism")
        return perm
    return None


def has_regular_cyclic_subgroup(G: Graph, limit: int = SEARCH_LIMIT) -> bool:
    """True iff some automorphism is an n-cycle, i.e. G is a circulant."""
    return regular_cycle(G, limit) is not None


def is_single_cycle(perm: Sequence[int]) -> bool:
    n = len(perm)
    v, steps = perm[0], 1
    while v != 0:
        v = perm[v]
        steps += 1
    return steps == n


# --- abelian groups by invariant-factor chains --------------------------


def _prime_exponents(m: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def invariant_chains(m: int, k: int) -> list[tuple[int, ...]]:
    """All ``s_1 | s_2 | ... | s_k`` with ``s_1 > 1`` and product ``m``."""

    def rec(rest: int, left: int, prev: int) -> list[tuple[int, ...]]:
        if left == 0:
            return [()] if rest == 1 else []
        out = []
        for s in range(max(prev, 2), rest + 1):
            if rest % s == 0 and s % prev == 0:
                out += [(s,) + tail for tail in rec(rest // s, left - 1, s)]
        return out

    return rec(m, k, 1)


def cayley_diag(s: Sequence[int], jumps: Sequence[Sequence[int]], directed: bool) -> Graph:
    """Cayley (di)graph of ``Z_s1 x ... x Z_sk`` in lexicographic vertex order."""
    s = tuple(s)
    elems = list(product(*(range(x) for x in s)))
    index = {e: i for i, e in enumerate(elems)}
    out = []
    for e in elems:
        out.append([index[tuple((x + a) % m for x, a, m in zip(e, j, s))] for j in jumps])
    return Graph(len(elems), out, directed)


def _diag_autos(s: tuple[int, ...], elems: list[tuple[int, ...]], cap: int) -> list[list[tuple[int, ...]]] | None:
    """Automorphisms of the diagonal group as element maps (None if too many)."""
    cands = [[e for e in elems if all((si * x) % m == 0 for x, m in zip(e, s))] for si in s]
    if prod(len(c) for c in cands) > cap:
        return None
    autos = []
    for images in product(*cands):
        mapped = []
        for e in elems:
            acc = [0] * len(s)
            for c, b in zip(e, images):
                for i, x in enumerate(b):
                    acc[i] += c * x
            mapped.append(tuple(x % m for x, m in zip(acc, s)))
        if len(set(mapped)) == len(elems):
            autos.append(mapped)
    return autos


def _jump_candidates(s: tuple[int, ...], degree: int, directed: bool) -> Iterator[tuple[tuple[int, ...], ...]]:
    elems = list(product(*(range(x) for x in s)))
    nonzero = elems[1:]
    if directed:
        yield from combinations(nonzero, degree)
        return
    classes, seen = [], set()
    for e in nonzero:
        if e in seen:
            continue
        neg = tuple((-x) % m for x, m in zip(e, s))
        cls = (e,) if neg == e else (e, neg)
        seen.update(cls)
        classes.append(cls)

    def rec(start: int, left: int, acc: tuple):
        if left == 0:
            yield acc
            return
        for i in range(start, len(classes)):
            if len(classes[i]) <= left:
                yield from rec(i + 1, left - len(classes[i]), acc + classes[i])

    yield from rec(0, degree, ())


def dimension_bruteforce(G: Graph, limit: int = FULL_LIMIT, auto_cap: int = 20000) -> int:
    """Least rank of an abelian group with a Cayley (di)graph isomorphic to G."""
    m = G.n
    if m > limit:
        raise TooLarge(f"graph with {m} vertices exceeds the oracle limit {limit}")
    if m == 1:
        return 0
    degrees = {len(x) for x in G.out}
    if len(degrees) != 1:
        raise NotVertexTransitive("graph is not regular")
    degree = degrees.pop()
    max_rank = max(_prime_exponents(m).values())
    for k in range(1, max_rank + 1):
        for s in invariant_chains(m, k):
            elems = list(product(*(range(x) for x in s)))
            index = {e: i for i, e in enumerate(elems)}
            autos = _diag_autos(s, elems, auto_cap)
            tried = set()
            for J in _jump_candidates(s, degree, G.directed):
                if autos is not None:
                    key = min(tuple(sorted(a[index[j]] for j in J)) for a in autos)
                    if key in tried:
                        continue
                    tried.add(key)
                if graphs_isomorphic(cayley_diag(s, J, G.directed), G, limit=max(limit, SEARCH_LIMIT)):
                    return k
    raise NotVertexTransitive("no abelian Cayley realization found")


# --- group-level brute force ---------------------------------------------


def element_order_bruteforce(g, a) -> int:
    """Add ``a`` to itself until the canonical zero appears."""
    zero = g.zero
    x = g.canonicalize(a)
    t = 1
    while x != zero:
        x = g.add(x, a)
        t += 1
        if t > g.m:
            raise AssertionError("element order exceeds group order")
    return t


def closure(g, A) -> set:
    """Subgroup generated by ``A``, by breadth-first addition."""
    gens = [g.canonicalize(a) for a in A]
    seen = {g.zero}
    queue = deque([g.zero])
    while queue:
        x = queue.popleft()
        for a in gens:
            y = g.add(x, a)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
