"""Recover the coordinate directions of a product of prime-order circulants.

The input is bare adjacency. Work happens on the underlying undirected
graph, which for a product of circulant digraphs is the product of their
underlying graphs, so the same edge partition applies to arcs.

Outline:

* At a root vertex, the shortest odd cycle through it (in the graph with
  already-classified edges removed) lies inside a single direction. Every
  other odd cycle of that length through one of its edges does too, so
  growing by such cycles collects the copy of the factor through the root.
* Once the root edges of one direction are known, the direction spreads to
  the whole graph through 4-cycles: for adjacent edges ``(w, v)`` and
  ``(w, z)`` in different directions, ``v`` and ``z`` have exactly one
  common neighbour besides ``w``, and the opposite sides of that square
  carry the same directions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotAProductInstance
from .graph import Graph

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DirectionPartition:
    """Direction index (1-based) of every edge plus the factor copies.

    ``copies[(i, v)]`` is the vertex set of the copy of factor ``i`` that
    contains ``v``. Edges are keyed as ``(min, max)`` vertex pairs.
    """

    direction_of_edge: dict[Edge, int]
    copies: dict[tuple[int, int], frozenset[int]]
    n_directions: int

    def direction(self, u: int, v: int) -> int:
        return self.direction_of_edge[_edge(u, v)]

    def classes(self) -> list[frozenset[Edge]]:
        out: list[set[Edge]] = [set() for _ in range(self.n_directions)]
        for e, i in self.direction_of_edge.items():
            out[i - 1].add(e)
        return [frozenset(c) for c in out]


def _bfs_dist(nb: list[set[int]], src: int) -> list[int]:
    dist = [-1] * len(nb)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _paths(nb: list[set[int]], start: int, target: int, length: int, banned: set[int], dist: list[int]):
    """Simple paths ``start -> target`` with exactly ``length`` edges, lexicographic."""
    path = [start]
    on_path = {start} | banned

    def rec(x: int, left: int):
        if left == 0:
            if x == target:
                yield list(path)
            return
        for y in sorted(nb[x]):
            if y == target:
                if left == 1:
                    path.append(y)
                    yield list(path)
                    path.pop()
                continue
            if y in on_path or dist[y] < 0 or dist[y] > left - 1:
                continue
            path.append(y)
            on_path.add(y)
            yield from rec(y, left - 1)
            on_path.discard(y)
            path.pop()

    yield from rec(start, length)


def shortest_odd_cycle_through(nb: list[set[int]], u: int) -> list[int] | None:
    """Lexicographically first shortest odd cycle through ``u`` (vertex list)."""
    dist = _bfs_dist(nb, u)
    reach = sum(1 for d in dist if d >= 0)
    for length in range(3, reach + 1, 2):
        for first in sorted(nb[u]):
            for p in _paths(nb, first, u, length - 1, {u}, dist):
                return [u] + p[:-1]
    return None


def _cycles_through_edge(nb: list[set[int]], a: int, b: int, length: int):
    dist = _bfs_dist(nb, a)
    for p in _paths(nb, b, a, length - 1, {a}, dist):
        if len(p) == 2:
            continue
        yield [a] + p[:-1]


def _grow_copy(nb: list[set[int]], cycle: list[int]) -> set[int]:
    """Vertices reached by chaining odd cycles of the same length through shared edges."""
    length = len(cycle)
    verts = set(cycle)
    edges = {_edge(cycle[i], cycle[(i + 1) % length]) for i in range(length)}
    queue = deque(sorted(edges))
    while queue:
        a, b = queue.popleft()
        for c in _cycles_through_edge(nb, a, b, length):
            for i in range(length):
                e = _edge(c[i], c[(i + 1) % length])
                if e not in edges:
                    edges.add(e)
                    queue.append(e)
            verts.update(c)
    return verts


def _square_corner(nb: list[set[int]], w: int, v: int, z: int) -> int:
    """The unique common neighbour of ``v`` and ``z`` other than ``w``."""
    if z in nb[v]:
        raise NotAProductInstance(f"edges {w}-{v} and {w}-{z} lie on a triangle across directions")
    common = (nb[v] & nb[z]) - {w}
    if len(common) != 1:
        raise NotAProductInstance(f"edges {w}-{v} and {w}-{z} close {len(common)} squares, expected 1")
    return next(iter(common))


def _propagate(nb: list[set[int]], root: int, root_edges: set[int]) -> dict[int, frozenset[int]]:
    """Spread one direction from the root to every vertex of its component."""
    members = {root: frozenset(root_edges)}
    queue = deque([root])
    while queue:
        w = queue.popleft()
        inside = members[w]
        outside = nb[w] - inside
        if not inside:
            raise NotAProductInstance(f"vertex {w} has no edge in a direction present elsewhere")
        for z in sorted(nb[w]):
            if z in inside:
                across = {_square_corner(nb, w, z, y) for y in outside}
                if len(across) != len(outside):
                    raise NotAProductInstance(f"square rule is not injective at {z}")
                here = frozenset(nb[z] - across)
            else:
                here = frozenset(_square_corner(nb, w, z, v) for v in inside)
                if len(here) != len(inside):
                    raise NotAProductInstance(f"square rule is not injective at {z}")
            if z in members:
                if members[z] != here:
                    raise NotAProductInstance(f"inconsistent direction at vertex {z}")
            else:
                members[z] = here
                queue.append(z)
    return members


def neighbourhood_classes(nb: list[set[int]], u: int) -> list[set[int]]:
    """Connected components of the subgraph induced on the neighbours of ``u``."""
    left = set(nb[u])
    out = []
    while left:
        s = min(left)
        comp, stack = {s}, [s]
        left.discard(s)
        while stack:
            x = stack.pop()
            for y in nb[x] & left:
                left.discard(y)
                comp.add(y)
                stack.append(y)
        out.append(comp)
    return out


def detect_directions(G: Graph, p: int, rule: str = "odd-cycle") -> DirectionPartition:
    """Partition the edges of ``G`` into product directions.

    ``G`` should be a product of connected circulants on ``p`` vertices.
    ``rule="neighbourhood"`` classifies the root edges by the components of
    the root's neighbourhood instead, which is valid for products of complete
    graphs.
    """
    if rule not in ("odd-cycle", "neighbourhood"):
        raise ValueError(f"unknown rule {rule!r}")
    nb = G.underlying()
    if G.n == 0 or not nb[0]:
        raise NotAProductInstance("graph has no edges at the root")
    if len(G.weak_components()) != 1:
        raise NotAProductInstance("graph is disconnected")
    root = 0
    label: dict[Edge, int] = {}

    def assign(direction: int, root_edges: set[int]) -> None:
        for w, inside in _propagate(nb, root, root_edges).items():
            for v in inside:
                e = _edge(w, v)
                if label.setdefault(e, direction) != direction:
                    raise NotAProductInstance(f"edge {e} claimed by two directions")

    if rule == "neighbourhood":
        for i, comp in enumerate(neighbourhood_classes(nb, root), start=1):
            assign(i, comp)
        n_dirs = len(neighbourhood_classes(nb, root))
    else:
        n_dirs = 0
        while any(_edge(root, v) not in label for v in nb[root]):
            free = [{v for v in nb[x] if _edge(x, v) not in label} for x in range(G.n)]
            cyc = shortest_odd_cycle_through(free, root)
            if cyc is None:
                raise NotAProductInstance("no odd cycle through the root among unclassified edges")
            copy = _grow_copy(free, cyc)
            if len(copy) != p:
                raise NotAProductInstance(f"factor copy has {len(copy)} vertices, expected {p}")
            n_dirs += 1
            assign(n_dirs, {v for v in free[root] if v in copy})

    missing = [e for e in G.edges() if _edge(*e) not in label]
    if missing:
        raise NotAProductInstance(f"edge {missing[0]} was left without a direction")
    if p ** n_dirs != G.n:
        raise NotAProductInstance(f"{n_dirs} directions of size {p} cannot cover {G.n} vertices")

    copies: dict[tuple[int, int], frozenset[int]] = {}
    for i in range(1, n_dirs + 1):
        sub = [set() for _ in range(G.n)]
        for (a, b), d in label.items():
            if d == i:
                sub[a].add(b)
                sub[b].add(a)
        seen: set[int] = set()
        for s in range(G.n):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                x = stack.pop()
                for y in sub[x] - comp:
                    comp.add(y)
                    stack.append(y)
            if len(comp) != p:
                raise NotAProductInstance(f"copy of direction {i} at {s} has {len(comp)} vertices")
            seen |= comp
            fc = frozenset(comp)
            for v in comp:
                copies[(i, v)] = fc
    return DirectionPartition(label, copies, n_dirs)
