"""Plain (di)graphs on vertices ``0..n-1`` with JSON and DOT exchange."""
from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Sequence


class Graph:
    """Adjacency-list graph.

    ``out[v]`` is the sorted tuple of out-neighbours of ``v``. Undirected
    graphs store each edge in both lists.
    """

    def __init__(self, n: int, out: Iterable[Iterable[int]], directed: bool = True):
        self.n = n
        self.directed = directed
        self.out = tuple(tuple(sorted(set(nb))) for nb in out)
        if len(self.out) != n:
            raise ValueError(f"adjacency has {len(self.out)} rows for {n} vertices")
        for v, nb in enumerate(self.out):
            for w in nb:
                if not 0 <= w < n:
                    raise ValueError(f"vertex {v} points to {w}, outside 0..{n - 1}")
        if not directed:
            for v, nb in enumerate(self.out):
                for w in nb:
                    if v not in self.out[w]:
                        raise ValueError(f"undirected graph is missing {w} -> {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], directed: bool = True) -> Graph:
        out = [set() for _ in range(n)]
        for u, v in edges:
            out[u].add(v)
            if not directed:
                out[v].add(u)
        return cls(n, out, directed)

    def edges(self) -> list[tuple[int, int]]:
        if self.directed:
            return [(u, v) for u in range(self.n) for v in self.out[u]]
        return [(u, v) for u in range(self.n) for v in self.out[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out[u]

    @property
    def in_lists(self) -> tuple[tuple[int, ...], ...]:
        ins = [[] for _ in range(self.n)]
        for u in range(self.n):
            for v in self.out[u]:
                ins[v].append(u)
        return tuple(tuple(x) for x in ins)

    def underlying(self) -> list[set[int]]:
        """Neighbour sets of the underlying undirected simple graph (no loops)."""
        nb = [set() for _ in range(self.n)]
        for u in range(self.n):
            for v in self.out[u]:
                if u != v:
                    nb[u].add(v)
                    nb[v].add(u)
        return nb

    def weak_components(self) -> list[list[int]]:
        nb = self.underlying()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for v in nb[u]:
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        out = [[index[w] for w in self.out[v] if w in index] for v in vertices]
        return Graph(len(vertices), out, self.directed)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        out = [None] * self.n
        for v in range(self.n):
            out[perm[v]] = [perm[w] for w in self.out[v]]
        return Graph(self.n, out, self.directed)

    def cartesian(self, other: Graph) -> Graph:
        """Cartesian product; vertex ``(x, y)`` gets index ``x * other.n + y``."""
        if self.directed != other.directed:
            raise ValueError("cannot mix directed and undirected factors")
        k = other.n
        out = []
        for x in range(self.n):
            for y in range(k):
                nb = [x2 * k + y for x2 in self.out[x]] + [x * k + y2 for y2 in other.out[y]]
                out.append(nb)
        return Graph(self.n * k, out, self.directed)

    def key(self) -> tuple:
        """Hashable labelled identity of the graph."""
        return (self.n, self.directed, self.out)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        return f"<{kind} on {self.n} vertices, {len(self.edges())} edges>"

    # -- exchange formats ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n_vertices": self.n, "directed": self.directed, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, data) -> Graph:
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            n = int(data["n_vertices"])
            directed = bool(data["directed"])
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed graph JSON: {e}") from None
        if any(len(e) != 2 for e in edges):
            raise ValueError("edges must be pairs")
        return cls.from_edges(n, edges, directed)

    def to_dot(self, labels: Sequence[str] | None = None, name: str = "G") -> str:
        arrow = "->" if self.directed else "--"
        lines = [f"{'digraph' if self.directed else 'graph'} {name} {{"]
        for v in range(self.n):
            if labels is not None:
                lines.append(f'  {v} [label="{labels[v]}"];')
        for u, v in self.edges():
            lines.append(f"  {u} {arrow} {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def cycle_graph(n: int, directed: bool = False) -> Graph:
    return Graph(n, [[(v + 1) % n] if directed else [(v + 1) % n, (v - 1) % n] for v in range(n)], directed)


def complete_graph(n: int) -> Graph:
    return Graph(n, [[w for w in range(n) if w != v] for v in range(n)], directed=False)


def complete_bipartite(a: int, b: int) -> Graph:
    left, right = range(a), range(a, a + b)
    out = [list(right) for _ in left] + [list(left) for _ in right]
    return Graph(a + b, out, directed=False)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph(n, [[v ^ (1 << i) for i in range(d)] for v in range(n)], directed=False)
