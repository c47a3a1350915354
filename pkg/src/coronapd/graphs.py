"""Simple undirected graphs, named families, BFS distances and component features."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

# Distance between vertices in different components. Large enough that
# min() over a block treats it as infinity, and equal to itself.
UNREACHABLE = 2**31 - 1

FAMILIES = ("path", "cycle", "complete", "star", "empty")


class GraphError(ValueError):
    """Malformed graph, family spec or edge-list input."""


@dataclass(frozen=True)
class Graph:
    order: int
    edges: frozenset
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise GraphError(f"graph order must be positive, got {self.order}")
        for u, v in self.edges:
            if not (0 <= u < v < self.order):
                raise GraphError(f"bad edge ({u}, {v}) for order {self.order}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> "Graph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            normalized.add((min(u, v), max(u, v)))
        return cls(order, frozenset(normalized), name)

    @property
    def label(self) -> str:
        return self.name if self.name is not None else f"graph(n={self.order},m={len(self.edges)})"

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.order)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def distances(self) -> np.ndarray:
        dm = all_pairs_distances(self)
        dm.flags.writeable = False
        return dm

    @cached_property
    def distance_rows(self) -> tuple[tuple[int, ...], ...]:
        """Distance matrix as nested tuples, for tight Python loops."""
        return tuple(tuple(int(x) for x in row) for row in self.distances)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        comps = []
        for s in range(self.order):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on `vertices`, relabeled 0..k-1 in the given order."""
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def all_pairs_distances(g: Graph) -> np.ndarray:
    """BFS hop distances; UNREACHABLE between components."""
    n = g.order
    dm = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for s in range(n):
        dm[s, s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dm[s, u]
            for w in g.adjacency[u]:
                if dm[s, w] == UNREACHABLE:
                    dm[s, w] = du + 1
                    queue.append(w)
    return dm


def diameter(g: Graph) -> int:
    if not g.is_connected():
        raise GraphError(f"diameter undefined: {g.label} is disconnected")
    return int(g.distances.max())


def eccentricity(g: Graph, v: int) -> int:
    return int(g.distances[v].max())


def is_complete(g: Graph) -> bool:
    n = g.order
    return len(g.edges) == n * (n - 1) // 2


def is_path_graph(g: Graph) -> bool:
    return g.is_connected() and len(g.edges) == g.order - 1 and max(g.degrees(), default=0) <= 2


def is_empty_graph(g: Graph) -> bool:
    return not g.edges


def star_leaf_count(g: Graph) -> int | None:
    """n if g is isomorphic to K_{1,n} with n >= 2, else None."""
    n = g.order
    if n < 3 or not g.is_connected() or len(g.edges) != n - 1:
        return None
    degs = sorted(g.degrees())
    if degs[-1] == n - 1:
        return n - 1
    return None


def star_hub(g: Graph) -> int:
    if star_leaf_count(g) is None:
        raise GraphError(f"{g.label} is not a star K_1,n with n >= 2")
    return max(range(g.order), key=g.degree)


class HFeatures(NamedTuple):
    alpha_ge2: int
    beta: int
    c: int
    diameter: int | None
    component_count: int


def h_features(h: Graph) -> HFeatures:
    alpha = beta = c = 0
    for comp in h.components:
        k = len(comp)
        if k == 1:
            beta += 1
        else:
            alpha += 1
        inner = sum(1 for u, v in h.edges if u in comp)
        if inner == k * (k - 1) // 2:
            c = max(c, k)
    diam = diameter(h) if h.is_connected() else None
    return HFeatures(alpha, beta, c, diam, len(h.components))


def build_family(family: str, n: int) -> Graph:
    name = f"{family}:{n}"
    if family == "path":
        _check_min(name, n, 1)
        edges = [(i, i + 1) for i in range(n - 1)]
        return Graph.from_edges(n, edges, name)
    if family == "cycle":
        _check_min(name, n, 3)
        edges = [(i, (i + 1) % n) for i in range(n)]
        return Graph.from_edges(n, edges, name)
    if family == "complete":
        _check_min(name, n, 1)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return Graph.from_edges(n, edges, name)
    if family == "star":
        _check_min(name, n, 1)
        return Graph.from_edges(n + 1, [(0, j) for j in range(1, n + 1)], name)
    if family == "empty":
        _check_min(name, n, 1)
        return Graph.from_edges(n, [], name)
    raise GraphError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _check_min(name: str, n: int, least: int) -> None:
    if n < least:
        raise GraphError(f"{name}: parameter must be at least {least}")


def parse_family(text: str) -> Graph:
    """Parse 'family:n', e.g. 'star:4'."""
    family, sep, param = text.strip().partition(":")
    if not sep:
        raise GraphError(f"malformed family spec {text!r}; expected family:n")
    try:
        n = int(param)
    except ValueError:
        raise GraphError(f"malformed family spec {text!r}; parameter is not an integer") from None
    return build_family(family.strip(), n)


def read_edgelist(text: str, name: str | None = None) -> Graph:
    """Parse the edge-list format: a line with n, then 'u v' lines (u < v); '#' starts a comment line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("edge list is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"first line must be the vertex count, got {lines[0]!r}") from None
    if n < 1:
        raise GraphError("vertex count must be positive")
    seen = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {ln!r}") from None
        if not 0 <= u < v < n:
            raise GraphError(f"line {lineno}: need 0 <= u < v < {n}, got {u} {v}")
        if (u, v) in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
    return Graph(n, frozenset(seen), name)


def load_edgelist(path: str | Path) -> Graph:
    path = Path(path)
    return read_edgelist(path.read_text(), name=path.name)


def format_edgelist(g: Graph, header: Iterable[str] = ()) -> str:
    out = [f"# {line}" for line in header]
    out.append(str(g.order))
    out.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"
