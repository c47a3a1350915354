"""Corona product G ⊙ H with an explicit center/copy labeling.

Vertex numbering is fixed: the centers v_0..v_{n1-1} take ids 0..n1-1 (center
i is vertex i of G), and copy i of H occupies the block n1 + i*n2 ..
n1 + (i+1)*n2 - 1 in H's own vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

from .graphs import Graph, GraphError, load_edgelist, parse_family


class Location(NamedTuple):
    kind: str  # "center" or "copy"
    copy: int
    index: int | None = None

    def __str__(self):
        if self.kind == "center":
            return f"CENTER({self.copy})"
        return f"COPY({self.copy}, {self.index})"


@dataclass(frozen=True)
class CoronaGraph:
    graph: Graph
    g: Graph
    h: Graph

    @property
    def n1(self) -> int:
        return self.g.order

    @property
    def n2(self) -> int:
        return self.h.order

    @cached_property
    def centers(self) -> tuple[int, ...]:
        return tuple(range(self.n1))

    @cached_property
    def copies(self) -> tuple[tuple[int, ...], ...]:
        n1, n2 = self.n1, self.n2
        return tuple(tuple(range(n1 + i * n2, n1 + (i + 1) * n2)) for i in range(n1))

    def copy_vertex(self, i: int, index: int) -> int:
        return self.n1 + i * self.n2 + index

    def search_order(self) -> list[int]:
        """Each center followed by its own copy; keeps the pd search local."""
        return [v for i in range(self.n1) for v in (self.centers[i],) + self.copies[i]]

    def copy_of(self, v: int) -> Location:
        if not 0 <= v < self.graph.order:
            raise IndexError(f"vertex {v} out of range for corona of order {self.graph.order}")
        if v < self.n1:
            return Location("center", v)
        i, index = divmod(v - self.n1, self.n2)
        return Location("copy", i, index)


def corona(g: Graph, h: Graph) -> CoronaGraph:
    if not g.is_connected():
        raise GraphError(f"corona needs a connected first factor; {g.label} is disconnected")
    n1, n2 = g.order, h.order
    edges = list(g.edges)
    for i in range(n1):
        base = n1 + i * n2
        edges.extend((base + u, base + v) for u, v in h.edges)
        edges.extend((i, base + j) for j in range(n2))
    name = None
    if g.name is not None and h.name is not None:
        name = f"corona({g.name},{h.name})"
    return CoronaGraph(Graph.from_edges(n1 * (1 + n2), edges, name), g, h)


def parse_spec(text: str) -> Graph:
    """Graph from a family spec ('path:5'), a corona spec ('corona(path:6,complete:2)') or an edge-list file."""
    return parse_spec_full(text)[0]


def parse_spec_full(text: str) -> tuple[Graph, CoronaGraph | None]:
    spec = "".join(text.split())
    if spec.startswith("corona(") and spec.endswith(")"):
        inner = spec[len("corona("):-1]
        if "corona(" in inner:
            raise GraphError("nested corona specs are not supported")
        left, sep, right = inner.partition(",")
        if not sep or not left or not right:
            raise GraphError(f"malformed corona spec {text!r}; expected corona(SPEC,SPEC)")
        cg = corona(_parse_leaf(left), _parse_leaf(right))
        return cg.graph, cg
    return _parse_leaf(spec), None


def _parse_leaf(spec: str) -> Graph:
    if ":" not in spec and Path(spec).is_file():
        return load_edgelist(spec)
    return parse_family(spec)
