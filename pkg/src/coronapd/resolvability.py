"""Metric and partition representations and the resolvingness checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import UNREACHABLE

Pair = tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """Ordered list of disjoint, nonempty blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for block in self.blocks:
            if not block:
                raise ValueError("partition has an empty block")
            for v in block:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one block")
                seen.add(v)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(sorted(b)) for b in blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(v)
        return cls.of(groups[k] for k in sorted(groups))

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @property
    def size(self) -> int:
        return len(self.blocks)

    def vertices(self) -> set[int]:
        return {v for b in self.blocks for v in b}

    def covers(self, n: int) -> bool:
        return self.vertices() == set(range(n))

    def labels(self, n: int) -> list[int]:
        out = [-1] * n
        for k, block in enumerate(self.blocks):
            for v in block:
                out[v] = k
        if -1 in out:
            raise ValueError(f"partition does not cover vertex {out.index(-1)}")
        return out

    def canonical(self) -> "Partition":
        """Blocks sorted internally and ordered by their least element."""
        return Partition(tuple(sorted(tuple(sorted(b)) for b in self.blocks)))

    def __str__(self):
        return format_partition(self)


def format_partition(p: Partition) -> str:
    return "|".join(",".join(str(v) for v in block) for block in p.blocks)


def parse_partition(text: str) -> Partition:
    """Parse '0,2|1|3,4' (whitespace ignored)."""
    text = "".join(text.split())
    if not text:
        raise ValueError("empty partition text")
    blocks = []
    for chunk in text.split("|"):
        if not chunk:
            raise ValueError(f"empty block in partition {text!r}")
        blocks.append([int(x) for x in chunk.split(",")])
    return Partition.of(blocks)


def format_vertex_set(s: Sequence[int]) -> str:
    return ",".join(str(v) for v in s)


def parse_vertex_set(text: str) -> tuple[int, ...]:
    text = "".join(text.split())
    if not text:
        raise ValueError("empty vertex set")
    members = tuple(int(x) for x in text.split(","))
    if len(set(members)) != len(members):
        raise ValueError(f"duplicate vertex in {text!r}")
    return members


def metric_representation(dm: np.ndarray, s: Sequence[int], v: int) -> tuple[int, ...]:
    if not len(s):
        raise ValueError("metric representation needs a nonempty vertex set")
    return tuple(int(dm[v, w]) for w in s)


def partition_representation(dm: np.ndarray, p: Partition, v: int) -> tuple[int, ...]:
    return tuple(int(dm[v, list(block)].min()) for block in p.blocks)


def _least_conflict(vectors: Iterable[tuple]) -> Pair | None:
    first: dict[tuple, int] = {}
    best = None
    for v, vec in enumerate(vectors):
        u = first.setdefault(vec, v)
        if u != v and (best is None or (u, v) < best):
            best = (u, v)
    return best


def resolving_set_conflict(dm: np.ndarray, s: Sequence[int]) -> Pair | None:
    """Lexicographically least pair with equal metric representations, or None."""
    if not len(s):
        raise ValueError("resolving set must be nonempty")
    cols = dm[:, list(s)]
    return _least_conflict(tuple(row) for row in cols.tolist())


def is_resolving_set(dm: np.ndarray, s: Sequence[int]) -> bool:
    return resolving_set_conflict(dm, s) is None


def block_distances(dm: np.ndarray, p: Partition) -> np.ndarray:
    """n x |p| matrix whose row v is r(v | p)."""
    return np.stack([dm[:, list(block)].min(axis=1) for block in p.blocks], axis=1)


def resolving_partition_conflict(dm: np.ndarray, p: Partition) -> Pair | None:
    n = dm.shape[0]
    if not p.covers(n):
        raise ValueError("partition does not cover the vertex set exactly")
    # Vectors of vertices in different blocks differ at the zero coordinate,
    # so only same-block pairs can collide.
    reps = block_distances(dm, p).tolist()
    return _least_conflict(tuple(r) for r in reps)


def is_resolving_partition(dm: np.ndarray, p: Partition) -> bool:
    return resolving_partition_conflict(dm, p) is None


def twin_classes(dm: np.ndarray) -> list[tuple[int, ...]]:
    """Maximal classes of vertices u, v with d(u,x) = d(v,x) for every x outside {u, v}."""
    n = dm.shape[0]
    rows = dm.tolist()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in range(u + 1, n):
            ru, rv = rows[u], rows[v]
            if all(ru[x] == rv[x] for x in range(n) if x != u and x != v):
                parent[find(v)] = find(u)
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in classes.values())


def are_twins(dm: np.ndarray, u: int, v: int) -> bool:
    n = dm.shape[0]
    return all(dm[u, x] == dm[v, x] for x in range(n) if x != u and x != v)


def induce_copy_partition(cg, p: Partition, i: int) -> Partition:
    """Nonempty traces of p's blocks on copy i, relabeled to H's vertex ids."""
    copy = cg.copies[i]
    offset = copy[0]
    members = set(copy)
    traces = []
    for block in p.blocks:
        trace = [v - offset for v in block if v in members]
        if trace:
            traces.append(trace)
    return Partition.of(traces)


def has_unreachable(dm: np.ndarray) -> bool:
    return bool((dm == UNREACHABLE).any())
