"""Explicit resolving partitions of corona graphs.

Every builder checks its own output with the partition checker and raises
ConstructionError instead of returning a non-resolving partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .corona import CoronaGraph, corona
from .graphs import build_family, diameter, star_hub, star_leaf_count
from .resolvability import (
    Partition,
    is_resolving_partition,
    is_resolving_set,
    resolving_partition_conflict,
)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionOutput:
    partition: Partition  # blocks in construction order
    construction: str
    params: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.partition)

    @property
    def provenance(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.construction}({args})"


def _verified(cg: CoronaGraph, blocks, name: str, params: dict) -> ConstructionOutput:
    p = Partition.of(blocks)
    if not p.covers(cg.graph.order):
        raise ConstructionError(f"{name}: blocks do not cover the corona")
    conflict = resolving_partition_conflict(cg.graph.distances, p)
    if conflict is not None:
        raise ConstructionError(f"{name}: output does not resolve; vertices {conflict} collide")
    return ConstructionOutput(p, name, params)


def construct_from_resolving_set(cg: CoronaGraph, s: Sequence[int], pg: Partition) -> ConstructionOutput:
    """Partition {A, B_1..B_t, W_1..W_k} built from a resolving set that avoids the centers.

    S_i = s ∩ V_i is padded with the least unused ids of V_i up to t = max |S_i|;
    B_j takes the j-th element of every padded S_i, A collects the rest of the
    copies and the W blocks are pg lifted onto the centers.
    """
    dm = cg.graph.distances
    chosen = set(s)
    if chosen & set(cg.centers):
        raise ConstructionError("resolving set must avoid the centers")
    if not pg.covers(cg.n1) or not is_resolving_partition(cg.g.distances, pg):
        raise ConstructionError("pg must be a resolving partition of G")
    if not is_resolving_set(dm, sorted(chosen)):
        raise ConstructionError("s is not a resolving set of the corona")
    per_copy = []
    for i, copy in enumerate(cg.copies):
        picked = [v for v in copy if v in chosen]
        if not picked:
            raise ConstructionError(f"resolving set misses copy {i}")
        per_copy.append(picked)
    t = max(len(x) for x in per_copy)
    padded = []
    for copy, picked in zip(cg.copies, per_copy):
        extra = [v for v in copy if v not in picked][: t - len(picked)]
        padded.append(picked + extra)
    used = {v for row in padded for v in row}
    a_block = [v for copy in cg.copies for v in copy if v not in used]
    b_blocks = [[row[j] for row in padded] for j in range(t)]
    blocks = ([a_block] if a_block else []) + b_blocks + [list(w) for w in pg.blocks]
    splits = [len(x) for x in per_copy]
    return _verified(cg, blocks, "thm2", {"t": t, "splits": splits, "pg": str(pg)})


def construct_sum_partition(cg: CoronaGraph, pg: Partition, ph: Partition) -> ConstructionOutput:
    """Partition {A_1..A_k, B_1..B_t}: pg on the centers, ph repeated in every copy."""
    h = cg.h
    if not h.is_connected():
        raise ConstructionError("H must be connected")
    if diameter(h) > 2:
        raise ConstructionError(f"H has diameter {diameter(h)} > 2")
    if not pg.covers(cg.n1) or not is_resolving_partition(cg.g.distances, pg):
        raise ConstructionError("pg must be a resolving partition of G")
    if not ph.covers(cg.n2) or not is_resolving_partition(h.distances, ph):
        raise ConstructionError("ph must be a resolving partition of H")
    a_blocks = [list(block) for block in pg.blocks]
    b_blocks = [[cg.copy_vertex(i, x) for i in range(cg.n1) for x in block] for block in ph.blocks]
    return _verified(cg, a_blocks + b_blocks, "sum", {"pg": str(pg), "ph": str(ph)})


def star_guard(n1: int, n: int) -> bool:
    return n >= 2 * n1 >= 4 or (n1 == 1 and n > 2)


def construct_star_partition(cg: CoronaGraph) -> ConstructionOutput:
    """n blocks for G ⊙ K_{1,n}.

    Block 2i-1 (1-based) holds hub a_i, block 2i holds center v_i, and block l
    holds leaf l of every copy.
    """
    n = star_leaf_count(cg.h)
    if n is None:
        raise ConstructionError(f"{cg.h.label} is not a star K_1,n")
    n1 = cg.n1
    if not star_guard(n1, n):
        raise ConstructionError(f"need n >= 2*n1 >= 4 or n > 2*n1 = 2; got n={n}, n1={n1}")
    hub = star_hub(cg.h)
    leaves = [x for x in range(cg.n2) if x != hub]
    blocks = [[cg.copy_vertex(i, leaves[l]) for i in range(n1)] for l in range(n)]
    for i in range(n1):
        blocks[2 * i].append(cg.copy_vertex(i, hub))
        blocks[2 * i + 1].append(cg.centers[i])
    return _verified(cg, blocks, "star", {"n1": n1, "n": n})


def construct_path_empty_partition(n1: int, n2: int) -> ConstructionOutput:
    """n2 + 1 blocks for P_{n1} ⊙ N_{n2}: {v_1, u_11}, {v_i, u_i1 : i >= 2}, then one block per remaining leaf index."""
    if not n1 >= n2 >= 2:
        raise ConstructionError(f"need n1 >= n2 >= 2; got n1={n1}, n2={n2}")
    cg = corona(build_family("path", n1), build_family("empty", n2))
    first = [cg.centers[0], cg.copy_vertex(0, 0)]
    second = [v for i in range(1, n1) for v in (cg.centers[i], cg.copy_vertex(i, 0))]
    rest = [[cg.copy_vertex(i, j) for i in range(n1)] for j in range(1, n2)]
    return _verified(cg, [first, second] + rest, "path-empty", {"n1": n1, "n2": n2})
