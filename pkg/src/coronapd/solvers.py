"""Exact metric dimension and partition dimension.

Two routes per invariant: a naive oracle that enumerates candidates in a fixed
order, and a pruned search meant to agree with it on value.

dim: the optimized solver covers the set of unordered vertex pairs by
"distinguishing" vertices (w distinguishes {u, v} iff d(u,w) != d(v,w)) with
branch and bound over the pair with the fewest remaining candidates.

pd: the optimized solver walks restricted growth strings over a vertex order.
A vertex's representation is *settled* once every coordinate is at most its
distance to the nearest still-unassigned vertex. Two same-block vertices whose
partial vectors agree are cut as soon as no unassigned vertex can still pull
one of them below the shared largest coordinate (see _BlockSearch). Twins are
forced into different blocks, and runs of twins that are consecutive in the
vertex order get increasing labels.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .graphs import Graph, diameter
from .resolvability import (
    Partition,
    is_resolving_partition,
    is_resolving_set,
    twin_classes,
)

INF = float("inf")
BUDGET_ENV = "CORONAPD_BUDGET"
DEFAULT_BUDGET = 10**9


class SolverError(ValueError):
    """Input outside the solvers' domain (disconnected or order-1 graph)."""


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"budget exceeded: more than {budget} search nodes")
        self.budget = budget


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: tuple | Partition
    nodes_explored: int
    used_oracle: bool


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _check_input(g: Graph) -> None:
    if g.order < 2:
        raise SolverError(f"{g.label}: solvers need order >= 2")
    if not g.is_connected():
        raise SolverError(f"{g.label} is disconnected")


# ---------------------------------------------------------------- lower bounds

def dim_lower_bound(g: Graph) -> int:
    """A resolving set misses at most one vertex of each twin class."""
    total = sum(len(c) - 1 for c in twin_classes(g.distances))
    return max(total, 1) if g.order >= 2 else total


def pd_lower_bound(g: Graph) -> int:
    """max(largest twin class, least t with t * D^(t-1) >= n, 2).

    Each block vector has one zero (its own block) and every other coordinate in
    1..D, so t blocks admit at most t * D^(t-1) distinct vectors.
    """
    n = g.order
    largest = max(len(c) for c in twin_classes(g.distances))
    if n < 2:
        return largest
    d = diameter(g)
    t = 1
    while t * d ** (t - 1) < n:
        t += 1
    return max(largest, t, 2)


# ---------------------------------------------------------------- metric dimension

def metric_dimension_oracle(g: Graph) -> SolveResult:
    _check_input(g)
    n = g.order
    rows = g.distance_rows
    nodes = 0
    for k in range(1, n):
        for s in combinations(range(n), k):
            nodes += 1
            if len({tuple(r[w] for w in s) for r in rows}) == n:
                return SolveResult(k, s, nodes, True)
    raise AssertionError("n-1 vertices always resolve a connected graph")


def metric_dimension(g: Graph, budget: int | None = None) -> SolveResult:
    _check_input(g)
    budget = default_budget() if budget is None else budget
    n = g.order
    rows = g.distance_rows

    pair_index = {}
    for u in range(n):
        for v in range(u + 1, n):
            pair_index[(u, v)] = len(pair_index)
    separates = [0] * n  # vertex -> bitmask of pairs it distinguishes
    separators = [0] * len(pair_index)  # pair -> bitmask of vertices distinguishing it
    for (u, v), p in pair_index.items():
        ru, rv = rows[u], rows[v]
        for w in range(n):
            if ru[w] != rv[w]:
                separates[w] |= 1 << p
                separators[p] |= 1 << w
    everything = (1 << len(pair_index)) - 1

    # Swapping two twins is an automorphism, so we may fix which member of
    # each twin class is left out.
    forced = [v for c in twin_classes(g.distances) for v in c[:-1]]
    uncovered0 = everything
    for v in forced:
        uncovered0 &= ~separates[v]
    forced_mask = sum(1 << v for v in forced)

    nodes = 0

    def search(uncovered, chosen, excluded, left):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(budget)
        if not uncovered:
            return chosen
        if left == 0:
            return None
        best, best_count = 0, n + 1
        rest = uncovered
        while rest:
            low = rest & -rest
            rest ^= low
            cands = separators[low.bit_length() - 1] & ~excluded
            c = cands.bit_count()
            if c < best_count:
                best, best_count = cands, c
                if c <= 1:
                    break
        if best_count == 0:
            return None
        need = uncovered.bit_count()
        cap = 0
        free = ~excluded & ((1 << n) - 1)
        while free:
            low = free & -free
            free ^= low
            cap = max(cap, (separates[low.bit_length() - 1] & uncovered).bit_count())
        if cap * left < need:
            return None
        while best:
            low = best & -best
            best ^= low
            w = low.bit_length() - 1
            found = search(uncovered & ~separates[w], chosen + [w], excluded, left - 1)
            if found is not None:
                return found
            excluded |= low
        return None

    start = max(dim_lower_bound(g), len(forced))
    for k in range(start, n):
        found = search(uncovered0, list(forced), forced_mask, k - len(forced))
        if found is not None:
            witness = tuple(sorted(found))
            assert is_resolving_set(g.distances, witness)
            return SolveResult(k, witness, nodes, False)
    raise AssertionError("n-1 vertices always resolve a connected graph")


# ---------------------------------------------------------------- set partitions

def restricted_growth_strings(n: int, t: int, apart: Sequence[Sequence[int]] | None = None) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n with exactly t distinct values, lexicographic.

    `apart[i]` lists earlier positions whose value must differ from position i.
    """
    if n == 0 or t < 1 or t > n:
        return
    a = [0] * n

    def rec(i, used):
        if i == n:
            if used == t:
                yield tuple(a)
            return
        if n - i < t - used:
            return
        banned = {a[j] for j in apart[i]} if apart else ()
        for k in range(min(used + 1, t)):
            if k in banned:
                continue
            a[i] = k
            yield from rec(i + 1, used + 1 if k == used else used)

    yield from rec(1, 1)


def _batches(it: Iterator[tuple[int, ...]], size: int) -> Iterator[np.ndarray]:
    buf = []
    for item in it:
        buf.append(item)
        if len(buf) == size:
            yield np.array(buf, dtype=np.int64)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.int64)


def _resolving_mask(dm: np.ndarray, labels: np.ndarray, t: int) -> np.ndarray:
    """Boolean per row of `labels`: is that labeling a resolving partition?"""
    big = np.iinfo(np.int64).max
    n = dm.shape[0]
    reps = np.empty(labels.shape + (t,), dtype=np.int64)
    for k in range(t):
        in_block = labels == k
        reps[:, :, k] = np.where(in_block[:, None, :], dm[None, :, :], big).min(axis=2)
    base = int(dm.max()) + 1
    if base ** t < 2**62:
        codes = (reps * (base ** np.arange(t, dtype=np.int64))).sum(axis=2)
        codes.sort(axis=1)
        return ~(codes[:, 1:] == codes[:, :-1]).any(axis=1)
    ok = np.empty(len(labels), dtype=bool)
    for r in range(len(labels)):
        ok[r] = len({tuple(v) for v in reps[r].tolist()}) == n
    return ok


def iter_resolving_partitions(g: Graph, t: int, apart=None, batch: int = 4096) -> Iterator[Partition]:
    """Every resolving partition of g with exactly t blocks, by plain enumeration."""
    dm = g.distances
    for labels in _batches(restricted_growth_strings(g.order, t, apart), batch):
        for r in np.flatnonzero(_resolving_mask(dm, labels, t)):
            yield Partition.from_labels(labels[r].tolist())


def count_partitions_checked(g: Graph, t: int, apart=None, batch: int = 4096) -> tuple[int, int]:
    """(partitions enumerated, resolving ones) over all t-block partitions."""
    dm = g.distances
    total = good = 0
    for labels in _batches(restricted_growth_strings(g.order, t, apart), batch):
        total += len(labels)
        good += int(_resolving_mask(dm, labels, t).sum())
    return total, good


def twin_apart(g: Graph) -> list[list[int]]:
    """Per vertex, the earlier members of its twin class."""
    apart = [[] for _ in range(g.order)]
    for c in twin_classes(g.distances):
        for i, v in enumerate(c):
            apart[v] = list(c[:i])
    return apart


def partition_dimension_oracle(g: Graph) -> SolveResult:
    _check_input(g)
    n = g.order
    dm = g.distances
    nodes = 0
    for t in range(2, n + 1):
        for labels in _batches(restricted_growth_strings(n, t), 4096):
            ok = _resolving_mask(dm, labels, t)
            hits = np.flatnonzero(ok)
            if len(hits):
                nodes += int(hits[0]) + 1
                witness = Partition.from_labels(labels[hits[0]].tolist())
                return SolveResult(t, witness, nodes, True)
            nodes += len(labels)
    raise AssertionError("the all-singleton partition always resolves")


class _BlockSearch:
    """Depth-first search for a resolving partition with exactly t blocks.

    Two assigned vertices u, v in the same block with equal partial vectors
    are a dead pair when every unassigned vertex w that still separates them
    has min(d(u,w), d(v,w)) >= the largest coordinate: w cannot lower either
    vector below the common value, whatever block it joins.
    """

    def __init__(self, g: Graph, t: int, order: Sequence[int], budget: int):
        n = g.order
        self.n, self.t, self.budget = n, t, budget
        self.order = list(order)
        rows = g.distance_rows
        self.rows = rows
        # reach[u][v][p]: least min(d(u,w), d(v,w)) over w in order[p:] with d(u,w) != d(v,w)
        self.reach = [[None] * n for _ in range(n)]
        for u in range(n):
            for v in range(u, n):
                col = [INF] * (n + 1)
                ru, rv = rows[u], rows[v]
                for p in range(n - 1, -1, -1):
                    w = self.order[p]
                    col[p] = col[p + 1]
                    if ru[w] != rv[w]:
                        col[p] = min(col[p], ru[w], rv[w])
                self.reach[u][v] = self.reach[v][u] = col
        # remaining[u][p]: distance from u to the nearest of order[p:]
        self.remaining = []
        for u in range(n):
            col = [INF] * (n + 1)
            for p in range(n - 1, -1, -1):
                col[p] = min(col[p + 1], rows[u][self.order[p]])
            self.remaining.append(col)
        pos = {v: p for p, v in enumerate(self.order)}
        self.earlier_twins = [[] for _ in range(n)]
        twin_of = {}
        for c in twin_classes(g.distances):
            for u in c:
                self.earlier_twins[u] = [v for v in c if pos[v] < pos[u]]
                twin_of[u] = c
        # Twins adjacent in the order may be permuted freely; sorting their
        # labels keeps a valid growth string, so demand increasing labels.
        self.run_prev = [None] * n
        for p in range(1, n):
            u, w = self.order[p - 1], self.order[p]
            if u in twin_of[w]:
                self.run_prev[w] = u
        self.label = [-1] * n
        self.members = [[] for _ in range(t)]
        self.vec = [None] * n
        self.settled: dict[tuple, int] = {}
        self.nodes = 0

    def run(self, prefix: Sequence[int] = ()) -> list[int] | None:
        self.prefix = list(prefix)
        if self._dfs(0, 0, []):
            return list(self.label)
        return None

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """Block choices for the first `depth` vertices that survive pruning."""
        out = []
        self.prefix = []
        self._collect_depth = depth
        self._collected = out
        self._dfs(0, 0, [])
        self._collect_depth = None
        return out

    _collect_depth = None

    def _dead(self, p, open_vertices):
        """Settle what can be settled; return (dead?, still-open vertices, newly settled keys)."""
        reach, vec, settled = self.reach, self.vec, self.settled
        still_open = []
        added = []
        groups: dict[tuple, list[int]] = {}
        for u in open_vertices:
            key = tuple(vec[u])
            top = max(key)
            other = settled.get(key)
            if other is not None and reach[u][other][p] >= top:
                return True, still_open, added
            peers = groups.setdefault(key, [])
            for v in peers:
                if reach[u][v][p] >= top:
                    return True, still_open, added
            peers.append(u)
            # settled: no unassigned vertex is closer than the largest coordinate
            if self.remaining[u][p] >= top:
                settled[key] = u
                added.append(key)
            else:
                still_open.append(u)
        return False, still_open, added

    def _dfs(self, p, used, open_vertices):
        if self._collect_depth is not None and p == self._collect_depth:
            self._collected.append(tuple(self.label[v] for v in self.order[:p]))
            return False
        if p == self.n:
            return True
        n, t = self.n, self.t
        w = self.order[p]
        rw = self.rows[w]
        label, members, vec, settled = self.label, self.members, self.vec, self.settled
        banned = {label[v] for v in self.earlier_twins[w]}
        prev = self.run_prev[w]
        choices = range(0 if prev is None else label[prev] + 1, min(used + 1, t))
        if p < len(self.prefix):
            choices = (self.prefix[p],)
        for k in choices:
            grown = used + 1 if k == used else used
            if n - p - 1 < t - grown or k in banned:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.budget)
            label[w] = k
            saved = []
            for u in open_vertices:
                d = rw[u]
                vu = vec[u]
                if d < vu[k]:
                    saved.append((u, vu[k]))
                    vu[k] = d
            vw = [min([rw[x] for x in members[j]], default=INF) for j in range(t)]
            vw[k] = 0
            vec[w] = vw
            members[k].append(w)

            dead, still_open, added = self._dead(p + 1, open_vertices + [w])
            if not dead and self._dfs(p + 1, grown, still_open):
                return True
            for key in added:
                del settled[key]
            members[k].pop()
            for u, old in saved:
                vec[u][k] = old
            vec[w] = None
            label[w] = -1
        return False


def _run_prefix(args):
    g, t, order, budget, prefix = args
    search = _BlockSearch(g, t, order, budget)
    return search.run(prefix), search.nodes


def find_resolving_partition(
    g: Graph,
    t: int,
    *,
    budget: int | None = None,
    order: Sequence[int] | None = None,
    workers: int = 1,
) -> tuple[Partition | None, int]:
    """A resolving partition with exactly t blocks, or None if none exists. Also returns nodes explored."""
    budget = default_budget() if budget is None else budget
    order = list(range(g.order)) if order is None else list(order)
    if sorted(order) != list(range(g.order)):
        raise SolverError("search order must be a permutation of the vertices")
    if t > g.order:
        return None, 0
    if workers <= 1:
        search = _BlockSearch(g, t, order, budget)
        labels = search.run()
        nodes = search.nodes
    else:
        labels, nodes = _parallel_search(g, t, order, budget, workers)
    if labels is None:
        return None, nodes
    witness = Partition.from_labels(labels).canonical()
    assert is_resolving_partition(g.distances, witness)
    return witness, nodes


def _parallel_search(g, t, order, budget, workers):
    splitter = _BlockSearch(g, t, order, budget)
    depth = 1
    prefixes = splitter.prefixes(depth)
    while len(prefixes) < 4 * workers and depth < g.order:
        depth += 1
        prefixes = _BlockSearch(g, t, order, budget).prefixes(depth)
    nodes = 0
    # Results are consumed in prefix order so the witness matches the serial one.
    with ProcessPoolExecutor(max_workers=workers) as pool:
        jobs = [(g, t, order, budget, pre) for pre in prefixes]
        for labels, count in pool.map(_run_prefix, jobs):
            nodes += count
            if nodes > budget:
                raise BudgetExceeded(budget)
            if labels is not None:
                pool.shutdown(wait=False, cancel_futures=True)
                return labels, nodes
    return None, nodes


def partition_dimension(
    g: Graph,
    budget: int | None = None,
    *,
    order: Sequence[int] | None = None,
    workers: int = 1,
) -> SolveResult:
    _check_input(g)
    budget = default_budget() if budget is None else budget
    nodes = 0
    for t in range(pd_lower_bound(g), g.order + 1):
        witness, spent = find_resolving_partition(g, t, budget=budget - nodes, order=order, workers=workers)
        nodes += spent
        if witness is not None:
            return SolveResult(t, witness, nodes, False)
    raise AssertionError("the all-singleton partition always resolves")
