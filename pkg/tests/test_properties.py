"""Structural properties of resolving sets and partitions on random connected graphs."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from coronapd.graphs import Graph
from coronapd.resolvability import (
    Partition,
    are_twins,
    is_resolving_partition,
    is_resolving_set,
    twin_classes,
)
from coronapd.solvers import metric_dimension, partition_dimension

SETTINGS = settings(max_examples=150, derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def connected_graphs(draw, min_order=2, max_order=10):
    n = draw(st.integers(min_order, max_order))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    return Graph.from_edges(n, edges | set(extra))


@st.composite
def graph_and_labels(draw):
    g = draw(connected_graphs())
    labels = draw(st.lists(st.integers(0, g.order - 1), min_size=g.order, max_size=g.order))
    return g, Partition.from_labels(labels)


@SETTINGS
@given(connected_graphs(), st.data())
def test_supersets_of_resolving_sets_resolve(g, data):
    s = list(metric_dimension(g).witness)
    extra = data.draw(st.sets(st.integers(0, g.order - 1)))
    assert is_resolving_set(g.distances, sorted(set(s) | extra))


@SETTINGS
@given(connected_graphs(), st.data())
def test_random_resolving_sets_stay_resolving_when_grown(g, data):
    s = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1))
    x = data.draw(st.integers(0, g.order - 1))
    if is_resolving_set(g.distances, sorted(s)):
        assert is_resolving_set(g.distances, sorted(s | {x}))


@SETTINGS
@given(graph_and_labels(), st.data())
def test_refinement_preserves_resolving(gp, data):
    g, p = gp
    if not is_resolving_partition(g.distances, p):
        p = partition_dimension(g).witness
    k = data.draw(st.integers(0, len(p) - 1))
    block = list(p.blocks[k])
    if len(block) < 2:
        return
    cut = data.draw(st.sets(st.sampled_from(block), min_size=1, max_size=len(block) - 1))
    rest = [v for v in block if v not in cut]
    refined = Partition.of(list(p.blocks[:k]) + [sorted(cut), rest] + list(p.blocks[k + 1:]))
    assert is_resolving_partition(g.distances, refined)


@SETTINGS
@given(connected_graphs(), st.data())
def test_twins_are_separated(g, data):
    dm = g.distances
    p = partition_dimension(g).witness
    s = set(metric_dimension(g).witness)
    where = {v: k for k, b in enumerate(p.blocks) for v in b}
    for cls in twin_classes(dm):
        for i, u in enumerate(cls):
            for v in cls[i + 1:]:
                assert are_twins(dm, u, v)
                assert where[u] != where[v]
                assert s & {u, v}
    # also for arbitrary resolving sets drawn at random
    r = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1))
    if is_resolving_set(dm, sorted(r)):
        for cls in twin_classes(dm):
            assert len(set(cls) - r) <= 1


@SETTINGS
@given(graph_and_labels(), st.randoms(use_true_random=False))
def test_block_reorder_invariance(gp, rnd):
    g, p = gp
    blocks = list(p.blocks)
    rnd.shuffle(blocks)
    assert is_resolving_partition(g.distances, Partition.of(blocks)) == is_resolving_partition(g.distances, p)


@SETTINGS
@given(connected_graphs())
def test_witnesses_are_valid_and_pd_at_most_dim_plus_one(g):
    dim, pd = metric_dimension(g), partition_dimension(g)
    assert is_resolving_set(g.distances, dim.witness) and len(dim.witness) == dim.value
    assert is_resolving_partition(g.distances, pd.witness) and len(pd.witness) == pd.value
    assert pd.value <= dim.value + 1
