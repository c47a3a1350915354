import math

import pytest

from coronapd.corona import corona, parse_spec
from coronapd.graphs import Graph, parse_family
from coronapd.resolvability import Partition, is_resolving_partition, is_resolving_set
from coronapd.solvers import (
    BudgetExceeded,
    SolverError,
    count_partitions_checked,
    dim_lower_bound,
    find_resolving_partition,
    iter_resolving_partitions,
    metric_dimension,
    metric_dimension_oracle,
    partition_dimension,
    partition_dimension_oracle,
    pd_lower_bound,
    restricted_growth_strings,
    twin_apart,
)

from conftest import family_graphs, random_suite


def stirling2(n, k):
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


@pytest.mark.parametrize(
    "spec,value",
    [("path:5", 1), ("path:8", 1), ("cycle:4", 2), ("complete:4", 3), ("star:5", 4), ("corona(path:3,complete:3)", 6)],
)
def test_metric_dimension_values(spec, value):
    g = parse_spec(spec)
    res = metric_dimension(g)
    assert res.value == value and len(res.witness) == value
    assert is_resolving_set(g.distances, res.witness)
    assert not res.used_oracle


@pytest.mark.parametrize("spec,value", [("path:5", 1), ("cycle:4", 2), ("complete:4", 3)])
def test_metric_dimension_oracle_values(spec, value):
    res = metric_dimension_oracle(parse_spec(spec))
    assert res.value == value and res.used_oracle


def test_oracle_witness_is_lexicographically_first():
    assert metric_dimension_oracle(parse_spec("cycle:4")).witness == (0, 1)
    assert metric_dimension_oracle(parse_spec("path:4")).witness == (0,)


@pytest.mark.parametrize(
    "spec,value",
    [("path:4", 2), ("complete:4", 4), ("star:3", 3), ("cycle:5", 3), ("star:6", 6), ("corona(path:4,empty:2)", 3)],
)
def test_partition_dimension_values(spec, value):
    g = parse_spec(spec)
    res = partition_dimension(g)
    assert res.value == value and len(res.witness) == value
    assert is_resolving_partition(g.distances, res.witness)


@pytest.mark.parametrize("spec,value", [("path:4", 2), ("complete:4", 4), ("star:3", 3), ("cycle:5", 3)])
def test_partition_dimension_oracle_values(spec, value):
    res = partition_dimension_oracle(parse_spec(spec))
    assert res.value == value and res.used_oracle


def test_oracle_pd_witness_for_path():
    assert partition_dimension_oracle(parse_spec("path:4")).witness == Partition.of([[0, 1, 2], [3]])


@pytest.mark.parametrize("spec,value", [("star:4", 4), ("path:9", 2), ("complete:5", 5), ("cycle:3", 3)])
def test_pd_lower_bound(spec, value):
    assert pd_lower_bound(parse_spec(spec)) == value


@pytest.mark.parametrize("spec,value", [("star:4", 3), ("path:6", 1), ("complete:4", 3)])
def test_dim_lower_bound(spec, value):
    assert dim_lower_bound(parse_spec(spec)) == value


@pytest.mark.parametrize("spec", ["path:1", "empty:3"])
def test_rejects_trivial_and_disconnected(spec):
    g = parse_spec(spec)
    for fn in (metric_dimension, partition_dimension, metric_dimension_oracle, partition_dimension_oracle):
        with pytest.raises(SolverError):
            fn(g)


def test_budget_exceeded_is_an_error():
    g = parse_spec("corona(path:5,complete:2)")
    with pytest.raises(BudgetExceeded):
        partition_dimension(g, budget=5)
    with pytest.raises(BudgetExceeded):
        metric_dimension(parse_spec("corona(cycle:5,cycle:5)"), budget=1)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CORONAPD_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        partition_dimension(parse_spec("corona(path:5,complete:2)"))


@pytest.mark.parametrize("n,t", [(1, 1), (4, 2), (5, 3), (6, 6), (7, 3)])
def test_rgs_counts_match_stirling(n, t):
    strings = list(restricted_growth_strings(n, t))
    assert len(strings) == stirling2(n, t) == len(set(strings))
    for s in strings:
        assert s[0] == 0 and max(s) == t - 1
        assert all(s[i] <= max(s[:i]) + 1 for i in range(1, n))


def test_rgs_apart_constraint():
    apart = [[], [0], [], []]
    strings = list(restricted_growth_strings(4, 2, apart))
    assert strings and all(s[0] != s[1] for s in strings)
    full = [s for s in restricted_growth_strings(4, 2) if s[0] != s[1]]
    assert strings == full


def test_count_partitions_checked():
    total, good = count_partitions_checked(parse_spec("path:4"), 2)
    assert total == stirling2(4, 2) == 7
    assert good == len(list(iter_resolving_partitions(parse_spec("path:4"), 2)))
    assert good == 3  # {0}{123}, {3}{012}, {01}{23}


def test_twin_apart_lists_earlier_twins():
    assert twin_apart(parse_spec("star:3")) == [[], [], [1], [1, 2]]


def test_no_partition_below_dimension():
    g = parse_spec("corona(path:2,star:4)")
    p, _ = find_resolving_partition(g, 3)
    assert p is None
    p, _ = find_resolving_partition(g, 4)
    assert p is not None and is_resolving_partition(g.distances, p)


def test_search_order_does_not_change_value():
    cg = corona(parse_family("cycle:4"), parse_family("path:2"))
    a = partition_dimension(cg.graph)
    b = partition_dimension(cg.graph, order=cg.search_order())
    assert a.value == b.value


def test_custom_order_must_be_permutation():
    with pytest.raises(SolverError):
        partition_dimension(parse_spec("path:4"), order=[0, 1, 2])


def test_worker_count_does_not_change_result():
    g = parse_spec("corona(path:4,complete:2)")
    one = partition_dimension(g, workers=1)
    two = partition_dimension(g, workers=2)
    assert one.value == two.value == 3
    assert one.witness == two.witness


def test_pd_at_most_dim_plus_one():
    for g in family_graphs(8) + random_suite(30, seed=7, orders=range(2, 9)):
        assert partition_dimension(g).value <= metric_dimension(g).value + 1


def test_lower_bounds_never_exceed_values():
    for g in family_graphs(8) + random_suite(30, seed=11, orders=range(2, 9)):
        assert pd_lower_bound(g) <= partition_dimension(g).value
        assert dim_lower_bound(g) <= metric_dimension(g).value


def test_oracle_equivalence_small():
    # the full >= 200 graph comparison lives in the acceptance suite
    for g in random_suite(25, seed=3, orders=range(2, 8)):
        assert metric_dimension(g).value == metric_dimension_oracle(g).value
        assert partition_dimension(g).value == partition_dimension_oracle(g).value


def test_graph_without_edges_beyond_tree():
    g = Graph.from_edges(2, [(0, 1)])
    assert metric_dimension(g).value == 1
    assert partition_dimension(g).value == 2
