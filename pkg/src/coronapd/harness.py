"""Registry of corona-product bounds and equalities, evaluated against exact solver values.

Every claim has a guard (the hypotheses under which it is asserted) and a
relation between two exact integers. Rational bounds are cleared of
denominators before comparison, e.g. ``pd <= dim/n1 + pd(G) + 1`` is checked as
``n1*pd <= dim + n1*(pd(G)+1)``.

Outcomes: "pass", "fail", "skipped" (guard false) and "inconclusive" (a solver
ran out of budget). Informational claims record data without ever failing.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .constructions import (
    ConstructionError,
    construct_from_resolving_set,
    construct_path_empty_partition,
    construct_star_partition,
    construct_sum_partition,
    star_guard,
)
from .corona import CoronaGraph, corona, parse_spec
from .graphs import (
    Graph,
    diameter,
    h_features,
    is_complete,
    is_empty_graph,
    is_path_graph,
    star_leaf_count,
)
from .resolvability import (
    format_vertex_set,
    induce_copy_partition,
    is_resolving_partition,
)
from .solvers import (
    BudgetExceeded,
    SolveResult,
    iter_resolving_partitions,
    metric_dimension,
    partition_dimension,
)

MAX_CORONA_ORDER = 24
MAX_EXHAUSTIVE_ORDER = 10

DEFAULT_G = (
    [f"path:{n}" for n in range(2, 7)]
    + [f"cycle:{n}" for n in range(3, 6)]
    + [f"complete:{n}" for n in range(2, 5)]
    + ["star:2", "star:3"]
)
DEFAULT_H = (
    [f"path:{n}" for n in range(2, 5)]
    + [f"complete:{n}" for n in range(1, 4)]
    + [f"star:{n}" for n in range(2, 5)]
    + [f"empty:{n}" for n in range(1, 4)]
    + [f"cycle:{n}" for n in range(3, 6)]
)


def default_grid(max_order: int = MAX_CORONA_ORDER) -> list[tuple[str, str]]:
    grid = []
    for gs in DEFAULT_G:
        for hs in DEFAULT_H:
            g, h = parse_spec(gs), parse_spec(hs)
            if g.order * (1 + h.order) <= max_order:
                grid.append((gs, hs))
    return grid


def read_grid(path: str | Path) -> list[tuple[str, str]]:
    """One 'G_SPEC H_SPEC' pair per line; '#' starts a comment line."""
    grid = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'G_SPEC H_SPEC'")
        grid.append((parts[0], parts[1]))
    return grid


class Invariants:
    """Memoized dim / pd keyed by graph structure, shared across claims."""

    def __init__(self, budget: int | None = None):
        self.budget = budget
        self._dim: dict = {}
        self._pd: dict = {}

    def dim(self, g: Graph) -> SolveResult:
        key = (g.order, g.edges)
        if key not in self._dim:
            self._dim[key] = metric_dimension(g, self.budget)
        return self._dim[key]

    def pd(self, g: Graph, order: Sequence[int] | None = None) -> SolveResult:
        key = (g.order, g.edges)
        if key not in self._pd:
            self._pd[key] = partition_dimension(g, self.budget, order=order)
        return self._pd[key]


@dataclass
class Instance:
    g_spec: str
    h_spec: str
    inv: Invariants

    def __post_init__(self):
        self.g = parse_spec(self.g_spec)
        self.h = parse_spec(self.h_spec)
        self.cg: CoronaGraph = corona(self.g, self.h)
        self.n1 = self.g.order
        self.n2 = self.h.order
        self.features = h_features(self.h)

    @property
    def gh(self) -> Graph:
        return self.cg.graph

    def pd_gh(self) -> SolveResult:
        return self.inv.pd(self.gh, self.cg.search_order())

    def dim_gh(self) -> SolveResult:
        return self.inv.dim(self.gh)

    def h_connected(self) -> bool:
        return self.h.is_connected()

    def h_diameter_at_most_2(self) -> bool:
        return self.n2 >= 2 and self.h.is_connected() and diameter(self.h) <= 2


@dataclass
class Evaluation:
    lhs: int
    rhs: int
    holds: bool
    witness: str | None = None


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    guard: Callable[[Instance], bool]
    evaluate: Callable[[Instance], Evaluation]
    informational: bool = False


@dataclass
class ClaimResult:
    claim_id: str
    g_spec: str
    h_spec: str
    guard: bool
    status: str
    lhs: int | None = None
    rhs: int | None = None
    witness: str | None = None
    millis: int = 0
    informational: bool = False
    note: str | None = None

    @property
    def passed(self) -> bool | None:
        if self.status == "pass":
            return True
        if self.status == "fail":
            return False
        return None

    @property
    def guarded_failure(self) -> bool:
        return self.status == "fail" and not self.informational

    def to_record(self, timing: bool = True) -> dict:
        rec = {
            "claim_id": self.claim_id,
            "g_spec": self.g_spec,
            "h_spec": self.h_spec,
            "guard": self.guard,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "witness": self.witness,
            "millis": self.millis if timing else 0,
            "status": self.status,
        }
        if self.informational:
            rec["informational"] = True
        if self.note:
            rec["note"] = self.note
        return rec

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_record(timing))


# ---------------------------------------------------------------- relations

def _le(lhs, rhs, witness=None):
    return Evaluation(lhs, rhs, lhs <= rhs, witness)


def _ge(lhs, rhs, witness=None):
    return Evaluation(lhs, rhs, lhs >= rhs, witness)


def _eq(lhs, rhs, witness=None):
    return Evaluation(lhs, rhs, lhs == rhs, witness)


def _orders_at_least_two(x: Instance) -> bool:
    return x.n1 >= 2 and x.n2 >= 2


def _both_connected(x: Instance) -> bool:
    return _orders_at_least_two(x) and x.h_connected()


def _dim_bound_by_components(n1: int, n2: int, alpha: int, beta: int) -> int:
    if alpha >= 1 and beta >= 1:
        return n1 * (n2 - alpha - 1)
    if alpha >= 1:
        return n1 * (n2 - alpha)
    return n1 * (n2 - 1)


def _pd_bound_by_components(pd_g: int, n2: int, alpha: int, beta: int) -> int:
    if alpha >= 1 and beta >= 1:
        return pd_g + n2 - alpha
    if alpha >= 1:
        return pd_g + n2 - alpha + 1
    return pd_g + n2


def _is_excluded_complete_path(x: Instance) -> bool:
    return is_complete(x.g) and is_path_graph(x.h) and x.n2 in (2, 3)


# ---------------------------------------------------------------- claim bodies

def _c1(x):
    pd = x.pd_gh()
    return _le(pd.value, x.dim_gh().value + 1, str(pd.witness))


def _c2(x):
    pd, dim = x.pd_gh(), x.dim_gh()
    pd_g = x.inv.pd(x.g)
    witness = None
    try:
        built = construct_from_resolving_set(x.cg, dim.witness, pd_g.witness)
        witness = f"{built.partition} (size {built.size}, splits {built.params['splits']})"
    except ConstructionError as exc:
        witness = f"construction not applicable: {exc}"
    return _le(x.n1 * pd.value, dim.value + x.n1 * (pd_g.value + 1), witness)


def _c3(x):
    return _ge((x.n1 - 1) * x.dim_gh().value, x.n1 * x.inv.pd(x.g).value)


def _c4(x):
    dim = x.dim_gh()
    return _ge(dim.value, x.n1 * x.inv.dim(x.h).value, format_vertex_set(dim.witness))


def _c5(x):
    f = x.features
    return _le(x.dim_gh().value, _dim_bound_by_components(x.n1, x.n2, f.alpha_ge2, f.beta))


def _c5_total(x):
    f = x.features
    return _le(x.dim_gh().value, _dim_bound_by_components(x.n1, x.n2, f.component_count, f.beta))


def _c6(x):
    f = x.features
    return _le(x.pd_gh().value, _pd_bound_by_components(x.inv.pd(x.g).value, x.n2, f.alpha_ge2, f.beta))


def _c7(x):
    pd_g, pd_h = x.inv.pd(x.g), x.inv.pd(x.h)
    built = construct_sum_partition(x.cg, pd_g.witness, pd_h.witness)
    return _le(x.pd_gh().value, pd_g.value + pd_h.value, str(built.partition))


def _c8(x):
    return _le(x.pd_gh().value, x.inv.dim(x.g).value + x.inv.dim(x.h).value + 2)


def _c9(x):
    return _ge(x.pd_gh().value, x.inv.pd(x.h).value)


def _c10(x):
    pd = x.pd_gh()
    bad = [i for i in range(x.n1) if not is_resolving_partition(x.h.distances, induce_copy_partition(x.cg, pd.witness, i))]
    return _eq(len(bad), 0, f"{pd.witness} (non-resolving copies: {bad})")


def _c11(x):
    dim = x.dim_gh()
    s = set(dim.witness)
    missed = sum(1 for copy in x.cg.copies if not s.intersection(copy))
    centers = len(s.intersection(x.cg.centers))
    splits = [len(s.intersection(copy)) for copy in x.cg.copies]
    return _eq(missed + centers, 0, f"{format_vertex_set(dim.witness)} (splits {splits})")


def _c12(x):
    t = x.n2 + 1
    worst = found = 0
    for p in iter_resolving_partitions(x.gh, t):
        found += 1
        dm = x.gh.distances
        worst = max(worst, max(int(dm[:, list(b)].min(axis=1).max()) for b in p.blocks))
    return _le(worst, 3, f"{found} resolving {t}-block partitions")


def _c13(x):
    return _ge(x.pd_gh().value, x.features.c + 2)


def _c14(x):
    return _ge(x.pd_gh().value, x.features.beta + 1)


def _c15(x):
    pd = x.pd_gh()
    return _eq(pd.value, x.n2 + 2, str(pd.witness))


def _c16(x):
    built = construct_path_empty_partition(x.n1, x.n2)
    pd = x.pd_gh()
    witness = str(built.partition)
    if pd.value != x.n2 + 1:
        witness = f"solver {pd.witness}; construction {built.partition}"
    return _eq(pd.value, x.n2 + 1, witness)


def _c17(x):
    built = construct_star_partition(x.cg)
    return _eq(x.pd_gh().value, star_leaf_count(x.h), str(built.partition))


def _c18(x):
    pd = x.inv.pd(x.h)
    return _eq(pd.value, star_leaf_count(x.h), str(pd.witness))


CLAIMS: tuple[Claim, ...] = (
    Claim("C1", "pd(G⊙H) <= dim(G⊙H) + 1", lambda x: x.gh.order >= 2, _c1),
    Claim("C2", "n1*pd(G⊙H) <= dim(G⊙H) + n1*(pd(G) + 1)", lambda x: x.n1 >= 2, _c2),
    Claim(
        "C3",
        "(n1-1)*dim(G⊙H) >= n1*pd(G), except K_n1⊙P2 and K_n1⊙P3",
        lambda x: _both_connected(x) and not _is_excluded_complete_path(x),
        _c3,
    ),
    Claim(
        "C3-excluded",
        "(n1-1)*dim(G⊙H) vs n1*pd(G) on the excluded K_n1⊙P2, K_n1⊙P3 (data only)",
        lambda x: _both_connected(x) and _is_excluded_complete_path(x),
        _c3,
        informational=True,
    ),
    Claim("C4", "dim(G⊙H) >= n1*dim(H)", _both_connected, _c4),
    Claim("C5", "dim(G⊙H) <= component bound, alpha = components of order >= 2", _orders_at_least_two, _c5),
    Claim(
        "C5-total",
        "dim(G⊙H) <= component bound, alpha = all components (data only)",
        _orders_at_least_two,
        _c5_total,
        informational=True,
    ),
    Claim("C6", "pd(G⊙H) <= pd(G) + n2 - alpha (+1 / +alpha by case)", _orders_at_least_two, _c6),
    Claim("C7", "pd(G⊙H) <= pd(G) + pd(H) when D(H) <= 2", lambda x: x.n1 >= 2 and x.h_diameter_at_most_2(), _c7),
    Claim("C8", "pd(G⊙H) <= dim(G) + dim(H) + 2 when D(H) <= 2", lambda x: x.n1 >= 2 and x.h_diameter_at_most_2(), _c8),
    Claim("C9", "pd(G⊙H) >= pd(H)", lambda x: x.n2 >= 2 and x.h_connected(), _c9),
    Claim("C10", "traces of a minimum resolving partition resolve every copy of H", lambda x: x.h_connected(), _c10),
    Claim("C11", "minimum resolving sets hit every copy and avoid the centers", _orders_at_least_two, _c11),
    Claim(
        "C12",
        "resolving (n2+1)-partitions of G⊙K_n2 have all d(v,A) <= 3",
        lambda x: is_complete(x.h) and x.gh.order <= MAX_EXHAUSTIVE_ORDER,
        _c12,
    ),
    Claim("C13", "pd(G⊙H) >= c(H) + 2 when n1 > 2c(H) + 1 >= 5", lambda x: x.n1 > 2 * x.features.c + 1 >= 5, _c13),
    Claim("C14", "pd(G⊙H) >= beta(H) + 1 when n1 > beta(H) >= 2", lambda x: x.n1 >= 2 and x.n1 > x.features.beta >= 2, _c14),
    Claim(
        "C15",
        "pd(P_n1⊙K_n2) = n2 + 2 when n1 > 2*n2 + 1 >= 5",
        lambda x: is_path_graph(x.g) and is_complete(x.h) and x.n1 > 2 * x.n2 + 1 >= 5,
        _c15,
    ),
    Claim(
        "C16",
        "pd(P_n1⊙N_n2) = n2 + 1 when n1 >= n2 >= 2",
        lambda x: is_path_graph(x.g) and is_empty_graph(x.h) and x.n1 >= x.n2 >= 2,
        _c16,
    ),
    Claim(
        "C17",
        "pd(G⊙K_1,n) = n when n >= 2*n1 >= 4 or n > 2*n1 = 2",
        lambda x: star_leaf_count(x.h) is not None and star_guard(x.n1, star_leaf_count(x.h)),
        _c17,
    ),
    Claim("C18", "pd(K_1,n) = n for n >= 2 (evaluated on H)", lambda x: star_leaf_count(x.h) is not None, _c18),
)

CLAIM_IDS = tuple(c.id for c in CLAIMS)
_BY_ID = {c.id: c for c in CLAIMS}


def get_claim(claim_id: str) -> Claim:
    try:
        return _BY_ID[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIM_IDS)}") from None


def evaluate_claim(claim_id: str, g_spec: str, h_spec: str, inv: Invariants | None = None) -> ClaimResult:
    claim = get_claim(claim_id)
    return _evaluate(claim, Instance(g_spec, h_spec, inv or Invariants()))


def _evaluate(claim: Claim, x: Instance) -> ClaimResult:
    start = time.perf_counter()
    base = dict(claim_id=claim.id, g_spec=x.g_spec, h_spec=x.h_spec, informational=claim.informational)
    if not claim.guard(x):
        return ClaimResult(guard=False, status="skipped", **base)
    try:
        ev = claim.evaluate(x)
    except BudgetExceeded as exc:
        millis = round((time.perf_counter() - start) * 1000)
        return ClaimResult(guard=True, status="inconclusive", millis=millis, note=str(exc), **base)
    millis = round((time.perf_counter() - start) * 1000)
    status = "pass" if ev.holds else "fail"
    return ClaimResult(
        guard=True, status=status, lhs=ev.lhs, rhs=ev.rhs, witness=ev.witness, millis=millis, **base
    )


def _evaluate_instance(args) -> list[ClaimResult]:
    g_spec, h_spec, claim_ids, budget = args
    x = Instance(g_spec, h_spec, Invariants(budget))
    return [_evaluate(get_claim(cid), x) for cid in claim_ids]


def run_sweep(
    grid: Iterable[tuple[str, str]],
    claims: Sequence[str] | None = None,
    *,
    budget: int | None = None,
    workers: int = 1,
    max_order: int = MAX_CORONA_ORDER,
) -> list[ClaimResult]:
    """Evaluate every claim on every instance; rows ordered by (claim, instance)."""
    claim_ids = list(CLAIM_IDS if claims is None else claims)
    for cid in claim_ids:
        get_claim(cid)
    grid = list(grid)
    for gs, hs in grid:
        order = parse_spec(gs).order * (1 + parse_spec(hs).order)
        if order > max_order:
            raise ValueError(f"corona({gs},{hs}) has order {order} > {max_order}")
    jobs = [(gs, hs, claim_ids, budget) for gs, hs in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_instance = list(pool.map(_evaluate_instance, jobs))
    else:
        per_instance = [_evaluate_instance(job) for job in jobs]
    claim_rank = {cid: i for i, cid in enumerate(claim_ids)}
    rows = [(claim_rank[r.claim_id], k, r) for k, results in enumerate(per_instance) for r in results]
    rows.sort(key=lambda t: (t[0], t[1]))
    return [r for _, _, r in rows]


@dataclass
class SweepSummary:
    passed: int = 0
    failed: list = field(default_factory=list)
    skipped: int = 0
    inconclusive: list = field(default_factory=list)
    informational_violations: list = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        if self.failed:
            return 1
        if self.inconclusive:
            return 3
        return 0


def summarize(results: Iterable[ClaimResult]) -> SweepSummary:
    s = SweepSummary()
    for r in results:
        if r.status == "skipped":
            s.skipped += 1
        elif r.status == "inconclusive":
            s.inconclusive.append(r)
        elif r.informational:
            if r.status == "fail":
                s.informational_violations.append(r)
        elif r.status == "pass":
            s.passed += 1
        else:
            s.failed.append(r)
    return s
