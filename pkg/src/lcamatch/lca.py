"""Local computation of a (1 - eps)-approximate maximum matching.

The global object being simulated is built in phases.  Phase ``ell`` (odd,
from 1 up to ``2k - 1`` with ``k = ceil(1 / eps)``) takes the previous
matching, collects every augmenting path of exactly ``ell`` edges, picks a
maximal independent set of vertex-disjoint such paths greedily in seeded
pseudorandom order, and flips all chosen path edges.  After the last phase no
augmenting path of length at most ``2k - 1`` remains, which forces the
matching to within ``1 - 1/k`` of maximum.

The engine answers per-edge membership queries against that final matching
without ever materializing it.  A membership query recurses through the
phases; deciding whether a path was picked by phase ``ell`` explores only the
part of the phase's conflict graph that can influence the greedy choice at
that path, namely the closure under "intersecting augmenting path of lower
rank".  Running the same greedy rule on that closed subgraph reproduces the
global decision exactly, so query answers across edges are mutually
consistent: they all describe one fixed matching determined by the graph and
the seeds.

Work is bounded by a per-query budget on augmenting-path checks.  A query
that would exceed the budget raises :class:`BudgetExceededError` rather than
returning a guess, so answers are never wrong, merely refused.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import Graph, mk_edge
from .ordering import SeedSet, init_seeds, rank
from .paths import PathKey, canonical_key, iter_intersecting, paths_through_edge

__all__ = [
    "Engine",
    "Stats",
    "ConflictSubgraph",
    "BudgetExceededError",
    "greedy_mis",
    "intersection_edges",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6

RankKey = Callable[[PathKey], tuple[int, ...]]


class BudgetExceededError(RuntimeError):
    """A query hit its augmenting-check budget and refused to answer."""


@dataclass
class Stats:
    """Counters for one top-level query.

    ``f`` counts augmenting-path checks (the budgeted unit of work),
    ``f_by_phase`` splits the count by phase length, and
    ``relevant_set_sizes`` records the node count of every conflict-subgraph
    closure built during the query.
    """

    f: int = 0
    f_by_phase: dict[int, int] = field(default_factory=dict)
    relevant_set_sizes: list[int] = field(default_factory=list)
    wall_time: float = 0.0


@dataclass(frozen=True)
class ConflictSubgraph:
    """A fragment of one phase's conflict graph.

    Nodes are augmenting paths of the phase length; edges join paths sharing
    a vertex.  For closures built by the engine, every non-root node has a
    higher-ranked neighbor inside the fragment, which is exactly the property
    that makes the local greedy run agree with the global one.
    """

    nodes: frozenset[PathKey]
    edges: frozenset[tuple[PathKey, PathKey]]

    def adjacency(self) -> dict[PathKey, set[PathKey]]:
        adj: dict[PathKey, set[PathKey]] = {p: set() for p in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


_EMPTY_SUBGRAPH = ConflictSubgraph(frozenset(), frozenset())


def intersection_edges(nodes: Iterable[PathKey]) -> frozenset[tuple[PathKey, PathKey]]:
    """All vertex-sharing pairs among ``nodes``, as ordered key pairs."""
    by_vertex: dict[int, list[PathKey]] = {}
    for p in nodes:
        for v in p:
            by_vertex.setdefault(v, []).append(p)
    out: set[tuple[PathKey, PathKey]] = set()
    for bucket in by_vertex.values():
        if len(bucket) < 2:
            continue
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                a, b = bucket[i], bucket[j]
                out.add((a, b) if a < b else (b, a))
    return frozenset(out)


def greedy_mis(subgraph: ConflictSubgraph, rank_key: RankKey) -> set[PathKey]:
    """Greedy maximal independent set under the given total order.

    Nodes are visited in ascending rank; a node joins the set unless a
    neighbor already did.  The result depends only on the subgraph and the
    order, not on anything about how the subgraph was discovered.
    """
    adj = subgraph.adjacency()
    chosen: set[PathKey] = set()
    for node in sorted(subgraph.nodes, key=rank_key):
        if all(nb not in chosen for nb in adj[node]):
            chosen.add(node)
    return chosen


def _k_from_eps(eps: float) -> int:
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    # round() guards ceil against float noise in 1/eps for eps like 1/3.
    return max(1, math.ceil(round(1.0 / eps, 9)))


class Engine:
    """Per-edge membership oracle for the phased matching.

    Parameters
    ----------
    graph:
        The bounded-degree input graph.
    eps, k:
        Approximation target; give exactly one.  ``k = ceil(1 / eps)``.
    seeds:
        Optional pre-built :class:`~lcamatch.ordering.SeedSet`; must cover
        every phase and match the graph's vertex count.
    rng_seed:
        Used to draw seeds when ``seeds`` is not given; defaults to 0.
    budget:
        Max augmenting-path checks per top-level query.
    cache_mode:
        ``"shared"`` keeps memoized answers across queries, ``"per_query"``
        clears them at each public call, ``"off"`` disables memoization.
        All three modes return identical answers.
    order_mode:
        ``"kwise"`` for the polynomial ordering, ``"random"`` for the keyed
        hash ordering; only used when ``seeds`` is not given.
    """

    def __init__(
        self,
        graph: Graph,
        eps: float | None = None,
        *,
        k: int | None = None,
        seeds: SeedSet | None = None,
        rng_seed: int | None = None,
        budget: int = DEFAULT_BUDGET,
        cache_mode: str = "shared",
        order_mode: str = "kwise",
    ) -> None:
        if (eps is None) == (k is None):
            raise ValueError("provide exactly one of eps and k")
        if k is None:
            k = _k_from_eps(eps)  # type: ignore[arg-type]
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        if budget < 1:
            raise ValueError(f"budget must be positive, got {budget}")
        if cache_mode not in ("shared", "per_query", "off"):
            raise ValueError(f"unknown cache_mode {cache_mode!r}")
        if seeds is None:
            seeds = init_seeds(
                k,
                max(2, graph.vertex_count),
                max(1, graph.degree_bound),
                0 if rng_seed is None else rng_seed,
                mode=order_mode,
            )
        else:
            if seeds.n != max(2, graph.vertex_count):
                raise ValueError(
                    f"seed set is for n={seeds.n}, graph has n={graph.vertex_count}"
                )
            for ell in range(1, 2 * k, 2):
                seeds.phase(ell)
        self.graph = graph
        self.k = k
        self.seeds = seeds
        self.budget = budget
        self.cache_mode = cache_mode
        self.last_stats: Stats | None = None
        self._memo: dict[tuple, bool] = {}
        self._ranks: dict[tuple[int, PathKey], tuple[int, ...]] = {}
        self._stats = Stats()

    # -- public query surface -------------------------------------------

    def query(self, edge: tuple[int, int]) -> bool:
        """True iff ``edge`` belongs to the final matching."""
        e = self._check_edge(edge)
        return self._run(lambda: self._in_matching(e, 2 * self.k - 1))

    def materialize(self) -> frozenset[tuple[int, int]]:
        """The full matching, by querying every edge."""
        return frozenset(e for e in self.graph.sorted_edges() if self.query(e))

    def is_in_matching(self, edge: tuple[int, int], ell: int) -> bool:
        """Membership of ``edge`` in the matching after phase ``ell``."""
        e = self._check_edge(edge)
        self._check_phase(ell, allow_base=True)
        return self._run(lambda: self._in_matching(e, ell))

    def is_path_in_mis(self, p: PathKey, ell: int) -> bool:
        """Whether phase ``ell`` picked ``p`` into its independent set."""
        p = self._check_path(p, ell)
        return self._run(lambda: self._path_in_mis(p, ell))

    def relevant_paths(
        self, p: PathKey, ell: int, exploration: str = "bfs"
    ) -> ConflictSubgraph:
        """The closed conflict-subgraph fragment that decides ``p``.

        Starting from ``p``, repeatedly adds any augmenting path that
        intersects a collected one and precedes it in rank, then induces all
        intersection edges among collected nodes.  ``exploration`` picks the
        worklist discipline; the result is the same fixpoint either way.
        """
        if exploration not in ("bfs", "dfs"):
            raise ValueError(f"unknown exploration order {exploration!r}")
        p = self._check_path(p, ell)
        return self._run(lambda: self._relevant(p, ell, exploration))

    def is_augmenting_path(self, p: PathKey, ell: int) -> bool:
        """Whether ``p`` augments the matching left by phase ``ell - 2``."""
        p = self._check_path(p, ell)
        return self._run(lambda: self._augmenting(p, ell))

    def is_free(self, v: int, ell: int) -> bool:
        """Whether vertex ``v`` is unmatched after phase ``ell - 2``."""
        if not (0 <= v < self.graph.vertex_count):
            raise ValueError(f"vertex {v} out of range")
        self._check_phase(ell, allow_base=False)
        return self._run(lambda: self._free(v, ell))

    def rank_key(self, ell: int) -> RankKey:
        """The total order used by phase ``ell``, as a sort key function."""
        self._check_phase(ell, allow_base=False)
        seed = self.seeds.phase(ell)
        cache = self._ranks

        def key(p: PathKey) -> tuple[int, ...]:
            t = cache.get((ell, p))
            if t is None:
                t = rank(p, seed)
                cache[(ell, p)] = t
            return t

        return key

    # -- validation -------------------------------------------------------

    def _check_edge(self, edge: tuple[int, int]) -> tuple[int, int]:
        u, v = edge
        if not self.graph.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) not in graph")
        return mk_edge(u, v)

    def _check_phase(self, ell: int, *, allow_base: bool) -> None:
        if ell == -1 and allow_base:
            return
        if ell % 2 == 0 or not (1 <= ell <= 2 * self.k - 1):
            raise ValueError(
                f"phase length must be odd and within 1..{2 * self.k - 1}, got {ell}"
            )

    def _check_path(self, p: PathKey, ell: int) -> PathKey:
        self._check_phase(ell, allow_base=False)
        key = canonical_key(self.graph, p)
        if key.length != ell:
            raise ValueError(f"path has length {key.length}, expected {ell}")
        return key

    # -- budgeted recursion ------------------------------------------------

    def _run(self, thunk):
        if self.cache_mode == "per_query":
            self._memo.clear()
        stats = Stats()
        self._stats = stats
        start = time.perf_counter()
        try:
            return thunk()
        finally:
            stats.wall_time = time.perf_counter() - start
            self.last_stats = stats

    def _in_matching(self, e: tuple[int, int], ell: int) -> bool:
        if ell == -1:
            return False
        key = ("m", e, ell)
        cached = self._memo.get(key) if self.cache_mode != "off" else None
        if cached is not None:
            return cached
        below = self._in_matching(e, ell - 2)
        flipped = False
        # At most one chosen path can contain e (chosen paths are disjoint),
        # so the first hit settles it.
        for p in paths_through_edge(self.graph, e, ell):
            if self._path_in_mis(p, ell):
                flipped = True
                break
        res = below != flipped
        if self.cache_mode != "off":
            self._memo[key] = res
        return res

    def _path_in_mis(self, p: PathKey, ell: int) -> bool:
        key = ("i", p, ell)
        cached = self._memo.get(key) if self.cache_mode != "off" else None
        if cached is not None:
            return cached
        sub = self._relevant(p, ell, "bfs")
        if p not in sub.nodes:
            res = False
            if self.cache_mode != "off":
                self._memo[key] = res
            return res
        chosen = greedy_mis(sub, self.rank_key(ell))
        res = p in chosen
        if self.cache_mode != "off":
            # The closure is downward complete, so the local greedy decision
            # is the global one for every collected node, not only the root.
            for q in sub.nodes:
                self._memo[("i", q, ell)] = q in chosen
        return res

    def _relevant(self, root: PathKey, ell: int, exploration: str) -> ConflictSubgraph:
        if not self._augmenting(root, ell):
            return _EMPTY_SUBGRAPH
        rank_key = self.rank_key(ell)
        members: set[PathKey] = {root}
        worklist: deque[PathKey] = deque([root])
        while worklist:
            cur = worklist.popleft() if exploration == "bfs" else worklist.pop()
            cur_rank = rank_key(cur)
            for q in iter_intersecting(self.graph, cur):
                if q in members:
                    continue
                if not self._augmenting(q, ell):
                    continue
                if rank_key(q) < cur_rank:
                    members.add(q)
                    worklist.append(q)
        self._stats.relevant_set_sizes.append(len(members))
        return ConflictSubgraph(frozenset(members), intersection_edges(members))

    def _augmenting(self, p: PathKey, ell: int) -> bool:
        stats = self._stats
        stats.f += 1
        stats.f_by_phase[ell] = stats.f_by_phase.get(ell, 0) + 1
        if stats.f > self.budget:
            raise BudgetExceededError(
                f"query exceeded budget of {self.budget} augmenting-path checks"
            )
        if ell == 1:
            # Phase 1 augments the empty matching: every edge qualifies.
            return True
        key = ("a", p, ell)
        cached = self._memo.get(key) if self.cache_mode != "off" else None
        if cached is not None:
            return cached
        res = True
        for i, e in enumerate(p.edge_seq(), start=1):
            if self._in_matching(e, ell - 2) != (i % 2 == 0):
                res = False
                break
        if res:
            res = self._free(p[0], ell) and self._free(p[-1], ell)
        if self.cache_mode != "off":
            self._memo[key] = res
        return res

    def _free(self, v: int, ell: int) -> bool:
        key = ("f", v, ell)
        cached = self._memo.get(key) if self.cache_mode != "off" else None
        if cached is not None:
            return cached
        res = True
        for u in self.graph.adjacency[v]:
            if self._in_matching(mk_edge(v, u), ell - 2):
                res = False
                break
        if self.cache_mode != "off":
            self._memo[key] = res
        return res
