"""Bounded-degree graphs with dense integer vertex ids.

Vertices are 0..n-1, edges are canonical (min, max) pairs, and every graph
carries the degree bound it was declared or generated with.  The text format
accepted by :func:`load_graph` is a header line ``n m d`` followed by ``m``
lines ``u v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, TextIO

__all__ = [
    "Graph",
    "GraphFormatError",
    "load_graph",
    "gen_random_bounded",
    "mk_edge",
]

# Proposal budget multiplier for the random generator; once spent, the
# generator returns whatever it has, possibly an empty graph.
_PROPOSAL_FACTOR = 10


class GraphFormatError(ValueError):
    """Raised for malformed graph input; the message names the line number."""


def mk_edge(u: int, v: int) -> tuple[int, int]:
    """Canonical edge as an ordered pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable bounded-degree graph.

    Attributes
    ----------
    vertex_count:
        Number of vertices; ids are dense in ``range(vertex_count)``.
    degree_bound:
        Declared bound ``d``; every vertex has degree at most ``d``.
    adjacency:
        Per-vertex sorted neighbor tuples.
    edges:
        Frozenset of canonical ``(u, v)`` pairs with ``u < v``.
    """

    vertex_count: int
    degree_bound: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]] = field(repr=False)

    @staticmethod
    def from_edges(n: int, d: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, validating ids, duplicates, self loops and degrees."""
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        if d < 0:
            raise ValueError(f"degree bound must be non-negative, got {d}")
        seen: set[tuple[int, int]] = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = mk_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        for x in range(n):
            if len(nbrs[x]) > d:
                raise ValueError(
                    f"vertex {x} has degree {len(nbrs[x])}, exceeds bound {d}"
                )
        adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        return Graph(n, d, adjacency, frozenset(seen))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbors of ``v``; raises for out-of-range ids."""
        if not (0 <= v < self.vertex_count):
            raise ValueError(f"vertex {v} out of range for n={self.vertex_count}")
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return mk_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def load_graph(stream: TextIO) -> Graph:
    """Parse the ``n m d`` edge-list format.

    Blank lines and lines starting with ``#`` are skipped.  Errors report
    1-based line numbers of the offending input line.
    """
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, int]] = []
    edges_seen: set[tuple[int, int]] = set()
    degrees: dict[int, int] = {}
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3:
                raise GraphFormatError(
                    f"line {lineno}: header must be 'n m d', got {line!r}"
                )
            try:
                n, m, d = (int(p) for p in parts)
            except ValueError:
                raise GraphFormatError(
                    f"line {lineno}: header fields must be integers, got {line!r}"
                ) from None
            if n < 0 or m < 0 or d < 0:
                raise GraphFormatError(f"line {lineno}: negative header field")
            header = (n, m, d)
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: edge must be 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(
                f"line {lineno}: edge fields must be integers, got {line!r}"
            ) from None
        n, m, d = header
        if u == v:
            raise GraphFormatError(f"line {lineno}: self loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(
                f"line {lineno}: edge ({u}, {v}) out of range for n={n}"
            )
        e = mk_edge(u, v)
        if e in edges_seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
        edges_seen.add(e)
        for x in e:
            degrees[x] = degrees.get(x, 0) + 1
            if degrees[x] > d:
                raise GraphFormatError(
                    f"line {lineno}: vertex {x} exceeds declared degree bound {d}"
                )
        edges.append(e)
    if header is None:
        raise GraphFormatError("line 1: missing 'n m d' header")
    n, m, d = header
    if len(edges) != m:
        raise GraphFormatError(
            f"header declares {m} edges, found {len(edges)}"
        )
    return Graph.from_edges(n, d, edges)


def dump_graph(g: Graph) -> str:
    """Inverse of :func:`load_graph`, with edges in canonical order."""
    lines = [f"{g.vertex_count} {g.edge_count} {g.degree_bound}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def gen_random_bounded(n: int, d: int, seed: int) -> Graph:
    """Random graph on ``n`` vertices with max degree ``d``.

    Repeatedly proposes uniform vertex pairs and keeps a proposal unless it
    is a self loop, already present, or would push an endpoint past ``d``.
    The proposal budget is ``10 * n * d``; when it runs out the graph built
    so far is returned, so sparse (even empty) results are legal.
    """
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    if d < 1:
        raise ValueError(f"degree bound must be at least 1, got {d}")
    rng = random.Random(seed)
    degrees = [0] * n
    chosen: set[tuple[int, int]] = set()
    for _ in range(_PROPOSAL_FACTOR * n * d):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        e = mk_edge(u, v)
        if e in chosen:
            continue
        if degrees[u] >= d or degrees[v] >= d:
            continue
        chosen.add(e)
        degrees[u] += 1
        degrees[v] += 1
    return Graph.from_edges(n, d, chosen)
