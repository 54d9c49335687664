"""Canonical simple-path identities and local path enumeration.

A path is identified by its vertex sequence; the canonical form is the
lexicographically smaller of the sequence and its reversal, so a path and
its reverse traversal are one object.  All enumeration here is local: it
never touches more of the graph than the neighborhood of the seed edge or
vertex, which is what keeps the query engine sublinear.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph, mk_edge

__all__ = [
    "PathKey",
    "canonical_key",
    "paths_through_edge",
    "paths_through_vertex",
    "intersecting_paths",
]


class PathKey(tuple):
    """Canonical identity of a simple path: a tuple of vertex ids.

    Instances are assumed canonical (not larger than their reversal);
    use :func:`canonical_key` to build one from raw input.
    """

    __slots__ = ()

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self) - 1

    def edge_seq(self) -> list[tuple[int, int]]:
        """Edges in traversal order, each as a canonical pair."""
        return [mk_edge(self[i], self[i + 1]) for i in range(len(self) - 1)]

    def endpoints(self) -> tuple[int, int]:
        return self[0], self[-1]


def _canonical(seq: tuple[int, ...]) -> PathKey:
    rev = seq[::-1]
    return PathKey(seq if seq <= rev else rev)


def canonical_key(g: Graph, seq: Iterable[int]) -> PathKey:
    """Validated canonical key for a vertex sequence.

    Rejects sequences shorter than one edge, repeated vertices, and pairs of
    consecutive vertices that are not adjacent in ``g``.
    """
    s = tuple(seq)
    if len(s) < 2:
        raise ValueError(f"path needs at least 2 vertices, got {len(s)}")
    if len(set(s)) != len(s):
        raise ValueError(f"repeated vertex in path {s}")
    for v in s:
        if not (0 <= v < g.vertex_count):
            raise ValueError(f"vertex {v} out of range for n={g.vertex_count}")
    for a, b in zip(s, s[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"consecutive vertices {a}, {b} are not adjacent")
    return _canonical(s)


def _extend(
    g: Graph,
    core: list[int],
    used: set[int],
    back_steps: int,
    front_steps: int,
    out: list[PathKey],
) -> None:
    # Grow the tail first, then the head; emit once both sides are spent.
    if back_steps > 0:
        for w in g.adjacency[core[-1]]:
            if w in used:
                continue
            core.append(w)
            used.add(w)
            _extend(g, core, used, back_steps - 1, front_steps, out)
            used.remove(w)
            core.pop()
        return
    if front_steps > 0:
        for w in g.adjacency[core[0]]:
            if w in used:
                continue
            core.insert(0, w)
            used.add(w)
            _extend(g, core, used, back_steps, front_steps - 1, out)
            used.remove(w)
            del core[0]
        return
    out.append(_canonical(tuple(core)))


def paths_through_edge(g: Graph, e: tuple[int, int], length: int) -> list[PathKey]:
    """All simple paths of exactly ``length`` edges that contain edge ``e``.

    Enumerates each split of the remaining ``length - 1`` edges around ``e``
    and extends both ends by depth-first search, so each path is produced
    exactly once.  Output is sorted by canonical key.  The result size obeys
    the bound ``length * (d - 1) ** (length - 1)``.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) not in graph")
    if length < 1:
        raise ValueError(f"path length must be positive, got {length}")
    u, v = mk_edge(u, v)
    if length == 1:
        return [PathKey((u, v))]
    out: list[PathKey] = []
    for front_steps in range(length):
        back_steps = length - 1 - front_steps
        _extend(g, [u, v], {u, v}, back_steps, front_steps, out)
    out.sort()
    return out


def paths_through_vertex(g: Graph, v: int, length: int) -> list[PathKey]:
    """All simple paths of exactly ``length`` edges containing vertex ``v``."""
    return sorted(_through_vertex_set(g, v, length))


def _through_vertex_set(g: Graph, v: int, length: int) -> set[PathKey]:
    # Every path containing v uses at least one edge incident to v.
    found: set[PathKey] = set()
    for w in g.neighbors(v):
        found.update(paths_through_edge(g, mk_edge(v, w), length))
    return found


def intersecting_paths(g: Graph, p: PathKey) -> list[PathKey]:
    """All other paths of ``p``'s length sharing at least one vertex with it."""
    return sorted(_intersecting_set(g, p))


def _intersecting_set(g: Graph, p: PathKey) -> set[PathKey]:
    found: set[PathKey] = set()
    for v in p:
        found.update(_through_vertex_set(g, v, p.length))
    found.discard(p)
    return found


def iter_intersecting(g: Graph, p: PathKey) -> Iterator[PathKey]:
    """Unsorted variant of :func:`intersecting_paths` for hot loops."""
    return iter(_intersecting_set(g, p))
