import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcamatch.graph import gen_random_bounded, mk_edge
from lcamatch.paths import (
    PathKey,
    canonical_key,
    intersecting_paths,
    paths_through_edge,
    paths_through_vertex,
)

from conftest import cycle_graph, path_graph, petersen_graph


def brute_paths_through_edge(g, e, length):
    """Oracle: filter all injective vertex sequences of the right length."""
    e = mk_edge(*e)
    found = set()
    for seq in itertools.permutations(range(g.vertex_count), length + 1):
        if any(not g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            continue
        if e not in {mk_edge(a, b) for a, b in zip(seq, seq[1:])}:
            continue
        rev = seq[::-1]
        found.add(PathKey(seq if seq <= rev else rev))
    return found


def test_canonical_key_picks_smaller_orientation():
    g = path_graph(4)
    assert canonical_key(g, [2, 1, 0]) == PathKey((0, 1, 2))
    assert canonical_key(g, [0, 1, 2]) == PathKey((0, 1, 2))
    assert canonical_key(g, (3, 2)) == PathKey((2, 3))


def test_canonical_key_rejects_bad_sequences():
    g = path_graph(4)
    with pytest.raises(ValueError, match="not adjacent"):
        canonical_key(g, [0, 2])
    with pytest.raises(ValueError, match="repeated"):
        canonical_key(g, [0, 1, 0])
    with pytest.raises(ValueError, match="at least 2"):
        canonical_key(g, [1])
    with pytest.raises(ValueError, match="out of range"):
        canonical_key(g, [3, 4])


def test_pathkey_accessors():
    p = PathKey((0, 1, 2, 3))
    assert p.length == 3
    assert p.edge_seq() == [(0, 1), (1, 2), (2, 3)]
    assert p.endpoints() == (0, 3)


def test_single_edge_path():
    g = path_graph(4)
    assert paths_through_edge(g, (2, 1), 1) == [PathKey((1, 2))]


def test_c5_paths_through_edge_length3():
    g = cycle_graph(5)
    out = paths_through_edge(g, (0, 1), 3)
    expected = {
        canonical_key(g, [0, 1, 2, 3]),
        canonical_key(g, [4, 0, 1, 2]),
        canonical_key(g, [3, 4, 0, 1]),
    }
    assert set(out) == expected
    assert len(out) == 3
    assert out == sorted(out)


def test_paths_through_edge_validation():
    g = path_graph(4)
    with pytest.raises(ValueError, match="not in graph"):
        paths_through_edge(g, (0, 3), 3)
    with pytest.raises(ValueError, match="positive"):
        paths_through_edge(g, (0, 1), 0)


def test_paths_through_vertex_midpoint_and_endpoint():
    g = path_graph(5)
    # vertex 2 sits inside or at the end of these length-2 paths
    out = paths_through_vertex(g, 2, 2)
    expected = {
        canonical_key(g, [0, 1, 2]),
        canonical_key(g, [1, 2, 3]),
        canonical_key(g, [2, 3, 4]),
    }
    assert set(out) == expected


def test_intersecting_paths_on_c5_single_edges():
    g = cycle_graph(5)
    p = PathKey((0, 1))
    out = intersecting_paths(g, p)
    assert set(out) == {PathKey((0, 4)), PathKey((1, 2))}
    assert p not in out


def test_intersecting_paths_symmetry():
    g = petersen_graph()
    for e in sorted(g.edges)[:5]:
        for p in paths_through_edge(g, e, 3):
            for q in intersecting_paths(g, p):
                assert p in intersecting_paths(g, q)


def test_enumeration_matches_bruteforce_small():
    rng = random.Random(4242)
    cases = 0
    for gi in range(12):
        n = rng.randrange(4, 11)
        d = rng.randrange(2, 5)
        g = gen_random_bounded(n, d, 900 + gi)
        if g.edge_count == 0:
            continue
        edges = g.sorted_edges()
        for length in (1, 2, 3, 5):
            e = edges[rng.randrange(len(edges))]
            assert set(paths_through_edge(g, e, length)) == brute_paths_through_edge(
                g, e, length
            )
            cases += 1
    assert cases >= 30


@given(
    n=st.integers(4, 25),
    d=st.integers(2, 5),
    seed=st.integers(0, 10**6),
    length=st.sampled_from([1, 3, 5]),
)
@settings(max_examples=50, deadline=None)
def test_counting_bounds(n, d, seed, length):
    g = gen_random_bounded(n, d, seed)
    if g.edge_count == 0:
        return
    rng = random.Random(seed)
    e = sorted(g.edges)[rng.randrange(g.edge_count)]
    through = paths_through_edge(g, e, length)
    # paths through one edge
    assert len(through) <= length * max(1, (d - 1)) ** (length - 1)
    if through:
        p = through[0]
        # conflict-graph degree
        limit = d * (length + 1) * length * max(1, (d - 1)) ** (length - 1)
        assert len(intersecting_paths(g, p)) <= limit


def test_outputs_are_sorted_and_unique():
    g = petersen_graph()
    for e in sorted(g.edges)[:4]:
        out = paths_through_edge(g, e, 5)
        assert out == sorted(out)
        assert len(out) == len(set(out))
        if out:
            inter = intersecting_paths(g, out[0])
            assert inter == sorted(inter)
            assert len(inter) == len(set(inter))
