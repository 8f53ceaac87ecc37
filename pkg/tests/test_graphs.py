"""Graph core: complements, distances, eccentricity sets, Laplacians, graph6."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lapspread.enumeration import canonical_form, enumerate_classes, Filter, GraphClassIter
from lapspread.families import FamilySpec, make
from lapspread.graphs import (INFINITE, SimpleGraph, WeightedGraph,
                              complement, diameter, distances, eccentricities,
                              emit_graph6, high_ecc_set, laplacian, parse_graph6)


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> SimpleGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return SimpleGraph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# complement
# ---------------------------------------------------------------------------

def test_complement_complete_is_empty():
    assert complement(SimpleGraph.complete(4)) == SimpleGraph.empty(4)


def test_complement_p4_is_self_complementary():
    p4 = SimpleGraph.path(4)
    assert canonical_form(complement(p4)) == canonical_form(p4)


def test_complement_involution_c5():
    c5 = SimpleGraph.cycle(5)
    assert complement(complement(c5)) == c5


def test_weighted_complement():
    w = np.array([[0.0, 0.25, 1.0], [0.25, 0.0, 0.5], [1.0, 0.5, 0.0]])
    wc = complement(WeightedGraph(w)).w
    assert np.allclose(wc, np.array([[0.0, 0.75, 0.0], [0.75, 0.0, 0.5], [0.0, 0.5, 0.0]]))
    assert np.all(np.diag(wc) == 0.0)


@given(st.integers(2, 10), st.integers(0, 2**45 - 1))
@settings(max_examples=150, deadline=None)
def test_complement_involution_random(n, seed):
    g = random_graph(n, random.Random(seed))
    assert complement(complement(g)) == g


# ---------------------------------------------------------------------------
# distances / eccentricities / D(G) / diameter
# ---------------------------------------------------------------------------

def test_distances_path_endpoints():
    table = distances(SimpleGraph.path(4))
    assert table[0, 3] == 3
    assert table[3, 0] == 3


def test_distances_disconnected_pair():
    g = SimpleGraph.empty(2)
    assert distances(g)[0, 1] == INFINITE


def test_distances_complete():
    table = distances(SimpleGraph.complete(5))
    for u in range(5):
        for v in range(5):
            assert table[u, v] == (0 if u == v else 1)


def _floyd_warshall(g: SimpleGraph) -> list[list[float]]:
    d = [[0.0 if u == v else (1.0 if g.has_edge(u, v) else INFINITE)
          for v in range(g.n)] for u in range(g.n)]
    for k in range(g.n):
        for u in range(g.n):
            for v in range(g.n):
                if d[u][k] + d[k][v] < d[u][v]:
                    d[u][v] = d[u][k] + d[k][v]
    return d


def test_distances_match_floyd_warshall_oracle():
    rng = random.Random(20240817)
    for _ in range(1000):
        n = rng.randint(2, 16)
        g = random_graph(n, rng, p=rng.choice([0.15, 0.3, 0.6]))
        table = distances(g)
        oracle = _floyd_warshall(g)
        for u in range(n):
            for v in range(n):
                assert table[u, v] == oracle[u][v]


def test_distance_table_invariants_random():
    rng = random.Random(7)
    for _ in range(50):
        g = random_graph(rng.randint(2, 12), rng, 0.4)
        t = distances(g)
        for u in range(g.n):
            assert t[u, u] == 0
            for v in range(g.n):
                assert t[u, v] == t[v, u]
                for w in range(g.n):
                    if t[u, w] != INFINITE and t[w, v] != INFINITE:
                        assert t[u, v] <= t[u, w] + t[w, v]


def test_eccentricities_p4():
    assert eccentricities(SimpleGraph.path(4)) == [3, 2, 2, 3]


def test_eccentricities_star():
    star = SimpleGraph.from_edges(5, [(0, v) for v in range(1, 5)])
    assert eccentricities(star) == [1, 2, 2, 2, 2]


def test_eccentricities_c6_all_three():
    assert eccentricities(SimpleGraph.cycle(6)) == [3] * 6


def test_high_ecc_p4():
    assert high_ecc_set(SimpleGraph.path(4)) == {0, 3}


def test_high_ecc_g234_pendants():
    g = make(FamilySpec(kind="G_RIJ", r=2, i=3, j=4))
    assert high_ecc_set(g) == set(range(4, 11))
    assert len(high_ecc_set(g)) == 3 + 4


def test_high_ecc_diameter2_empty():
    assert high_ecc_set(SimpleGraph.cycle(5)) == frozenset()


def test_high_ecc_disconnected_is_everything():
    g = SimpleGraph.from_edges(4, [(0, 1)])
    assert high_ecc_set(g) == {0, 1, 2, 3}


def test_diameter_examples():
    assert diameter(SimpleGraph.path(4)) == 3
    assert diameter(SimpleGraph.complete(5)) == 1
    assert diameter(make(FamilySpec(kind="DANDELION", n=10))) == 3


# ---------------------------------------------------------------------------
# Laplacian
# ---------------------------------------------------------------------------

def test_laplacian_single_edge():
    lap = laplacian(SimpleGraph.from_edges(2, [(0, 1)]))
    assert np.array_equal(lap, np.array([[1.0, -1.0], [-1.0, 1.0]]))


def test_laplacian_weighted_half_edge():
    lap = laplacian(WeightedGraph(np.array([[0.0, 0.5], [0.5, 0.0]])))
    assert np.array_equal(lap, np.array([[0.5, -0.5], [-0.5, 0.5]]))


def test_laplacian_row_sums_zero():
    g = make(FamilySpec(kind="G_RIJ", r=2, i=3, j=4))
    assert np.allclose(laplacian(g).sum(axis=1), 0.0, atol=0)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def test_parse_graph6_k4():
    assert parse_graph6(b"C~") == SimpleGraph.complete(4)


def test_emit_graph6_k4():
    assert emit_graph6(SimpleGraph.complete(4)) == b"C~"


def test_graph6_round_trip_corpus():
    rng = random.Random(99)
    for _ in range(300):
        g = random_graph(rng.randint(2, 20), rng, 0.5)
        text = emit_graph6(g)
        assert parse_graph6(text) == g
        assert emit_graph6(parse_graph6(text)) == text


def test_graph6_header_stripped():
    assert parse_graph6(b">>graph6<<C~\n") == SimpleGraph.complete(4)


@pytest.mark.parametrize("bad", [b"C~~", b"C", b"", b"C\x1f", b"~??", b"@", b"D?"])
def test_parse_graph6_rejects(bad):
    # too long, truncated, empty, byte out of range, long form, n = 1, short read
    with pytest.raises(ValueError):
        parse_graph6(bad)


def test_parse_graph6_rejects_nonzero_padding():
    # K2 plus one isolated vertex: n=3 has 3 data bits, 3 padding bits that must be 0
    good = emit_graph6(SimpleGraph.from_edges(3, [(0, 1)]))
    bad = good[:-1] + bytes([63 + ((good[-1] - 63) | 0b001)])
    with pytest.raises(ValueError):
        parse_graph6(bad)


@given(st.integers(2, 30), st.integers(0, 2**60 - 1))
@settings(max_examples=150, deadline=None)
def test_graph6_round_trip_property(n, seed):
    g = random_graph(n, random.Random(seed))
    assert parse_graph6(emit_graph6(g)) == g


# ---------------------------------------------------------------------------
# module invariants
# ---------------------------------------------------------------------------

def test_high_ecc_pair_bound_exhaustive_n5():
    # |D(G)| + |D(G^c)| <= n over every labeled graph on 5 vertices
    from lapspread.enumeration import mask_to_graph
    for mask in range(1 << 10):
        g = mask_to_graph(5, mask)
        assert len(high_ecc_set(g)) + len(high_ecc_set(complement(g))) <= 5


def test_ecc3_implies_complement_ecc2():
    # finite eccentricity >= 3 forces complement eccentricity <= 2
    for n in (5, 6, 7):
        it = GraphClassIter(n, Filter("connected"), dedup=True)
        for g in enumerate_classes(it):
            ecc = eccentricities(g)
            ecc_c = eccentricities(complement(g))
            for v in range(n):
                if 3 <= ecc[v] < INFINITE:
                    assert ecc_c[v] <= 2


def test_simple_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph(1, (0,))
    with pytest.raises(ValueError):
        SimpleGraph(2, (1, 0))  # self-loop at 0
    with pytest.raises(ValueError):
        SimpleGraph(2, (2, 0))  # asymmetric
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(0, 3)])


def test_weighted_graph_validation():
    with pytest.raises(ValueError):
        WeightedGraph(np.array([[0.0, 1.5], [1.5, 0.0]]))
    with pytest.raises(ValueError):
        WeightedGraph(np.array([[0.0, 0.2], [0.3, 0.0]]))
    with pytest.raises(ValueError):
        WeightedGraph(np.array([[0.1, 0.2], [0.2, 0.0]]))
