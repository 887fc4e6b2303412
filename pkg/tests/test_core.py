from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypermatch import (
    DomainError,
    Hypergraph,
    build_space_barrier,
    complete_hypergraph,
    degree,
    from_json,
    induced,
    is_independent,
    link,
    min_l_degree,
    remove,
    to_json,
)
from hypermatch.rng import random_hypergraph

seeds = st.integers(0, 10**9)


def brute_degree(H, T):
    # Independent oracle: scan raw edge tuples with set containment.
    t = set(T)
    return sum(1 for e in H.edges if t <= set(e))


class TestConstruction:
    def test_rejects_duplicate_edges(self):
        with pytest.raises(DomainError, match="duplicate"):
            Hypergraph(5, 2, [(0, 1), (1, 0)])

    def test_rejects_wrong_arity(self):
        with pytest.raises(DomainError):
            Hypergraph(5, 3, [(0, 1)])
        with pytest.raises(DomainError):
            Hypergraph(5, 3, [(0, 1, 1)])

    def test_rejects_out_of_range_vertices(self):
        with pytest.raises(DomainError):
            Hypergraph(3, 2, [(0, 3)])
        with pytest.raises(DomainError):
            Hypergraph(3, 2, [(-1, 0)])

    def test_rejects_bad_shape_parameters(self):
        with pytest.raises(DomainError):
            Hypergraph(-1, 2, [])
        with pytest.raises(DomainError):
            Hypergraph(3, 0, [])

    def test_immutable(self):
        H = complete_hypergraph(4, 2)
        with pytest.raises(AttributeError):
            H.n = 5

    def test_edges_canonically_ordered(self):
        H = Hypergraph(4, 2, [(3, 2), (1, 0)])
        assert H.edges == ((0, 1), (2, 3))


class TestDegree:
    def test_complete_graph_vertex_degree(self):
        assert degree(complete_hypergraph(4, 2), (0,)) == 3

    def test_barrier_far_side_vertex(self):
        # Edges through a non-cover vertex u all meet W = {0, 1}:
        # C(8,2) - C(6,2) of them.
        H = build_space_barrier(9, 3, 3, 2)
        assert comb(8, 2) - comb(6, 2) == 13
        assert degree(H, (5,)) == 13
        assert brute_degree(H, (5,)) == 13

    def test_empty_set_degree_is_edge_count(self, fano):
        assert degree(fano, ()) == fano.num_edges

    def test_oversized_set_rejected(self, fano):
        with pytest.raises(DomainError, match="larger than uniformity"):
            degree(fano, (0, 1, 2, 3))


class TestMinLDegree:
    def test_complete_graph(self):
        for n, k in [(6, 2), (6, 3), (7, 3)]:
            assert min_l_degree(complete_hypergraph(n, k), 1) == comb(n - 1, k - 1)

    def test_barrier_pair_minimum(self):
        H = build_space_barrier(9, 3, 3, 2)
        brute = min(brute_degree(H, t) for t in combinations(range(9), 2))
        assert brute == 2
        assert min_l_degree(H, 2) == 2

    def test_barrier_vertex_minimum(self):
        H = build_space_barrier(9, 3, 3, 2)
        brute = min(brute_degree(H, (v,)) for v in range(9))
        assert brute == 13
        assert min_l_degree(H, 1) == 13

    def test_l_zero_is_edge_count(self, fano):
        assert min_l_degree(fano, 0) == 7

    def test_out_of_range(self, fano):
        with pytest.raises(DomainError):
            min_l_degree(fano, 4)
        with pytest.raises(DomainError):
            min_l_degree(fano, -1)


class TestLink:
    def test_complete_link(self):
        L = link(complete_hypergraph(4, 3), (0,))
        assert L.k == 2 and L.n == 4
        assert set(L.edges) == {(1, 2), (2, 3), (1, 3)}

    def test_fano_link_is_three_disjoint_pairs(self, fano):
        for v in range(7):
            L = link(fano, (v,))
            assert L.num_edges == 3 == degree(fano, (v,))
            covered = [u for e in L.edges for u in e]
            assert len(covered) == len(set(covered)) == 6

    def test_link_of_uncontained_set_is_empty(self, fano):
        # No line contains two points twice over: a non-collinear pair links
        # to a single point, and pairs reaching degree 0 do not exist here,
        # so use a set with no extension instead.
        H = Hypergraph(5, 3, [(0, 1, 2)])
        assert link(H, (3, 4)).num_edges == 0

    def test_link_size_guard(self, fano):
        with pytest.raises(DomainError):
            link(fano, (0, 1, 2))


class TestSubgraphs:
    def test_induced_complete(self):
        sub = induced(complete_hypergraph(6, 3), (0, 1, 2, 4, 5))
        assert sub.graph == complete_hypergraph(5, 3)
        assert sub.vertices == (0, 1, 2, 4, 5)

    def test_remove_fano_point(self, fano):
        assert remove(fano, (0,)).graph.num_edges == 4

    def test_induced_empty(self, fano):
        assert induced(fano, ()).graph.num_edges == 0

    def test_remove_everything_in_stages(self, fano):
        first = remove(fano, (0, 1, 2)).graph
        rest = remove(first, tuple(range(first.n))).graph
        assert rest.n == 0 and rest.num_edges == 0

    def test_lift_recovers_host_edges(self, fano):
        sub = induced(fano, (1, 2, 3, 4, 5, 6))
        lifted = sub.lift_edges(sub.graph.edges)
        assert set(lifted) <= set(fano.edges)
        assert len(lifted) == sub.graph.num_edges


class TestIndependence:
    def test_barrier_far_side_independent(self):
        H = build_space_barrier(9, 3, 3, 2)
        assert is_independent(H, tuple(range(2, 9)))

    def test_complete_graph_edge_not_independent(self):
        assert not is_independent(complete_hypergraph(6, 3), (1, 3, 5))

    def test_small_sets_trivially_independent(self, fano):
        assert is_independent(fano, (2, 4))


class TestSerialization:
    def test_round_trip_identity(self, fano):
        assert from_json(to_json(fano)) == fano
        assert to_json(from_json(to_json(fano))) == to_json(fano)

    def test_rejects_garbage(self):
        with pytest.raises(DomainError):
            from_json("not json at all {{{")
        with pytest.raises(DomainError):
            from_json("[1,2,3]")
        with pytest.raises(DomainError):
            from_json('{"n": 3, "k": 2}')

    def test_rejects_duplicate_edges_in_file(self):
        with pytest.raises(DomainError):
            from_json('{"n": 4, "k": 2, "edges": [[0,1],[0,1]]}')


@given(seed=seeds, n=st.integers(3, 8), k=st.integers(2, 3))
def test_degree_equals_link_edge_count(seed, n, k):
    if k > n:
        return
    H = random_hypergraph(n, k, Fraction(1, 2), seed)
    for size in range(k):
        for s in combinations(range(n), size):
            assert degree(H, s) == link(H, s).num_edges


@given(seed=seeds, n=st.integers(4, 8), k=st.integers(2, 3))
def test_min_degree_cascade(seed, n, k):
    # If the minimum l-degree is at least c * C(n-l, k-l) then every smaller
    # l' has minimum degree at least c * C(n-l', k-l'), with c exact.
    H = random_hypergraph(n, k, Fraction(1, 2), seed)
    for l in range(1, k + 1):
        denom = comb(n - l, k - l)
        if denom == 0:
            continue
        c = Fraction(min_l_degree(H, l), denom)
        for lp in range(l):
            assert min_l_degree(H, lp) >= c * comb(n - lp, k - lp)


@given(seed=seeds)
def test_serialization_round_trip_random(seed):
    H = random_hypergraph(7, 3, Fraction(1, 2), seed)
    assert from_json(to_json(H)) == H
