import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from fracgap.graph import (Graph, Graph6Error, UnsupportedSize, canonical_form, complete, components,
                           cycle, disjoint_union, encode_graph6, enumerate_all, enumerate_connected,
                           gen_disjoint_triangles, gen_equality_small, gen_triangle_star, iter_unions,
                           odd_and_isolated, parse_graph6, path, read_graph6_lines, star)

from conftest import graphs


def nx_graph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(nx_graph(g), header=False).decode().strip()


class TestGraph:
    def test_edges_normalized(self):
        g = Graph(3, ((2, 0), (1, 0)))
        assert g.edges == ((0, 1), (0, 2))
        assert g.adj == (0b110, 0b001, 0b001)

    @pytest.mark.parametrize("edges", [((0, 0),), ((0, 3),), ((0, 1), (1, 0)), ((-1, 0),)])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ValueError):
            Graph(3, edges)

    def test_hashable_and_equal(self):
        assert Graph(3, ((0, 1),)) == Graph(3, ((1, 0),))
        assert len({Graph(3, ((0, 1),)), Graph(3, ((1, 0),))}) == 1


class TestGraph6:
    def test_k3(self):
        assert parse_graph6("Bw") == complete(3)
        assert encode_graph6(complete(3)) == "Bw"

    def test_k1(self):
        assert parse_graph6("@") == Graph(1)
        assert encode_graph6(Graph(1)) == "@"

    def test_header_and_whitespace(self):
        assert parse_graph6(">>graph6<<Bw\n") == complete(3)

    def test_byte_below_63(self):
        with pytest.raises(Graph6Error) as exc:
            parse_graph6("B\x3e")
        assert exc.value.offset == 1

    def test_truncated(self):
        with pytest.raises(Graph6Error):
            parse_graph6("D")

    def test_trailing_garbage(self):
        with pytest.raises(Graph6Error) as exc:
            parse_graph6("Bww")
        assert exc.value.offset == 2

    def test_too_large(self):
        with pytest.raises(UnsupportedSize):
            encode_graph6(Graph(2001))

    def test_line_numbers(self):
        with pytest.raises(Graph6Error, match="line 3"):
            list(read_graph6_lines(["Bw", "", "B!"]))

    @given(graphs(max_n=12))
    def test_matches_networkx_encoder(self, g):
        assert encode_graph6(g) == nx_graph6(g)

    def test_long_size_form(self):
        g = path(70)
        s = encode_graph6(g)
        assert s == nx_graph6(g)
        assert parse_graph6(s) == g

    def test_round_trip_all_connected_upto6(self):
        for n in range(1, 7):
            for g in enumerate_connected(n):
                assert parse_graph6(encode_graph6(g)) == g


class TestComponents:
    def test_triangle_star_minus_center(self):
        p = components(gen_triangle_star(2), [0])
        assert (p.odd, p.isolated, p.big_odd) == (3, 1, 2)

    def test_k3(self):
        p = components(complete(3))
        assert (p.odd, p.isolated, p.big_odd) == (1, 0, 1)

    def test_two_triangles(self):
        p = components(gen_disjoint_triangles(2))
        assert (p.odd, p.isolated, p.big_odd) == (2, 0, 2)

    def test_removed_out_of_range(self):
        with pytest.raises(ValueError):
            components(complete(3), [5])

    @given(graphs(max_n=9), st.data())
    def test_partition_properties(self, g, data):
        removed = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
        p = components(g, removed)
        covered = [v for c in p.comps for v in c]
        assert sorted(covered) == sorted(set(range(g.n)) - removed)
        assert p.odd - p.isolated == p.big_odd >= 0
        h = nx_graph(g)
        h.remove_nodes_from(removed)
        assert sorted(map(sorted, p.comps)) == sorted(map(sorted, nx.connected_components(h)))
        mask = sum(1 << v for v in range(g.n) if v not in removed)
        assert odd_and_isolated(g.adj, mask) == (p.odd, p.isolated)


class TestCanonicalForm:
    @settings(max_examples=200)
    @given(graphs(max_n=9), st.randoms(use_true_random=False))
    def test_relabeling_invariant(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        h = Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))
        assert canonical_form(g) == canonical_form(h)

    @given(graphs(max_n=8))
    def test_isomorphic_to_input(self, g):
        assert nx.is_isomorphic(nx_graph(g), nx_graph(canonical_form(g)))

    def test_symmetric_graphs_fast(self):
        # twin pruning keeps these from exploding
        for g in (complete(9), Graph(9), star(8), disjoint_union(complete(4), complete(5))):
            assert canonical_form(g).m == g.m


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
    def test_counts(self, n, count):
        assert len(list(enumerate_connected(n))) == count

    def test_n3_is_p3_and_k3(self):
        gs = list(enumerate_connected(3))
        assert sorted(g.m for g in gs) == [2, 3]

    def test_all_connected(self):
        for n in range(1, 8):
            assert all(g.is_connected() and g.n == n for g in enumerate_connected(n))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_pairwise_nonisomorphic_against_atlas(self, n):
        ours = [nx_graph(g) for g in enumerate_connected(n)]
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
        assert len(ours) == len(atlas)
        for h in atlas:
            assert sum(nx.is_isomorphic(h, g) for g in ours) == 1

    def test_atlas_n7_by_canonical_form(self):
        ours = {canonical_form(g) for g in enumerate_connected(7)}
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7 and nx.is_connected(h)]
        found = {canonical_form(Graph(7, tuple(h.edges()))) for h in atlas}
        assert found == ours

    @pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
    def test_all_graph_counts(self, n, count):
        assert len(list(enumerate_all(n))) == count

    def test_out_of_range(self):
        with pytest.raises(UnsupportedSize, match="graph6 file"):
            enumerate_connected(9)
        with pytest.raises(UnsupportedSize):
            enumerate_connected(0)


class TestUnions:
    def test_union_counts_match_all_graphs(self):
        levels = {n: tuple(enumerate_connected(n)) for n in range(1, 7)}
        by_n = {}
        for g in iter_unions(levels, 6):
            by_n[g.n] = by_n.get(g.n, 0) + 1
        assert by_n == {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}

    def test_disjoint_union(self):
        g = disjoint_union(complete(3), complete(2))
        assert g.n == 5 and g.edges == ((0, 1), (0, 2), (1, 2), (3, 4))


class TestGenerators:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_triangle_star_structure(self, k):
        g = gen_triangle_star(k)
        assert g.n == 3 * k + 2 and g.is_connected()
        p = components(g, [0])
        sizes = sorted(len(c) for c in p.comps)
        assert sizes == [1] + [3] * k
        for c in p.comps:
            if len(c) == 3:
                assert all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
                assert sum(g.has_edge(0, v) for v in c) == 1

    def test_equality_small(self):
        c5, k2k3 = gen_equality_small()
        assert c5 == cycle(5)
        assert k2k3.n == 5 and k2k3.is_connected() and k2k3.m == 5

    @pytest.mark.parametrize("k", range(1, 5))
    def test_disjoint_triangles(self, k):
        g = gen_disjoint_triangles(k)
        assert g.n == 3 * k and len(components(g).comps) == k

    def test_bad_k(self):
        with pytest.raises(ValueError):
            gen_triangle_star(0)
        with pytest.raises(ValueError):
            gen_disjoint_triangles(0)
