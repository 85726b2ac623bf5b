import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from fracture.corpus import gnp, random_graphs
from fracture.exceptions import DuplicateEdge, ParseError, SelfLoop, UnknownNode
from fracture.graph import (
    DENSE_LIMIT,
    Graph,
    augmented_signless,
    components_bfs,
    incidence,
    laplacian,
    nuclear_norm_identity,
    parse_edge_list,
    parse_gml,
    parse_pajek,
    read_graph,
    remove_nodes,
    signless_laplacian,
    write_edge_list,
)
from oracles import dense_matrices, edge_pairs, lcc_edges, union_find_components


class TestParsing:
    def test_path(self):
        g = parse_edge_list("0 1\n1 2")
        assert (g.n, g.m) == (3, 2)
        assert g.node_ids == (0, 1, 2)

    def test_comments_blank_lines_and_header(self):
        g = parse_edge_list("# a comment\n\n# nodes: 5\n0 1\n\n3 4\n")
        assert g.node_ids == (0, 1, 2, 3, 4)
        assert g.m == 2

    def test_non_contiguous_ids(self):
        g = parse_edge_list("10 3\n3 700")
        assert g.node_ids == (3, 10, 700)
        assert g.neighbors(3) == [10, 700]

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            parse_edge_list("0 0")

    @pytest.mark.parametrize("text", ["0 1\n0 1", "0 1\n1 0"])
    def test_duplicate_either_orientation(self, text):
        with pytest.raises(DuplicateEdge):
            parse_edge_list(text)

    @pytest.mark.parametrize("text", ["0 x", "0 1 2", "0", "1.5 2", "-1 2", "# nodes: many"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_edge_list(text)

    def test_stream_input(self):
        assert parse_edge_list(io.StringIO("0 1\n")).m == 1

    def test_pajek(self):
        g = parse_pajek('*Vertices 4\n1 "a"\n2 "b"\n3 "c"\n4 "d"\n*Edges\n1 2\n2 3 1.0\n')
        assert g.node_ids == (0, 1, 2, 3)
        assert sorted(g.edge_ids()) == [(0, 1), (1, 2)]

    def test_pajek_reciprocal_arcs_collapse(self):
        g = parse_pajek("*Vertices 3\n*Arcs\n1 2\n2 1\n2 3\n")
        assert g.m == 2

    def test_pajek_duplicate_edges_rejected(self):
        with pytest.raises(DuplicateEdge):
            parse_pajek("*Vertices 3\n*Edges\n1 2\n2 1\n")

    @pytest.mark.parametrize(
        "text",
        ["*Edges\n1 2\n", "*Vertices 2\n*Edges\n1 3\n", "*Vertices 2\n*Matrix\n", "1 2\n*Vertices 2\n"],
    )
    def test_pajek_errors(self, text):
        with pytest.raises(ParseError):
            parse_pajek(text)

    def test_gml(self):
        text = 'graph [\n  node [ id 0 label "a" ]\n  node [ id 1 ]\n  node [ id 2 ]\n  edge [ source 0 target 1 ]\n]\n'
        g = parse_gml(text)
        assert (g.n, g.m) == (3, 1)

    def test_read_graph_by_extension(self, tmp_path):
        (tmp_path / "g.net").write_text("*Vertices 3\n*Edges\n1 3\n")
        (tmp_path / "g.txt").write_text("0 2\n")
        assert list(read_graph(tmp_path / "g.net").edge_ids()) == [(0, 2)]
        assert read_graph(tmp_path / "g.txt").node_ids == (0, 2)
        assert read_graph(tmp_path / "g.txt", format="edgelist").m == 1

    @given(graphs())
    def test_write_then_parse(self, g):
        relabelled = Graph(range(g.n), [(g.position(u), g.position(v)) for u, v in g.edge_ids()])
        assert parse_edge_list(write_edge_list(relabelled)) == relabelled


class TestRemoval:
    def test_triangle(self, triangle):
        h = remove_nodes(triangle, {0})
        assert (h.n, h.m) == (2, 1)
        assert h.node_ids == (1, 2)

    def test_path_middle(self, path3):
        h = remove_nodes(path3, {1})
        assert (h.n, h.m) == (2, 0)

    def test_empty_removal_is_identity(self, path3):
        assert remove_nodes(path3, set()) == path3

    def test_unknown(self, path3):
        with pytest.raises(UnknownNode):
            remove_nodes(path3, {7})

    @given(graphs(min_nodes=1), st.data())
    def test_counts(self, g, data):
        r = data.draw(st.sets(st.sampled_from(g.node_ids)))
        h = remove_nodes(g, r)
        incident = sum(1 for u, v in edge_pairs(g) if u in r or v in r)
        assert h.n == g.n - len(r)
        assert h.m == g.m - incident
        assert set(h.node_ids) == set(g.node_ids) - r


class TestMatrices:
    def test_four_node_laplacian(self, four_node):
        expected = [[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
        np.testing.assert_array_equal(laplacian(four_node), expected)

    def test_single_edge_signless(self):
        np.testing.assert_array_equal(signless_laplacian(parse_edge_list("0 1")), [[1, 1], [1, 1]])

    def test_empty_graph(self):
        g = Graph(range(3))
        np.testing.assert_array_equal(laplacian(g), np.zeros((3, 3)))
        np.testing.assert_array_equal(signless_laplacian(g), np.zeros((3, 3)))
        np.testing.assert_array_equal(augmented_signless(g), np.zeros((4, 4)))

    def test_augmented_single_edge(self):
        np.testing.assert_array_equal(augmented_signless(parse_edge_list("0 1")), [[1, 1, 1], [1, 1, 1], [1, 1, 0]])

    def test_augmented_matches_definition(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            g = gnp(8, 0.4, rng)
            a, d = dense_matrices(g)
            ones = np.ones(g.n, dtype=np.int64)
            deg = a @ ones
            expected = np.block([[d + a, deg[:, None]], [deg[None, :], np.zeros((1, 1), dtype=np.int64)]])
            np.testing.assert_array_equal(augmented_signless(g), expected)

    def test_incidence_orientation(self, path3):
        np.testing.assert_array_equal(incidence(path3), [[1, 0], [-1, 1], [0, -1]])

    def test_integer_dtype(self, path3):
        for mat in (laplacian(path3), signless_laplacian(path3), augmented_signless(path3), incidence(path3)):
            assert np.issubdtype(mat.dtype, np.integer)

    def test_sparse_above_limit(self):
        g = Graph(range(DENSE_LIMIT + 1), [(i, i + 1) for i in range(DENSE_LIMIT)])
        lap = laplacian(g)
        assert hasattr(lap, "tocsr")
        assert lap.shape == (DENSE_LIMIT + 1, DENSE_LIMIT + 1)
        assert not np.any(lap @ np.ones(g.n))

    @settings(max_examples=200)
    @given(graphs())
    def test_identities(self, g):
        lap = laplacian(g, sparse=False)
        a, d = dense_matrices(g)
        np.testing.assert_array_equal(lap, d - a)
        np.testing.assert_array_equal(signless_laplacian(g, sparse=False), d + a)
        np.testing.assert_array_equal(lap, lap.T)
        assert not np.any(lap @ np.ones(g.n, dtype=np.int64))
        b = incidence(g, sparse=False)
        np.testing.assert_array_equal(b @ b.T, lap)
        if g.m:
            assert np.all((b == 1).sum(axis=0) == 1) and np.all((b == -1).sum(axis=0) == 1)
        assert np.trace(lap) == 2 * g.m

    def test_bbt_up_to_200(self):
        for g in random_graphs(30, n_max=200, seed=5):
            b = incidence(g, sparse=False)
            np.testing.assert_array_equal(b @ b.T, laplacian(g, sparse=False))


class TestComponents:
    def test_four_node(self, four_node):
        comps = components_bfs(four_node)
        assert comps.components == (frozenset({0, 1}), frozenset({2}), frozenset({3}))
        assert comps.sizes == (2, 1, 1)
        assert comps.edge_counts == (1, 0, 0)

    def test_connected(self, triangle):
        assert components_bfs(triangle).sizes == (3,)

    def test_edgeless(self):
        comps = components_bfs(Graph(range(5)))
        assert comps.sizes == (1,) * 5
        assert [min(c) for c in comps.components] == [0, 1, 2, 3, 4]

    def test_tie_order(self):
        g = parse_edge_list("5 6\n0 9\n2 3\n3 4")
        comps = components_bfs(g)
        assert comps.components == (frozenset({2, 3, 4}), frozenset({0, 9}), frozenset({5, 6}))

    @settings(max_examples=200)
    @given(graphs())
    def test_partition_matches_union_find(self, g):
        comps = components_bfs(g)
        assert list(comps.components) == union_find_components(g)
        assert sum(comps.edge_counts) == g.m
        assert comps.edge_counts == tuple(lcc_edges(g, c) for c in comps.components)


class TestNuclearNorm:
    def test_single_edge(self):
        total, two_m = nuclear_norm_identity(parse_edge_list("0 1"))
        assert total == pytest.approx(2.0, abs=1e-12) and two_m == 2.0

    def test_random(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            g = gnp(20, 0.3, rng)
            total, two_m = nuclear_norm_identity(g)
            assert two_m == 2 * len(edge_pairs(g))
            assert total == pytest.approx(two_m, rel=1e-12, abs=1e-9)

    def test_large_uses_trace(self):
        g = Graph(range(600), [(i, i + 1) for i in range(599)])
        assert nuclear_norm_identity(g) == (1198.0, 1198.0)
