import unittest
from fractions import Fraction

import networkx as nx

from cliquelab import graph
from cliquelab.graph import Graph, GraphParameterError, GraphSpec


class TestGraph(unittest.TestCase):
    def test_edges_normalized(self):
        g = Graph(3, [(1, 0), (0, 1), (2, 1)])
        self.assertEqual(g.edges, frozenset([(0, 1), (1, 2)]))
        self.assertEqual(g.edge_count, 2)
        self.assertEqual(g.neighbors(1), (0, 2))
        self.assertTrue(g.has_edge(1, 0))
        self.assertFalse(g.has_edge(0, 2))
        self.assertFalse(g.has_edge(1, 1))

    def test_invalid_edges(self):
        self.assertRaises(GraphParameterError, Graph, 3, [(1, 1)])
        self.assertRaises(GraphParameterError, Graph, 3, [(0, 3)])
        self.assertRaises(GraphParameterError, Graph, -1)

    def test_degree_sum(self):
        g = graph.petersen_graph()
        self.assertEqual(sum(g.degree(v) for v in range(g.n)), 2 * g.edge_count)
        self.assertEqual(g.edge_count, 15)

    def test_relabel(self):
        g = graph.path_graph(3)
        h = g.relabel([2, 0, 1])
        self.assertEqual(h.edges, frozenset([(0, 2), (0, 1)]))
        self.assertRaises(GraphParameterError, g.relabel, [0, 0, 1])

    def test_with_edge_leaves_original(self):
        g = graph.path_graph(3)
        h = g.with_edge(0, 2)
        self.assertEqual(g.edge_count, 2)
        self.assertEqual(h.edge_count, 3)

    def test_adjacency_matrix(self):
        adj = graph.cycle_graph(4).adjacency_matrix()
        self.assertTrue((adj == adj.T).all())
        self.assertEqual(adj.sum(), 8)
        self.assertEqual(adj[0, 2], 0)

    def test_networkx_roundtrip(self):
        g = graph.turan_graph(7, 3)
        nxg = g.to_networkx()
        self.assertEqual(nxg.number_of_nodes(), 7)
        self.assertEqual(Graph.from_networkx(nxg), g)
        self.assertEqual(Graph.from_networkx(nx.complete_graph(4)), graph.complete_graph(4))


class TestGenerators(unittest.TestCase):
    def test_complete(self):
        self.assertEqual(graph.complete_graph(5).edge_count, 10)
        self.assertEqual(graph.complete_graph(0).n, 0)

    def test_cycle_and_path(self):
        self.assertEqual(graph.cycle_graph(5).edge_count, 5)
        self.assertEqual(graph.path_graph(1).edge_count, 0)
        self.assertRaises(GraphParameterError, graph.cycle_graph, 2)
        self.assertRaises(GraphParameterError, graph.path_graph, 0)

    def test_multipartite_regular(self):
        g = graph.multipartite_regular_graph(3, 2)
        self.assertEqual(g.n, 6)
        self.assertEqual(g.edge_count, 12)
        self.assertTrue(all(g.degree(v) == 4 for v in range(g.n)))

    def test_turan_part_sizes(self):
        g = graph.turan_graph(7, 3)
        # parts of sizes 3, 2, 2 leave 21 - 3 - 1 - 1 cross pairs
        self.assertEqual(g.edge_count, 16)
        self.assertRaises(GraphParameterError, graph.turan_graph, 2, 3)
        self.assertRaises(GraphParameterError, graph.turan_graph, 4, 0)

    def test_unicyclic_girth3(self):
        g = graph.unicyclic_girth3_graph(7)
        self.assertEqual(g.n, 7)
        self.assertEqual(g.edge_count, 7)
        self.assertTrue(g.has_edge(0, 1) and g.has_edge(1, 2) and g.has_edge(0, 2))
        self.assertRaises(GraphParameterError, graph.unicyclic_girth3_graph, 2)

    def test_erdos_renyi_deterministic(self):
        a = graph.erdos_renyi_graph(12, 0.5, seed=3)
        b = graph.erdos_renyi_graph(12, Fraction(1, 2), seed=3)
        self.assertEqual(a, b)
        self.assertEqual(graph.erdos_renyi_graph(6, 0, seed=1).edge_count, 0)
        self.assertEqual(graph.erdos_renyi_graph(6, 1, seed=1).edge_count, 15)

    def test_erdos_renyi_needs_seed(self):
        self.assertRaises(GraphParameterError, graph.erdos_renyi_graph, 5, 0.5, None)
        self.assertRaises(GraphParameterError, graph.erdos_renyi_graph, 5, 1.5, 0)


class TestGraphSpec(unittest.TestCase):
    def test_generate(self):
        g = graph.generate(GraphSpec("multipartite_regular", omega=2, s=3))
        self.assertEqual(g, graph.multipartite_regular_graph(2, 3))
        self.assertEqual(graph.generate(GraphSpec("petersen")).n, 10)

    def test_missing_parameter(self):
        with self.assertRaises(GraphParameterError) as ctx:
            graph.generate(GraphSpec("turan", n=6))
        self.assertIn("'r'", str(ctx.exception))

    def test_unknown_family(self):
        self.assertRaises(GraphParameterError, graph.generate, GraphSpec("wheel", n=5))

    def test_specs_hash_exactly(self):
        a = GraphSpec("erdos_renyi", n=5, p=Fraction(1, 3), seed=0)
        b = GraphSpec("erdos_renyi", n=5, p=Fraction(2, 6), seed=0)
        self.assertEqual(hash(a), hash(b))


if __name__ == "__main__":
    unittest.main()
