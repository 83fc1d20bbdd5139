import os
import shutil
import tempfile
import unittest

from cliquelab import graph
from cliquelab.parsing import (
    GraphParseError,
    SelfLoopError,
    VertexRangeError,
    infer_format,
    load_graph,
    save_graph,
)


class TestParsing(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def _write(self, name, text):
        path = os.path.join(self.temp_dir, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def test_infer_format(self):
        self.assertEqual(infer_format("g.col"), "dimacs_col")
        self.assertEqual(infer_format("G.DIMACS"), "dimacs_col")
        self.assertEqual(infer_format("g.txt"), "edge_list")

    def test_edge_list_first_appearance(self):
        path = self._write("g.txt", "# a triangle\nb c\nc a\n\na b  # closing edge\n")
        g = load_graph(path)
        self.assertEqual(g.n, 3)
        # b -> 0, c -> 1, a -> 2
        self.assertEqual(g.edges, frozenset([(0, 1), (1, 2), (0, 2)]))

    def test_edge_list_duplicates_collapse(self):
        path = self._write("g.txt", "0 1\n1 0\n0 1\n")
        self.assertEqual(load_graph(path).edge_count, 1)

    def test_edge_list_vertices_header(self):
        path = self._write("g.txt", "# vertices: 5\n3 4\n")
        g = load_graph(path)
        self.assertEqual(g.n, 5)
        self.assertEqual(g.edges, frozenset([(3, 4)]))

    def test_edge_list_errors(self):
        path = self._write("bad.txt", "0 1\n1 2 3\n")
        with self.assertRaises(GraphParseError) as ctx:
            load_graph(path)
        self.assertEqual(ctx.exception.lineno, 2)
        self.assertIn("line 2", str(ctx.exception))

        self.assertRaises(SelfLoopError, load_graph, self._write("loop.txt", "1 1\n"))
        self.assertRaises(
            VertexRangeError, load_graph, self._write("range.txt", "# vertices: 2\n0 2\n")
        )

    def test_dimacs(self):
        text = "c name: tiny\nc comment\np edge 4 2\ne 1 2\ne 3 4\n"
        g = load_graph(self._write("g.col", text))
        self.assertEqual(g.n, 4)
        self.assertEqual(g.name, "tiny")
        self.assertEqual(g.edges, frozenset([(0, 1), (2, 3)]))

    def test_dimacs_errors(self):
        self.assertRaises(
            GraphParseError, load_graph, self._write("a.col", "e 1 2\np edge 2 1\n")
        )
        self.assertRaises(GraphParseError, load_graph, self._write("b.col", "c nothing\n"))
        self.assertRaises(
            VertexRangeError, load_graph, self._write("c.col", "p edge 3 1\ne 0 1\n")
        )
        self.assertRaises(
            SelfLoopError, load_graph, self._write("d.col", "p edge 3 1\ne 2 2\n")
        )
        self.assertRaises(
            GraphParseError, load_graph, self._write("e.col", "p edge 3 1\nx 1 2\n")
        )

    def test_dimacs_wrong_edge_count_is_tolerated(self):
        g = load_graph(self._write("g.col", "p edge 3 5\ne 1 2\n"))
        self.assertEqual(g.edge_count, 1)

    def test_missing_file(self):
        self.assertRaises(OSError, load_graph, os.path.join(self.temp_dir, "missing.txt"))

    def test_unknown_format(self):
        self.assertRaises(ValueError, load_graph, self._write("g.txt", "0 1\n"), "graphml")

    def test_save_and_load(self):
        # isolated vertex 5 must survive both formats
        g = graph.Graph(6, [(0, 1), (1, 2), (3, 4)], name="sample")
        for name in ("g.txt", "g.col"):
            path = os.path.join(self.temp_dir, name)
            save_graph(g, path)
            loaded = load_graph(path)
            self.assertEqual(loaded, g)
            self.assertEqual(loaded.name, "sample")

    def test_save_sorted_edge_lines(self):
        path = os.path.join(self.temp_dir, "g.txt")
        save_graph(graph.cycle_graph(4), path)
        with open(path) as f:
            lines = [line for line in f.read().splitlines() if not line.startswith("#")]
        self.assertEqual(lines, ["0 1", "0 3", "1 2", "2 3"])


if __name__ == "__main__":
    unittest.main()
