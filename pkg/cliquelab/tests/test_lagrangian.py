import itertools
import unittest
from fractions import Fraction

import numpy as np

from cliquelab import graph, lagrangian
from cliquelab.cliques import enumerate_cliques
from cliquelab.graph import Graph
from cliquelab.spectral import NormalizationError, WeightVector


def poly_value(cs, x):
    """Clique polynomial at any real vector, straight from the clique list"""
    return float(np.sum(np.prod(x[cs.array], axis=1))) if cs.count else 0.0


class TestClosedForm(unittest.TestCase):
    def test_known_values(self):
        cases = [
            (graph.complete_graph(3), 2, Fraction(1, 3)),
            (graph.complete_graph(4), 3, Fraction(1, 16)),
            (graph.multipartite_regular_graph(3, 2), 3, Fraction(1, 27)),
            (graph.cycle_graph(5), 2, Fraction(1, 4)),
        ]
        for g, t, expected in cases:
            result = lagrangian.mu_closed_form(g, t)
            self.assertEqual(result.mu_exact, expected, msg=g)
            self.assertAlmostEqual(result.mu, float(expected))
            cs = enumerate_cliques(g, t)
            self.assertAlmostEqual(lagrangian.clique_poly(cs, result.witness), result.mu)

    def test_t_above_omega(self):
        result = lagrangian.mu_closed_form(graph.cycle_graph(5), 3)
        self.assertEqual(result.mu, 0.0)
        self.assertEqual(result.support_size, 5)
        self.assertEqual(result.to_dict()["mu_exact"], "0/1")

    def test_witness_on_maximum_clique(self):
        result = lagrangian.mu_closed_form(graph.unicyclic_girth3_graph(6), 2)
        self.assertEqual(result.witness.support.tolist(), [0, 1, 2])
        self.assertEqual(result.to_dict()["mu_exact"], "1/3")


class TestCliquePoly(unittest.TestCase):
    def test_simplex_required(self):
        cs = enumerate_cliques(graph.complete_graph(3), 2)
        self.assertRaises(NormalizationError, lagrangian.clique_poly, cs, WeightVector.uniform(3, 2))
        self.assertAlmostEqual(lagrangian.clique_poly(cs, WeightVector.uniform(3)), 1 / 3)

    def test_gradient(self):
        cs = enumerate_cliques(graph.complete_graph(3), 3)
        grad = lagrangian.clique_poly_gradient(cs, np.array([0.2, 0.3, 0.5]))
        np.testing.assert_allclose(grad, [0.15, 0.1, 0.06])

    def test_gradient_matches_central_differences(self):
        h = 1e-6
        cases = [(graph.complete_graph(5), 3)]
        cases += [
            (graph.erdos_renyi_graph(9, 0.6, seed=seed), t) for seed in range(3) for t in (2, 3, 4)
        ]
        for g, t in cases:
            cs = enumerate_cliques(g, t)
            rng = np.random.Generator(np.random.PCG64(t))
            for _ in range(100):
                x = rng.uniform(0.0, 1.0, g.n)
                grad = lagrangian.clique_poly_gradient(cs, x)
                for v in range(g.n):
                    step = np.zeros(g.n)
                    step[v] = h
                    diff = (poly_value(cs, x + step) - poly_value(cs, x - step)) / (2 * h)
                    self.assertAlmostEqual(grad[v], diff, delta=1e-6, msg=(g, t, v))

    def test_project_simplex(self):
        np.testing.assert_allclose(lagrangian.project_simplex([0.5, 0.5]), [0.5, 0.5])
        np.testing.assert_allclose(lagrangian.project_simplex([2.0, 0.0]), [1.0, 0.0])
        np.testing.assert_allclose(lagrangian.project_simplex([0.0, 0.0, 0.0]), [1 / 3] * 3)
        projected = lagrangian.project_simplex([0.9, -0.4, 0.8, 0.1])
        self.assertAlmostEqual(projected.sum(), 1.0)
        self.assertTrue((projected >= 0).all())


class TestShiftLocal(unittest.TestCase):
    def test_ends_on_clique(self):
        for seed in range(10):
            g = graph.erdos_renyi_graph(10, 0.5, seed=seed)
            for t in (2, 3):
                cs = enumerate_cliques(g, t)
                result = lagrangian.mu_shift_local(cs, WeightVector.uniform(g.n))
                support = result.witness.support.tolist()
                self.assertTrue(
                    all(g.has_edge(u, v) for u, v in itertools.combinations(support, 2))
                )
                closed = lagrangian.mu_closed_form(g, t).mu
                self.assertLessEqual(result.mu, closed + 1e-12)
                # each shift and the final averaging never lower the value
                diffs = np.diff(result.history)
                self.assertTrue((diffs >= -1e-12).all(), msg=result.history)
                self.assertEqual(result.mu, result.history[-1])

    def test_needs_graph(self):
        cs = enumerate_cliques(graph.complete_graph(3), 2)
        cs.graph = None
        self.assertRaises(ValueError, lagrangian.mu_shift_local, cs, WeightVector.uniform(3))

    def test_empty_graph(self):
        result = lagrangian.mu_shift_local(enumerate_cliques(Graph(0), 2), WeightVector.uniform(0))
        self.assertEqual(result.mu, 0.0)
        self.assertEqual(result.support_size, 0)
        self.assertEqual(result.history, [0.0])

    def test_path_shifts_onto_edge(self):
        g = graph.path_graph(3)
        result = lagrangian.mu_shift_local(enumerate_cliques(g, 2), WeightVector.uniform(3))
        self.assertEqual(result.support_size, 2)
        self.assertAlmostEqual(result.mu, 0.25)


class TestGradient(unittest.TestCase):
    def test_matches_closed_form(self):
        # 51 seeded graphs with 6 to 12 vertices
        for idx, p in enumerate((0.3, 0.5, 0.7)):
            for seed in range(17):
                g = graph.erdos_renyi_graph(6 + seed % 7, p, seed=100 * idx + seed)
                for t in (2, 3):
                    cs = enumerate_cliques(g, t)
                    expected = lagrangian.mu_closed_form(g, t).mu
                    result = lagrangian.mu_gradient(cs, seed=seed)
                    self.assertAlmostEqual(result.mu, expected, delta=1e-6, msg=(g, t))
                    self.assertLessEqual(result.mu, expected + 1e-9)
                    self.assertAlmostEqual(result.witness.values.sum(), 1.0)
                    shifted = lagrangian.mu_shift_local(cs, WeightVector.uniform(g.n))
                    self.assertLessEqual(shifted.mu, expected + 1e-12)

    def test_default_restarts(self):
        cs = enumerate_cliques(graph.complete_graph(4), 2)
        self.assertEqual(lagrangian.default_restarts(cs), 64)
        cs = enumerate_cliques(graph.complete_graph(9), 2)
        self.assertEqual(lagrangian.default_restarts(cs), lagrangian.MAX_DEFAULT_RESTARTS)

    def test_empty_graph(self):
        cs = enumerate_cliques(Graph(0), 2)
        self.assertEqual(lagrangian.mu_gradient(cs).mu, 0.0)
        self.assertRaises(
            ValueError, lagrangian.mu_gradient, enumerate_cliques(Graph(2), 2), restarts=0
        )


if __name__ == "__main__":
    unittest.main()
