import unittest
from fractions import Fraction
from unittest import mock

from cliquelab import bounds, graph
from cliquelab.bounds import InconsistentBoundError, PreconditionError
from cliquelab.cliques import clique_number, count_cliques, enumerate_cliques
from cliquelab.spectral import ConvergenceError, rho_power_iteration
from cliquelab.stability import perturb_turan


def k_free_corpus():
    """100 seeded perturbed Turán graphs, each with the r it is K_(r+1)-free for"""
    return [
        (r, perturb_turan(12, r, 0.05 * (seed % 8), seed))
        for r in (3, 4)
        for seed in range(50)
    ]


class TestCliqueNumberBounds(unittest.TestCase):
    def test_thm1_rhs(self):
        self.assertAlmostEqual(bounds.thm1_rhs(3, 3, 27), 9.0)
        self.assertEqual(bounds.thm1_rhs(2, 3, 5), 0.0)
        self.assertEqual(bounds.thm1_rhs(4, 3, 0), 0.0)
        self.assertRaises(ValueError, bounds.thm1_rhs, 3, 1, 3)

    def test_omega_lower_bound(self):
        self.assertEqual(bounds.omega_lower_bound(1.0, 3, 1), 3)
        self.assertEqual(bounds.omega_lower_bound(9.0, 3, 27), 3)
        self.assertEqual(bounds.omega_lower_bound(0.0, 3, 0), 2)
        self.assertRaises(InconsistentBoundError, bounds.omega_lower_bound, 100.0, 3, 1)
        self.assertRaises(ValueError, bounds.omega_lower_bound, -1.0, 3, 1)

    def test_omega_lower_never_exceeds_omega(self):
        # 200 seeded graphs with 6 to 15 vertices
        for idx, p in enumerate((Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))):
            for seed in range(67 if idx < 2 else 66):
                g = graph.erdos_renyi_graph(6 + seed % 10, p, seed=1000 * idx + seed)
                omega = clique_number(g)
                for t in (2, 3):
                    cs = enumerate_cliques(g, t)
                    if cs.count == 0:
                        continue
                    rho = rho_power_iteration(cs).rho
                    lower = bounds.omega_lower_bound(rho, t, cs.count, n=g.n)
                    self.assertLessEqual(lower, omega, msg=(g, t))

    def test_report_has_no_violations(self):
        for seed in range(8):
            g = graph.erdos_renyi_graph(11, 0.6, seed=seed)
            for t in (2, 3):
                report = bounds.bounds_report(g, t)
                if report.clique_count_t:
                    self.assertLessEqual(report.omega_lower, report.omega_exact)
                    self.assertTrue(report.thm1_holds)
                self.assertEqual(report.violations(), [])

    def test_nikiforov(self):
        bound = bounds.nikiforov_omega_lower(2.0, 7)
        self.assertEqual(bound.exact, Fraction(7, 5))
        self.assertEqual(bound.ceiling, 2)
        self.assertEqual(bounds.nikiforov_omega_lower(3, 6).ceiling, 4)
        self.assertFalse(bounds.nikiforov_omega_lower(2.0, 2).feasible)
        self.assertRaises(ValueError, bounds.nikiforov_omega_lower, 1.0, 0)

    def test_unicyclic_triangle_beats_edge_bound(self):
        for n in range(4, 11):
            g = graph.unicyclic_girth3_graph(n)
            comparison = bounds.triangle_vs_edge_bound(g)
            self.assertAlmostEqual(comparison["rho_3"], 1.0, delta=1e-8)
            self.assertEqual(comparison["omega_lower_t3"], 3)
            if g.edge_count >= 5:
                self.assertLess(comparison["nikiforov_ceiling"], 3)
                self.assertTrue(comparison["tighter"])


class TestCountBounds(unittest.TestCase):
    def test_lemma2_equality_iff_constant_incidence(self):
        cases = [
            (graph.turan_graph(9, 3), 3),
            (graph.turan_graph(9, 3), 2),
            (graph.complete_graph(5), 3),
            (graph.multipartite_regular_graph(3, 2), 3),
            (graph.petersen_graph(), 2),
            (graph.unicyclic_girth3_graph(7), 3),
            (graph.path_graph(5), 2),
            (graph.turan_graph(8, 3), 2),
            (graph.erdos_renyi_graph(10, 0.5, seed=3), 2),
        ]
        for g, t in cases:
            report = bounds.bounds_report(g, t)
            self.assertTrue(report.lemma2_holds, msg=g)
            self.assertEqual(report.lemma2_equality, report.constant_incidence, msg=(g, t))

    def test_lemma2_check(self):
        check = bounds.lemma2_check(6, 3, 4.0, 8)
        self.assertTrue(check.holds and check.equality)
        check = bounds.lemma2_check(7, 3, 1.0, 1)
        self.assertTrue(check.holds)
        self.assertFalse(check.equality)

    def test_erdos_equality_on_turan(self):
        g = graph.turan_graph(6, 3)
        check = bounds.erdos_count_check(6, 3, 3, count_cliques(g, 3))
        self.assertTrue(check.holds and check.equality)
        self.assertEqual(check.rhs, 8.0)
        check = bounds.erdos_count_check(6, 3, 2, count_cliques(g, 2))
        self.assertTrue(check.equality)

    def test_erdos_on_perturbed_turan(self):
        for r, g in k_free_corpus():
            for t in range(1, r + 1):
                check = bounds.erdos_count_check(g.n, r, t, count_cliques(g, t))
                self.assertTrue(check.holds, msg=(g, t))


class TestSos(unittest.TestCase):
    def test_cycle(self):
        check = bounds.sos_check(graph.cycle_graph(5), 2, 2, 1)
        self.assertTrue(check.holds)
        self.assertAlmostEqual(check.lhs, 5 ** 0.5)
        self.assertAlmostEqual(check.rhs, 2.5)
        self.assertFalse(check.equality)

    def test_equality_cases(self):
        balanced = graph.turan_graph(12, 4)
        for t in range(1, 5):
            for s in range(1, t + 1):
                self.assertTrue(bounds.sos_check(balanced, 4, t, s).equality, msg=(t, s))
        g = perturb_turan(12, 3, 0.3, 2)
        self.assertTrue(bounds.sos_check(g, 3, 2, 2).equality)

    def test_perturbed_turan_corpus(self):
        for r, g in k_free_corpus():
            for t in range(1, r + 1):
                for s in range(1, t + 1):
                    check = bounds.sos_check(g, r, t, s)
                    self.assertTrue(check.holds, msg=(g, t, s))
                    if s == t:
                        self.assertTrue(check.equality, msg=(g, t))

    def test_preconditions(self):
        self.assertRaises(PreconditionError, bounds.sos_check, graph.cycle_graph(5), 2, 3, 1)
        self.assertRaises(PreconditionError, bounds.sos_check, graph.cycle_graph(5), 2, 1, 2)
        self.assertRaises(PreconditionError, bounds.sos_check, graph.complete_graph(4), 2, 2, 1)

    def test_edge_lower_bound(self):
        # tight on balanced Turán graphs
        g = graph.turan_graph(9, 3)
        rho = rho_power_iteration(enumerate_cliques(g, 3)).rho
        self.assertAlmostEqual(bounds.sos_edge_lower_bound(rho, 3, 3), g.edge_count, places=6)
        for seed in range(5):
            g = perturb_turan(12, 4, 0.25, seed)
            for t in (2, 3, 4):
                rho = rho_power_iteration(enumerate_cliques(g, t)).rho
                self.assertLessEqual(bounds.sos_edge_lower_bound(rho, 4, t), g.edge_count + 1e-6)
        self.assertRaises(ValueError, bounds.sos_edge_lower_bound, 1.0, 2, 3)


class TestBoundsReport(unittest.TestCase):
    def test_unicyclic(self):
        report = bounds.bounds_report(graph.unicyclic_girth3_graph(7), 3)
        self.assertEqual(report.omega_lower, 3)
        self.assertEqual(report.omega_exact, 3)
        self.assertAlmostEqual(report.rho_t, 1.0, delta=1e-8)
        self.assertEqual(report.rho_method, "power")
        self.assertIsNone(report.nikiforov_omega_lower)

    def test_t2_fields(self):
        report = bounds.bounds_report(graph.complete_graph(4), 2, r=4, s=2)
        self.assertEqual(report.nikiforov_omega_lower, 4)
        self.assertTrue(report.erdos_holds)
        self.assertTrue(report.sos_ok)

    def test_not_kr1_free_skips_erdos(self):
        report = bounds.bounds_report(graph.complete_graph(4), 2, r=2)
        self.assertIsNone(report.erdos_count_rhs)
        self.assertIsNone(report.erdos_holds)

    def test_not_kr1_free_skips_sos(self):
        report = bounds.bounds_report(graph.complete_graph(4), 2, r=2, s=1)
        self.assertIsNone(report.erdos_holds)
        self.assertIsNone(report.sos_ok)
        self.assertEqual(report.violations(), [])

    def test_budget_exceeded_omits_thm1(self):
        report = bounds.bounds_report(graph.multipartite_regular_graph(3, 2), 3, budget=1)
        self.assertIsNone(report.omega_exact)
        self.assertIsNone(report.thm1_rhs)
        self.assertIsNone(report.thm1_holds)
        self.assertEqual(report.omega_lower, 3)

    def test_skip_omega(self):
        report = bounds.bounds_report(graph.complete_graph(4), 3, compute_omega=False)
        self.assertIsNone(report.omega_exact)

    def test_power_failure_falls_back_to_gradient(self):
        with mock.patch(
            "cliquelab.bounds.rho_power_iteration", side_effect=ConvergenceError(0.0, 5.0, 3)
        ):
            report = bounds.bounds_report(graph.complete_graph(4), 3)
        self.assertEqual(report.rho_method, "gradient")
        self.assertAlmostEqual(report.rho_t, 3.0, places=6)

    def test_invalid_t(self):
        self.assertRaises(ValueError, bounds.bounds_report, graph.complete_graph(3), 1)


if __name__ == "__main__":
    unittest.main()
