import unittest

from genusforge.exceptions import BudgetExceeded, InfeasibleGenus, InvalidParameters
from genusforge.field import field_of_size
from genusforge.lattice import BivariatePoly, newton_polygon, pick_data
from genusforge.toric import (CERTIFIED, CHECKED_TO_DEGREE, FAILED, agprop_point_bound, build_family_poly,
                              check_agprop, construct_toric, count_points_toric, curve_from_payload,
                              edge_polynomials, fallback_poly, genus_family, minimal_family_genus, point_ceiling,
                              report_passes, select_parameters)
from genusforge.verify import count_points_hyperelliptic, genus_oracle


class ToricMixin(object):
    maxDiff = None

    def setUp(self):
        self.curve = build_family_poly(2, 1, (1, 2))


class TestFamily(ToricMixin, unittest.TestCase):
    def test_family_polygon(self):
        self.assertSequenceEqual(newton_polygon(self.curve.f).to_list(), [[0, 0], [2, 0], [1, 4], [0, 6]])
        self.assertEqual(genus_family(2, 1, (1, 2)), 3)

    def test_family_validation(self):
        with self.assertRaises(InvalidParameters):
            build_family_poly(4, 1, (1, 2))
        with self.assertRaises(InvalidParameters):
            build_family_poly(2, 0, (1,))
        with self.assertRaises(InvalidParameters):
            build_family_poly(2, 1, (2, 2))
        with self.assertRaises(InvalidParameters):
            build_family_poly(2, 1, (1, 2, 3))
        with self.assertRaises(InvalidParameters):
            build_family_poly(3, 1, (1, 2), q=4)

    def test_minimal_family_genus(self):
        for p in (2, 3, 5):
            for r in range(1, 5):
                a_seq = tuple(range(1, r)) + (r, r + 1)
                with self.subTest(p=p, r=r):
                    self.assertEqual(minimal_family_genus(p, r), genus_family(p, r, a_seq))

    def test_select_parameters(self):
        self.assertEqual(select_parameters(2, 3), (1, (1, 2)))
        with self.assertRaises(InfeasibleGenus):
            select_parameters(2, 1)
        with self.assertRaises(InvalidParameters):
            select_parameters(6, 3)

    def test_selected_parameters_have_the_genus(self):
        for p in (2, 3, 5):
            for g in range(1, 501):
                try:
                    r, a_seq = select_parameters(p, g)
                except InfeasibleGenus:
                    continue
                with self.subTest(p=p, g=g):
                    self.assertEqual((r + g) % p, 0)
                    self.assertEqual(genus_family(p, r, a_seq), g)
                    curve = build_family_poly(p, r, a_seq)
                    report = check_agprop(curve.f)
                    self.assertEqual(report.smooth, CERTIFIED)
                    self.assertTrue(report_passes(report))
                    self.assertGreaterEqual(count_points_toric(curve, report=report), r)

    def test_fallback_poly(self):
        f, h = fallback_poly(3, 2)
        self.assertEqual(h.degree(), 5)
        polygon = newton_polygon(f)
        self.assertSequenceEqual(polygon.to_list(), [[0, 0], [5, 0], [0, 2]])
        self.assertEqual(pick_data(polygon).interior, 2)

        f, h = fallback_poly(2, 1)
        self.assertEqual(f.get((0, 1)), 1)
        self.assertEqual(pick_data(newton_polygon(f)).interior, 1)


class TestConditions(ToricMixin, unittest.TestCase):
    def test_family_member_is_certified(self):
        report = check_agprop(self.curve.f)
        self.assertEqual(report.smooth, CERTIFIED)
        self.assertTrue(report.constant_term)
        self.assertTrue(report.boundary)
        self.assertEqual(report.point_bound, 2)
        self.assertEqual(agprop_point_bound(self.curve.f), 2)
        self.assertTrue(report_passes(report, m=5))

    def test_hyperelliptic_is_certified(self):
        f, _ = fallback_poly(3, 2)
        self.assertEqual(check_agprop(f).smooth, CERTIFIED)

    def test_smoothness_checked_to_degree(self):
        f = BivariatePoly(field_of_size(3), {(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 2): 1})
        report = check_agprop(f, degree=2)
        self.assertEqual(report.smooth, CHECKED_TO_DEGREE)
        self.assertEqual(report.smooth_degree, 2)
        self.assertIsNone(report.witness)
        self.assertTrue(report_passes(report, m=2))
        self.assertFalse(report_passes(report, m=3))

    def test_singular_curve_fails(self):
        f = BivariatePoly(field_of_size(2), {(0, 0): 1, (2, 0): 1, (0, 2): 1})
        report = check_agprop(f, degree=2)
        self.assertEqual(report.smooth, FAILED)
        self.assertEqual(report.witness, {'m': 1, 'x': 0, 'y': 1})
        self.assertEqual(report.point_bound, 0)
        with self.assertRaises(InvalidParameters):
            count_points_toric(f, report=report)

    def test_edge_polynomials(self):
        edges = {(tuple(edge.start), tuple(edge.end)): edge.coeffs for edge in edge_polynomials(self.curve.f)}
        self.assertEqual(edges[((0, 0), (2, 0))], (1, 0, 1))
        self.assertEqual(edges[((0, 0), (0, 6))], (1, 1, 0, 0, 0, 0, 1))
        self.assertEqual(edges[((1, 4), (2, 0))], (1, 1))


class TestCounting(ToricMixin, unittest.TestCase):
    def test_family_member_count(self):
        N = count_points_toric(self.curve)
        self.assertEqual(N, 3)
        self.assertGreaterEqual(N, self.curve.r)
        self.assertLessEqual(N, point_ceiling(2, 4))

    def test_matches_hyperelliptic_count(self):
        f, h = fallback_poly(3, 2)
        for m in (1, 2):
            with self.subTest(m=m):
                self.assertEqual(count_points_toric(f, m), count_points_hyperelliptic(3, list(h.coeffs), m))

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            count_points_toric(self.curve, m=2, budget=8)


class TestConstruct(ToricMixin, unittest.TestCase):
    def test_construct(self):
        cert = construct_toric(2, 3)
        self.assertEqual(cert.family, 'toric')
        self.assertEqual(cert.points_lb, 1)
        self.assertEqual(cert.payload['a'], [1, 2])
        self.assertEqual(genus_oracle(cert), 3)
        curve, f = curve_from_payload(cert.payload, 2)
        self.assertEqual(f, self.curve.f)
        self.assertEqual(curve.r, 1)

    def test_fallback(self):
        with self.assertRaises(InfeasibleGenus):
            construct_toric(2, 1)
        cert = construct_toric(2, 1, allow_fallback=True)
        self.assertEqual(len(cert.payload['h']), 4)
        self.assertEqual(cert.points_lb, 1)
        self.assertEqual(genus_oracle(cert), 1)
