import random
import unittest
from math import log

from genusforge.abelian import (ASTower, EquationRecord, construct_abelian, construct_even, construct_odd,
                                emit_equations, even_bound_holds, even_layer_count, genus_formula, odd_bound_holds,
                                odd_layer_count, solve_congruence)
from genusforge.certificate import CurveCertificate
from genusforge.exceptions import InvalidParameters, UnsupportedFamily
from genusforge.field import UPoly, field_of_size, is_irreducible
from genusforge.verify import count_points_abelian, count_points_hyperelliptic, genus_oracle, genus_oracle_abelian


class TowerMixin(object):
    maxDiff = None

    def assertCertified(self, cert, q, g):
        self.assertEqual(cert.q, q)
        self.assertEqual(cert.genus, g)
        self.assertEqual(genus_oracle(cert), g)

    def assertPointBound(self, cert):
        if cert.family == 'hyperelliptic':
            N = count_points_hyperelliptic(cert.q, cert.payload['h'])
        else:
            N = count_points_abelian(ASTower.from_payload(cert.payload, cert.q))
        self.assertGreaterEqual(N, cert.points_lb)


class TestTower(TowerMixin, unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidParameters):
            ASTower(4, (1,))
        with self.assertRaises(InvalidParameters):
            ASTower(3, (3,))
        with self.assertRaises(InvalidParameters):
            ASTower(3, (2, 1))
        with self.assertRaises(InvalidParameters):
            ASTower(3, (1, 2), (1,))
        with self.assertRaises(InvalidParameters):
            ASTower(2, (1,), (1,), twist=(1, 1, 1))
        with self.assertRaises(InvalidParameters):
            ASTower(3, (1,), None, twist=(1, 0, 1))

    def test_twist_must_be_irreducible(self):
        with self.assertRaises(InvalidParameters):
            ASTower(3, (1,), (1,), twist=(2, 0, 1))
        tower = ASTower(3, (1,), (1,), twist=(1, 0, 1))
        self.assertEqual(tower.D, 1)

    def test_genus_formula(self):
        self.assertEqual(genus_formula(ASTower(3, (1, 2), (1, 4))), 20)
        self.assertEqual(genus_formula(ASTower(2, (1, 3))), 2)
        self.assertEqual(genus_formula(ASTower(2, (5,))), 2)

    def test_oracle_examples(self):
        self.assertEqual(genus_oracle_abelian(ASTower(3, (1, 2), (1, 4))), 20)
        self.assertEqual(genus_oracle_abelian(ASTower(2, (1, 3))), 2)
        self.assertEqual(genus_oracle_abelian(ASTower(5, (7,), (3,))), genus_formula(ASTower(5, (7,), (3,))))

    def test_oracle_matches_formula_on_random_towers(self):
        rng = random.Random(20240501)
        for _ in range(500):
            p = rng.choice((2, 3, 5, 7))
            n = rng.randint(1, 4 if p < 7 else 3)
            candidates = [value for value in range(1, 51) if value % p]
            i_seq = sorted(rng.sample(candidates, n))
            j_seq = sorted(rng.sample(candidates, n)) if rng.random() < 0.5 else None
            tower = ASTower(p, i_seq, j_seq)
            with self.subTest(tower=tower):
                self.assertEqual(genus_oracle_abelian(tower), genus_formula(tower))

    def test_payload_round_trip(self):
        cert = construct_odd(9, 40)
        tower = ASTower.from_payload(cert.payload, 9)
        self.assertEqual(tower.to_payload(), cert.payload)
        with self.assertRaises(InvalidParameters):
            ASTower.from_payload(dict(cert.payload, n=5), 9)


class TestCongruence(unittest.TestCase):
    def test_base_rule(self):
        self.assertEqual(solve_congruence(3, 1, 5), ((1,), (1,)))
        self.assertEqual(solve_congruence(3, 1, 1), ((2,), (2,)))

    def test_all_residues(self):
        for p in (3, 5, 7):
            for n in (1, 2, 3):
                for d in range(p ** n):
                    with self.subTest(p=p, n=n, d=d):
                        i_seq, j_seq = solve_congruence(p, n, d)
                        total = sum((i + j) * p ** k for k, (i, j) in enumerate(zip(i_seq, j_seq)))
                        self.assertEqual(total % p ** n, d)
                        self.assertTrue(all(value % p for value in i_seq + j_seq))

    def test_rejects_even_prime(self):
        with self.assertRaises(InvalidParameters):
            solve_congruence(2, 1, 1)


class TestConstructors(TowerMixin, unittest.TestCase):
    def test_odd_example(self):
        cert = construct_odd(3, 19)
        self.assertCertified(cert, 3, 19)
        self.assertEqual(cert.family, 'abelian')
        self.assertEqual(cert.points_lb, 6)
        self.assertEqual(cert.payload['i'], [2])
        self.assertEqual(cert.payload['j'], [2])
        twist = UPoly(field_of_size(3), cert.payload['twist'])
        self.assertEqual(twist.degree(), 8)
        self.assertTrue(is_irreducible(twist))

    def test_odd_small_genus_is_hyperelliptic(self):
        cert = construct_odd(3, 5)
        self.assertEqual(cert.family, 'hyperelliptic')
        self.assertEqual(cert.points_lb, 1)
        self.assertEqual(len(cert.payload['h']), 12)
        self.assertCertified(cert, 3, 5)

    def test_even_examples(self):
        self.assertEqual(construct_even(2, 0).payload['i'], [1])
        self.assertEqual(construct_even(2, 2).payload['i'], [5])
        cert = construct_even(2, 12)
        self.assertEqual(cert.payload['i'], [1, 13])
        self.assertEqual(cert.points_lb, 4)
        self.assertCertified(cert, 2, 12)

    def test_even_layer_count(self):
        self.assertEqual(even_layer_count(0), 1)
        self.assertEqual(even_layer_count(11), 1)
        self.assertEqual(even_layer_count(12), 2)
        self.assertEqual(even_layer_count(44), 3)

    def test_odd_layer_count(self):
        self.assertEqual(odd_layer_count(3, 19), 1)
        self.assertEqual(odd_layer_count(3, 108), 1)
        self.assertEqual(odd_layer_count(3, 109), 2)
        self.assertEqual(odd_layer_count(5, 400), 1)

    def test_genus_coverage(self):
        for q in (2, 3, 4, 5, 7, 8, 9):
            p = field_of_size(q).p
            fallback_top = p * p + 3 * p if p > 2 else 1
            # hyperelliptic genera past 24 need irreducibles of degree > 49: sample them
            genera = [g for g in range(2, 301) if g <= min(fallback_top, 24) or g > fallback_top]
            genera += [g for g in (30, fallback_top) if 24 < g <= fallback_top]
            for g in genera:
                with self.subTest(q=q, g=g):
                    cert = construct_abelian(q, g)
                    self.assertEqual(cert.family, 'hyperelliptic' if g <= fallback_top else 'abelian')
                    self.assertCertified(cert, q, g)
                    self.assertPointBound(cert)

    def test_odd_bound_for_q3(self):
        for g in range(19, 10 ** 4 + 1):
            points = 2 * 3 ** odd_layer_count(3, g)
            with self.subTest(g=g):
                self.assertGreater(points * log(g) + 1e-12, log(3) / 18 * g)
                self.assertTrue(odd_bound_holds(3, g, points))
        for g in range(19, 2001, 97):
            with self.subTest(g=g):
                cert = construct_odd(3, g)
                self.assertEqual(cert.points_lb, 2 * 3 ** odd_layer_count(3, g))
                self.assertEqual(cert.payload['n'], odd_layer_count(3, g))

    def test_even_base_change(self):
        cert = construct_even(8, 30)
        self.assertEqual(cert.payload['construction_q'], 2)
        self.assertEqual(cert.q, 8)
        self.assertCertified(cert, 8, 30)

    def test_bound_annotations(self):
        self.assertTrue(odd_bound_holds(3, 19, 6))
        self.assertTrue(even_bound_holds(12, 4))
        self.assertFalse(even_bound_holds(10 ** 6, 1))

    def test_rejects_wrong_characteristic(self):
        with self.assertRaises(InvalidParameters):
            construct_odd(4, 10)
        with self.assertRaises(InvalidParameters):
            construct_even(3, 10)
        with self.assertRaises(InvalidParameters):
            construct_odd(3, 0)


class TestEquations(unittest.TestCase):
    def test_layers_and_twist(self):
        records = emit_equations(construct_odd(3, 19))
        self.assertSequenceEqual([record.variable for record in records], ['y_0', 'w'])
        self.assertEqual(records[0].text, 'y_0^3 - y_0 = x^-2*(x-1)^-2')
        self.assertTrue(records[1].text.startswith('w^2 = x^8'))

    def test_even_text(self):
        records = emit_equations(construct_even(2, 2))
        self.assertEqual(records[0].text, 'y_0^2 + y_0 = x^-5')

    def test_record_round_trip(self):
        record = emit_equations(construct_even(2, 12))[1]
        self.assertEqual(EquationRecord.from_dict(record.to_dict()), record)

    def test_unsupported_family(self):
        cert = CurveCertificate('toric', 2, 3, 1, {'p': 2, 'r': 1, 'a': [1, 2]})
        with self.assertRaises(UnsupportedFamily):
            emit_equations(cert)
