import unittest

from genusforge.exceptions import InconsistentCounts, InvalidParameters
from genusforge.zeta import lpolynomial_from_counts, power_sums, roots_ok, weil_ok


class TestWeil(unittest.TestCase):
    def test_weil_ok(self):
        self.assertTrue(weil_ok(3, 1, 1, 5))
        self.assertTrue(weil_ok(3, 1, 1, 7))
        self.assertFalse(weil_ok(3, 1, 1, 8))
        self.assertFalse(weil_ok(2, 0, 1, 4))
        self.assertTrue(weil_ok(2, 0, 1, 3))

    def test_power_sums(self):
        # 1 + 2T^2 has reciprocal roots +-i sqrt(2)
        self.assertSequenceEqual(power_sums((1, 0, 2), 4), [0, -4, 0, 8])


class TestLPolynomial(unittest.TestCase):
    maxDiff = None

    def test_elliptic(self):
        zeta = lpolynomial_from_counts(2, 1, (3, 9))
        self.assertSequenceEqual(zeta.to_list(), [1, 0, 2])
        self.assertEqual(zeta.predict(3), 9)
        self.assertTrue(zeta.roots_ok)

    def test_genus_two(self):
        zeta = lpolynomial_from_counts(2, 2, (3, 5, 9, 33))
        self.assertSequenceEqual(zeta.to_list(), [1, 0, 0, 0, 4])
        self.assertTrue(zeta.roots_ok)

    def test_genus_zero(self):
        zeta = lpolynomial_from_counts(5, 0, (6, 26))
        self.assertSequenceEqual(zeta.to_list(), [1])
        self.assertTrue(zeta.roots_ok)

    def test_inconsistent(self):
        with self.assertRaises(InconsistentCounts):
            lpolynomial_from_counts(2, 1, (3, 8))
        with self.assertRaises(InconsistentCounts):
            lpolynomial_from_counts(2, 2, (2, 5))
        with self.assertRaises(InconsistentCounts):
            lpolynomial_from_counts(5, 0, (6, 25))

    def test_too_few_counts(self):
        with self.assertRaises(InvalidParameters):
            lpolynomial_from_counts(2, 2, (3,))

    def test_roots(self):
        self.assertTrue(roots_ok(2, (1, 0, 2)))
        self.assertTrue(roots_ok(3, (1, 1, 3)))
        self.assertFalse(roots_ok(2, (1, 3, 2)))
