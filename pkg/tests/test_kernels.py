import os
import unittest
from time import time

import mock

from genusforge.abelian import ASTower
from genusforge.field import make_field
from genusforge.kernels import PowerTable, chunked_sum
from genusforge.verify import count_points_abelian


class KernelMixin(object):
    maxDiff = None

    def setUp(self):
        self.f4 = make_field(2, 2)
        self.f9 = make_field(3, 2)


class TestPowerTable(KernelMixin, unittest.TestCase):
    def test_f4_tables(self):
        table = PowerTable(self.f4)
        self.assertSequenceEqual(table.exp.tolist(), [1, 2, 3])
        self.assertSequenceEqual(table.log.tolist(), [-1, 0, 1, 2])
        self.assertSequenceEqual(table.trace_table.tolist(), [0, 0, 1, 1])

    def test_tables_agree_with_scalar_arithmetic(self):
        for ctx in (make_field(3, 3), make_field(2, 5)):
            table = PowerTable(ctx)
            codes = list(range(ctx.q))
            with self.subTest(q=ctx.q):
                products = table.mul([a for a in codes for _ in codes], [b for _ in codes for b in codes])
                self.assertSequenceEqual(products.tolist(), [ctx.mul(a, b) for a in codes for b in codes])
                self.assertSequenceEqual(table.trace(codes).tolist(), [ctx.trace(a) for a in codes])
                self.assertSequenceEqual(table.add(codes, codes[::-1]).tolist(),
                                         [ctx.add(a, b) for a, b in zip(codes, codes[::-1])])

    def test_power_handles_zero_and_negative_exponents(self):
        table = PowerTable(self.f9)
        self.assertSequenceEqual(table.power([0, 1, 2], 0).tolist(), [1, 1, 1])
        self.assertEqual(int(table.power([0], 3)[0]), 0)
        for a in range(1, 9):
            self.assertEqual(int(table.mul([a], table.power([a], -1))[0]), 1)

    def test_exp_is_a_permutation(self):
        ctx = make_field(3, 5)
        table = PowerTable(ctx)
        self.assertSequenceEqual(sorted(table.exp.tolist()), list(range(1, ctx.q)))
        self.assertEqual(int(table.log[1]), 0)

    def test_small_blocks_build_the_same_tables(self):
        for ctx in (make_field(2, 7), make_field(3, 4), make_field(5, 2)):
            expected = PowerTable(ctx)
            with mock.patch('genusforge.kernels.BLOCK', 5), mock.patch('genusforge.kernels.TABLE_CHUNK', 7):
                table = PowerTable(ctx)
            with self.subTest(q=ctx.q):
                self.assertSequenceEqual(table.exp.tolist(), expected.exp.tolist())
                self.assertSequenceEqual(table.log.tolist(), expected.log.tolist())
                self.assertSequenceEqual(table.trace_table.tolist(), expected.trace_table.tolist())

    def test_chunked_sum_is_independent_of_threads(self):
        def func(start, stop):
            return sum(range(start, stop))

        self.assertEqual(chunked_sum(func, 100, 7), 4950)
        self.assertEqual(chunked_sum(func, 100, 7, threads=3), 4950)
        self.assertEqual(chunked_sum(func, 0, 7), 0)


class TestFastCounting(KernelMixin, unittest.TestCase):
    def setUp(self):
        super(TestFastCounting, self).setUp()
        self.tower = ASTower(2, (3, 5), (1, 7))

    def test_counts_do_not_depend_on_threads(self):
        counts = [count_points_abelian(self.tower, m=16, threads=threads, budget=2 ** 16, chunk_size=2 ** 12)
                  for threads in (1, 2, 4)]
        self.assertEqual(len(set(counts)), 1)

    @unittest.skipUnless(os.environ.get('GENUSFORGE_BENCHMARK'), 'set GENUSFORGE_BENCHMARK to time F_2^20')
    def test_f2_20_single_thread(self):
        start = time()
        single = count_points_abelian(self.tower, m=20, threads=1, budget=2 ** 20, chunk_size=2 ** 16)
        self.assertLess(time() - start, 5)
        threaded = count_points_abelian(self.tower, m=20, threads=4, budget=2 ** 20, chunk_size=2 ** 16)
        self.assertEqual(single, threaded)
