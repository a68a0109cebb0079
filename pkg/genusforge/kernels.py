"""
Vectorised element tables and counting kernels.

A PowerTable holds, for one field F_Q, the exponential and logarithm tables
with respect to the least primitive element together with the absolute
trace of every element. Arrays of element codes are then multiplied in the
log domain and added digit by digit, which is what the point counters need
to sweep a whole field at once.
"""
import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from time import time

import numpy as np

logger = logging.getLogger('genusforge.kernels')

BLOCK = 1024
TABLE_CHUNK = 2 ** 20


class PowerTable(object):

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.p
        self.k = ctx.k
        self.q = ctx.q
        self.order = ctx.q - 1
        self.gamma = ctx.primitive_element()
        self.weights = ctx.p ** np.arange(ctx.k, dtype=np.int64)
        start = time()
        self.exp = self._build_exp()
        self.log = self._build_log()
        self.trace_table = self._build_trace()
        duration = time() - start
        logger.debug('(%.3f) power table F_%s', duration, self.q, extra={
            'duration': duration,
            'q': self.q,
        })

    def _build_exp(self):
        ctx, p, k = self.ctx, self.p, self.k
        # row j: coordinates of gamma * x^j
        step = np.array([ctx.coords(ctx._mulpoly(self.gamma, p ** j)) for j in range(k)], dtype=np.int64)
        size = min(BLOCK, self.order)
        block = np.zeros((size, k), dtype=np.int64)
        row = np.zeros(k, dtype=np.int64)
        row[0] = 1
        for e in range(size):
            block[e] = row
            row = row.dot(step) % p
        jump = np.identity(k, dtype=np.int64)
        base, e = step, size
        while e:
            if e & 1:
                jump = jump.dot(base) % p
            base = base.dot(base) % p
            e >>= 1
        # only one block of digits is held at a time
        exp = np.empty(self.order, dtype=np.int64)
        for offset in range(0, self.order, size):
            count = min(size, self.order - offset)
            exp[offset:offset + count] = block[:count].dot(self.weights)
            block = block.dot(jump) % p
        return exp

    def _build_log(self):
        log = np.full(self.q, -1, dtype=np.int64)
        for start in range(0, self.order, TABLE_CHUNK):
            stop = min(start + TABLE_CHUNK, self.order)
            log[self.exp[start:stop]] = np.arange(start, stop, dtype=np.int64)
        return log

    def _build_trace(self):
        ctx, p = self.ctx, self.p
        basis = np.array([ctx.trace(p ** j) for j in range(self.k)], dtype=np.int64)
        trace = np.empty(self.q, dtype=np.int8)
        for start in range(0, self.q, TABLE_CHUNK):
            codes = np.arange(start, min(start + TABLE_CHUNK, self.q), dtype=np.int64)
            total = np.zeros_like(codes)
            for j in range(self.k):
                total += (codes // p ** j % p) * basis[j]
            trace[start:start + len(codes)] = total % p
        return trace

    # element-wise arithmetic on code arrays

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // self.p ** j) % self.p for j in range(self.k)]

    def compose(self, digits):
        code = np.zeros_like(digits[0])
        for j, d in enumerate(digits):
            code = code + d * self.p ** j
        return code

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.compose([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.k == 1:
            return -a % self.p
        return self.compose([-x % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        product = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where(zero, 0, product)

    def power(self, a, e):
        """a^e; negative exponents need nonzero a."""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        value = self.exp[(self.log[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, value)

    def power_of_gamma(self, logs):
        return self.exp[np.asarray(logs, dtype=np.int64) % self.order]

    def horner(self, coeffs, x):
        """Evaluate the polynomial with (embedded) coefficient codes at x."""
        x = np.asarray(x, dtype=np.int64)
        value = np.zeros_like(x)
        for c in reversed(coeffs):
            value = self.add(self.mul(value, x), c)
        return value

    def trace(self, a):
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def character(self, a):
        a = np.asarray(a, dtype=np.int64)
        chi = np.where(self.log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, chi)


@functools.lru_cache(maxsize=8)
def power_table(ctx):
    return PowerTable(ctx)


def chunked_sum(func, total, chunk_size, threads=1):
    """
    Sum func(start, stop) over deterministic chunks of range(total). Partial
    sums are Python integers, so the result does not depend on the thread
    count or completion order.
    """
    bounds = [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]
    if threads <= 1 or len(bounds) <= 1:
        return sum(func(start, stop) for start, stop in bounds)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(lambda bound: func(*bound), bounds))
    return sum(partials)
