"""
Exact arithmetic in F_p and F_{p^k}.

An element of F_{p^k} is its coordinate vector (c_0, ..., c_{k-1}) in the
polynomial basis 1, x, ..., x^{k-1}. Internally the vector is packed into
the integer code sum(c_i * p**i); codes double as array indices for the
vectorised tables in ``genusforge.kernels``. Code 0 is zero and code 1 is
one in every field.
"""
import functools
import logging

from sympy import divisors, factorint, isprime, mobius
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irred_p_ben_or

from genusforge.exceptions import DivisionByZero, InvalidParameters

logger = logging.getLogger('genusforge.field')

# Fields up to this size get Python log/exp tables for scalar multiplication.
TABLE_LIMIT = 2 ** 16

# Candidates over fields up to this size are first scanned for roots.
ROOT_SCAN_LIMIT = 2 ** 8


class FieldCtx(object):
    """
    Arithmetic context for F_q, q = p^k, with an explicit monic modulus.
    """

    def __init__(self, p, k, modulus):
        modulus = tuple(modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise InvalidParameters('modulus must be monic of degree %s' % k, p=p, k=k)
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k
        self._exp = None
        self._log = None
        self._primitive = None

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return 'FieldCtx(p=%s, k=%s, modulus=%s)' % (self.p, self.k, list(self.modulus))

    # conversions

    def element(self, coeffs):
        """Code of the element with the given coordinate vector."""
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise InvalidParameters('element has more than %s coordinates' % self.k, q=self.q)
        code = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise InvalidParameters('coordinate %s out of range' % c, p=self.p)
            code = code * self.p + c
        return code

    def coords(self, a):
        digits = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            digits.append(c)
        return tuple(digits)

    def from_int(self, n):
        return n % self.p

    def check(self, a):
        if not 0 <= a < self.q:
            raise InvalidParameters('%s is not an element code of F_%s' % (a, self.q), q=self.q)
        return a

    # arithmetic on codes

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, code, scale = self.p, 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            code += ((da + db) % p) * scale
            scale *= p
        return code

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return -a % self.p
        p, code, scale = self.p, 0, 1
        while a:
            a, da = divmod(a, p)
            code += (-da % p) * scale
            scale *= p
        return code

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, n):
        """n * a for an integer n."""
        return self.mul(a, n % self.p)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.q <= TABLE_LIMIT:
            self._tables()
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mulpoly(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero('inverse of zero', q=self.q)
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= TABLE_LIMIT:
            self._tables()
            return self._exp[-self._log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def trace(self, a):
        """Absolute trace a + a^p + ... + a^{p^{k-1}}, as a residue mod p."""
        total, term = 0, a
        for _ in range(self.k):
            total = self.add(total, term)
            term = self.pow(term, self.p)
        assert total < self.p
        return total

    def character(self, a):
        if self.p == 2:
            raise InvalidParameters('quadratic character needs odd characteristic', q=self.q)
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def primitive_element(self):
        """Least code generating the multiplicative group."""
        if self._primitive is None:
            order = self.q - 1
            exponents = [order // r for r in factorint(order)]
            for candidate in range(1, self.q):
                if all(self._powpoly(candidate, e) != 1 for e in exponents):
                    self._primitive = candidate
                    break
        return self._primitive

    # schoolbook internals

    def _mulpoly(self, a, b):
        p, k, modulus = self.p, self.k, self.modulus
        x, y = self.coords(a), self.coords(b)
        product = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    product[i + j] += xi * yj
        for top in range(2 * k - 2, k - 1, -1):
            c = product[top] % p
            if c:
                for j in range(k):
                    product[top - k + j] -= c * modulus[j]
            product[top] = 0
        code = 0
        for c in reversed(product[:k]):
            code = code * p + c % p
        return code

    def _powpoly(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mulpoly(result, a)
            a = self._mulpoly(a, a)
            e >>= 1
        return result

    def _tables(self):
        if self._exp is not None:
            return
        gamma = self.primitive_element()
        exp, log = [0] * (self.q - 1), [0] * self.q
        value = 1
        for e in range(self.q - 1):
            exp[e] = value
            log[value] = e
            value = self._mulpoly(value, gamma)
        self._log = log
        self._exp = exp


class UPoly(object):
    """
    Univariate polynomial over a FieldCtx; coefficients are element codes,
    constant term first, without trailing zeros.
    """

    def __init__(self, ctx, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, 1))

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return 'UPoly(%s over F_%s)' % (list(self.coeffs), self.ctx.q)

    def __str__(self):
        terms = []
        for e in range(self.degree(), -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            coeff = '' if c == 1 and e else str(c)
            monomial = {0: '', 1: 'x'}.get(e, 'x^%s' % e)
            terms.append('%s%s%s' % (coeff, '*' if coeff and monomial else '', monomial))
        return ' + '.join(terms) or '0'

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self):
        return self.leading() == 1

    def __add__(self, other):
        add = self.ctx.add
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UPoly(self.ctx, [add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        return UPoly(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if self.is_zero() or other.is_zero():
            return UPoly(ctx, ())
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] = ctx.add(product[i + j], ctx.mul(a, b))
        return UPoly(ctx, product)

    def __divmod__(self, other):
        ctx = self.ctx
        if other.is_zero():
            raise DivisionByZero('polynomial division by zero', q=ctx.q)
        remainder = list(self.coeffs)
        d = other.degree()
        inverse = ctx.inv(other.leading())
        quotient = [0] * max(len(remainder) - d, 0)
        for top in range(len(remainder) - 1, d - 1, -1):
            c = remainder[top]
            if not c:
                continue
            c = ctx.mul(c, inverse)
            quotient[top - d] = c
            for j, b in enumerate(other.coeffs):
                if b:
                    remainder[top - d + j] = ctx.sub(remainder[top - d + j], ctx.mul(c, b))
        return UPoly(ctx, quotient), UPoly(ctx, remainder[:d])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        inverse = self.ctx.inv(self.leading())
        return UPoly(self.ctx, [self.ctx.mul(c, inverse) for c in self.coeffs])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self):
        ctx = self.ctx
        return UPoly(ctx, [ctx.scale(c, e) for e, c in enumerate(self.coeffs)][1:])

    def powmod(self, e, modulus):
        result, base = UPoly(self.ctx, (1,)), self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def evaluate(self, a, ctx=None, embed=None):
        """
        Value at the code ``a``. With ``ctx``/``embed`` the polynomial is read
        in an extension field through the coefficient embedding table.
        """
        ctx = ctx or self.ctx
        value = 0
        for c in reversed(self.coeffs):
            value = ctx.add(ctx.mul(value, a), embed[c] if embed is not None else c)
        return value

    def is_squarefree(self):
        return self.gcd(self.derivative()).degree() == 0 if self.degree() > 0 else False


def monic_from_index(ctx, d, index):
    """The index-th monic polynomial of degree d, constant coefficient varying fastest."""
    coeffs = []
    for _ in range(d):
        index, c = divmod(index, ctx.q)
        coeffs.append(c)
    return UPoly(ctx, coeffs + [1])


@functools.lru_cache(maxsize=4096)
def is_irreducible(poly):
    ctx, d = poly.ctx, poly.degree()
    if d < 1:
        return False
    if d == 1:
        return True
    if poly.coeffs[0] == 0:
        return False
    if ctx.q <= ROOT_SCAN_LIMIT and any(poly.evaluate(a) == 0 for a in range(1, ctx.q)):
        return False
    if ctx.k == 1:
        return gf_irred_p_ben_or([ZZ(c) for c in reversed(poly.coeffs)], ctx.p, ZZ)
    # Ben-Or: f has no factor of degree i iff gcd(f, x^{q^i} - x) = 1.
    x = UPoly.x(ctx)
    h, frobenius = x, None
    for i in range(1, d // 2 + 1):
        if i <= 2:
            h = h.powmod(ctx.q, poly)
        else:
            frobenius = frobenius or _frobenius_rows(x.powmod(ctx.q, poly), poly)
            h = _apply_frobenius(frobenius, h)
        if poly.gcd(h - x).degree() > 0:
            return False
    return True


def _frobenius_rows(x_q, poly):
    """x^{jq} mod poly for j < deg poly."""
    rows = [UPoly(poly.ctx, (1,))]
    for _ in range(1, poly.degree()):
        rows.append((rows[-1] * x_q) % poly)
    return rows


def _apply_frobenius(rows, h):
    # coefficients lie in F_q, so h(x)^q = h(x^q)
    ctx = h.ctx
    acc = [0] * len(rows)
    for c, row in zip(h.coeffs, rows):
        if c:
            for index, value in enumerate(row.coeffs):
                if value:
                    acc[index] = ctx.add(acc[index], ctx.mul(c, value))
    return UPoly(ctx, acc)


def irreducibles(ctx, d):
    """Monic irreducibles of degree d over ctx, in lexicographic order."""
    if d < 1:
        raise InvalidParameters('degree must be positive', d=d)
    for index in range(ctx.q ** d):
        poly = monic_from_index(ctx, d, index)
        if is_irreducible(poly):
            yield poly


def find_irreducible(ctx, d, t=None):
    """
    Lexicographically least monic irreducible of degree d, or the first t
    of them when t is given.
    """
    if t is None:
        return next(irreducibles(ctx, d))
    available = count_irreducibles(ctx.q, d)
    if t > available:
        raise InvalidParameters('only %s monic irreducibles of degree %s' % (available, d), q=ctx.q, d=d, t=t)
    found = []
    for poly in irreducibles(ctx, d):
        found.append(poly)
        if len(found) == t:
            break
    return found


def count_irreducibles(q, d):
    if d < 1:
        raise InvalidParameters('degree must be positive', d=d)
    count = sum(mobius(e) * q ** (d // e) for e in divisors(d)) // d
    return count


@functools.lru_cache(maxsize=None)
def make_field(p, k=1):
    if not isprime(p):
        raise InvalidParameters('%s is not prime' % p, p=p)
    if k < 1:
        raise InvalidParameters('extension degree must be at least 1', k=k)
    if k == 1:
        return FieldCtx(p, 1, (0, 1))
    modulus = find_irreducible(make_field(p, 1), k)
    logger.debug('F_%s^%s modulus %s', p, k, modulus)
    return FieldCtx(p, k, modulus.coeffs)


def prime_power(q):
    """(p, k) with q = p^k, or InvalidParameters."""
    factors = factorint(q) if q >= 2 else {}
    if len(factors) != 1:
        raise InvalidParameters('%s is not a prime power' % q, q=q)
    (p, k), = factors.items()
    return p, k


def field_of_size(q):
    return make_field(*prime_power(q))


def extension(ctx, m):
    """The field F_{q^m} containing ctx as a subfield."""
    return make_field(ctx.p, ctx.k * m)


@functools.lru_cache(maxsize=64)
def embedding(small, big):
    """
    Table mapping element codes of ``small`` to codes of ``big``, through a
    root of the modulus of ``small`` found among the subfield elements.
    """
    if small.p != big.p or big.k % small.k:
        raise InvalidParameters('F_%s is not a subfield of F_%s' % (small.q, big.q))
    if small.k == 1:
        return tuple(range(small.q))
    modulus = UPoly(big, small.modulus)
    gamma = big.primitive_element()
    step = (big.q - 1) // (small.q - 1)
    for t in range(small.q - 1):
        root = big.pow(gamma, t * step)
        if modulus.evaluate(root) == 0:
            break
    else:
        raise AssertionError('no root of %s in F_%s' % (small.modulus, big.q))
    powers = [big.pow(root, i) for i in range(small.k)]
    table = []
    for code in range(small.q):
        value = 0
        for c, power in zip(small.coords(code), powers):
            value = big.add(value, big.scale(power, c))
        table.append(value)
    return tuple(table)


def _code(ctx, a):
    return ctx.check(a) if isinstance(a, int) else ctx.element(a)


def arith(ctx, a, b, op):
    """Field operation on coordinate vectors; ``pow`` takes an integer exponent as b."""
    a = _code(ctx, a)
    if op == 'pow':
        if b < 0:
            raise InvalidParameters('pow takes a nonnegative exponent', e=b)
        return ctx.coords(ctx.pow(a, b))
    b = _code(ctx, b)
    operations = {
        'add': ctx.add,
        'sub': ctx.sub,
        'mul': ctx.mul,
        'div': ctx.div,
    }
    if op not in operations:
        raise InvalidParameters('unknown operation %r' % op)
    return ctx.coords(operations[op](a, b))


def absolute_trace(ctx, a):
    return ctx.trace(_code(ctx, a))


def quadratic_character(ctx, a):
    return ctx.character(_code(ctx, a))
