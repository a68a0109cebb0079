"""
Abelian covers of the projective line built from Artin-Schreier layers

    y_k^p - y_k = x^{-i_k} (x - 1)^{-j_k},    k = 0, ..., n - 1

(the one-point family drops the (x - 1) factor), optionally followed by the
quadratic twist w^2 = f(x). The constructors hit every target genus exactly
and certify a number of rational points above x = infinity, where every
layer splits completely.
"""
import logging
from collections import namedtuple
from math import log

from sympy import isprime

from genusforge import family
from genusforge.certificate import CurveCertificate
from genusforge.exceptions import InvalidParameters, UnsupportedFamily
from genusforge.field import UPoly, field_of_size, find_irreducible, is_irreducible, prime_power

logger = logging.getLogger('genusforge.abelian')


def _check_sequence(p, seq, name):
    seq = tuple(int(value) for value in seq)
    if not seq:
        raise InvalidParameters('%s must not be empty' % name)
    for value in seq:
        if value < 1 or value % p == 0:
            raise InvalidParameters('%s entries must be positive and prime to %s' % (name, p), **{name: seq})
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise InvalidParameters('%s must be strictly increasing' % name, **{name: seq})
    return seq


class ASTower(namedtuple('ASTower', 'p i_seq j_seq twist base_q construction_q')):
    """
    Tower description. ``twist`` holds the coefficient codes of f over
    F_{base_q}; the layers are defined over F_{construction_q}, a subfield of
    F_{base_q}.
    """

    def __new__(cls, p, i_seq, j_seq=None, twist=None, base_q=None, construction_q=None):
        if not isprime(p):
            raise InvalidParameters('%s is not prime' % p, p=p)
        base_q = base_q or p
        construction_q = construction_q or base_q
        for size in (base_q, construction_q):
            if prime_power(size)[0] != p:
                raise InvalidParameters('F_%s does not have characteristic %s' % (size, p), q=size)
        if prime_power(base_q)[1] % prime_power(construction_q)[1]:
            raise InvalidParameters('F_%s is not a subfield of F_%s' % (construction_q, base_q))
        i_seq = _check_sequence(p, i_seq, 'i_seq')
        if j_seq is not None:
            j_seq = _check_sequence(p, j_seq, 'j_seq')
            if len(j_seq) != len(i_seq):
                raise InvalidParameters('i_seq and j_seq differ in length')
        if twist is not None:
            twist = tuple(twist)
            if p == 2 or j_seq is None:
                raise InvalidParameters('a quadratic twist needs odd p and a two-point tower', p=p)
            f = UPoly(field_of_size(base_q), twist)
            if not f.is_monic() or f.degree() < 2 or f.degree() % 2:
                raise InvalidParameters('twist must be monic of positive even degree', degree=f.degree())
            if not is_irreducible(f):
                raise InvalidParameters('twist must be irreducible', twist=twist)
        return super(ASTower, cls).__new__(cls, p, i_seq, j_seq, twist, base_q, construction_q)

    @property
    def n(self):
        return len(self.i_seq)

    @property
    def two_point(self):
        return self.j_seq is not None

    @property
    def field(self):
        return field_of_size(self.base_q)

    def twist_poly(self):
        return UPoly(self.field, self.twist) if self.twist is not None else None

    @property
    def D(self):
        return (len(self.twist) - 1) // 2 if self.twist is not None else 0

    def layers(self):
        j_seq = self.j_seq or (0,) * self.n
        return list(zip(self.i_seq, j_seq))

    def to_payload(self):
        return {
            'p': self.p,
            'n': self.n,
            'i': list(self.i_seq),
            'j': list(self.j_seq) if self.j_seq is not None else None,
            'twist': list(self.twist) if self.twist is not None else None,
            'modulus': list(self.field.modulus),
            'construction_q': self.construction_q,
        }

    @classmethod
    def from_payload(cls, payload, q):
        try:
            tower = cls(payload['p'], payload['i'], payload.get('j'), payload.get('twist'), base_q=q,
                        construction_q=payload.get('construction_q'))
        except KeyError as e:
            raise InvalidParameters('abelian payload lacks %s' % e)
        if payload.get('n', tower.n) != tower.n:
            raise InvalidParameters('n does not match the layer count', n=payload.get('n'))
        if list(payload.get('modulus', tower.field.modulus)) != list(tower.field.modulus):
            raise InvalidParameters('unexpected modulus for F_%s' % q, modulus=payload.get('modulus'))
        return tower


def genus_formula(tower):
    p, n = tower.p, tower.n
    if not tower.two_point:
        return (p - 1) * sum((i - 1) * p ** k for k, i in enumerate(tower.i_seq)) // 2
    total = sum((i + j) * p ** k for k, (i, j) in enumerate(tower.layers()))
    if tower.twist is None:
        return (p - 1) * total // 2
    return (p - 1) * total + p ** n * tower.D - 1


def solve_congruence(p, n, d):
    """
    Increasing i, j prime to p with sum (i_k + j_k) p^k = d (mod p^n) and
    i_k + j_k < (p + 3)(k + 1).
    """
    if p == 2 or not isprime(p):
        raise InvalidParameters('congruence solver needs an odd prime', p=p)
    if n < 1:
        raise InvalidParameters('n must be at least 1', n=n)
    d %= p ** n
    d_p = d % p
    if d_p > 1:
        i_seq, j_seq = [d_p - 1], [1]
    else:
        i_seq, j_seq = [d_p + 1], [p - 1]
    total = i_seq[0] + j_seq[0]
    for m in range(1, n):
        target = ((d - total) // p ** m) % p
        i_prev, j_prev = i_seq[-1], j_seq[-1]
        for b in (1, 2, 3):
            i_next = i_prev + b
            j_next = j_prev + 1 + (target - 1 - b - i_prev - j_prev) % p
            if i_next % p and j_next % p:
                break
        else:
            raise AssertionError('no step in {1, 2, 3} for p=%s layer %s' % (p, m))
        i_seq.append(i_next)
        j_seq.append(j_next)
        total += (i_next + j_next) * p ** m
    assert total % p ** n == d
    assert all(i + j < (p + 3) * (k + 1) for k, (i, j) in enumerate(zip(i_seq, j_seq)))
    return tuple(i_seq), tuple(j_seq)


def hyperelliptic_certificate(q, g):
    """y^2 = h(x) with h monic irreducible of degree 2g + 1."""
    ctx = field_of_size(q)
    h = find_irreducible(ctx, 2 * g + 1)
    payload = {
        'p': ctx.p,
        'h': list(h.coeffs),
        'modulus': list(ctx.modulus),
    }
    return CurveCertificate('hyperelliptic', q, g, 1, payload)


def odd_layer_count(p, g):
    """The least n >= 1 with (p + 3)(n + 1) p^{n+1} >= g."""
    n = 1
    while (p + 3) * (n + 1) * p ** (n + 1) < g:
        n += 1
    return n


def construct_odd(q, g):
    p, _ = prime_power(q)
    if p == 2:
        raise InvalidParameters('construct_odd needs odd q', q=q)
    if g < 1:
        raise InvalidParameters('genus must be at least 1', g=g)
    if g <= p * p + 3 * p:
        logger.info('hyperelliptic fallback for q=%s g=%s', q, g, extra={'q': q, 'g': g})
        return hyperelliptic_certificate(q, g)
    n = odd_layer_count(p, g)
    modulus = p ** n
    d = (g + 1) * pow(p - 1, -1, modulus) % modulus
    i_seq, j_seq = solve_congruence(p, n, d)
    total = sum((i + j) * p ** k for k, (i, j) in enumerate(zip(i_seq, j_seq)))
    D, remainder = divmod(g + 1 - (p - 1) * total, modulus)
    assert remainder == 0 and D > 0, (q, g, D, remainder)
    twist = find_irreducible(field_of_size(q), 2 * D)
    tower = ASTower(p, i_seq, j_seq, twist.coeffs, base_q=q)
    assert genus_formula(tower) == g
    return CurveCertificate('abelian', q, g, 2 * p ** n, tower.to_payload())


def even_layer_count(g):
    """The n with n 2^{n+1} - 4 <= g < (n + 1) 2^{n+2} - 4."""
    n = 1
    while g >= (n + 1) * 2 ** (n + 2) - 4:
        n += 1
    return n


def construct_even(q, g):
    p, _ = prime_power(q)
    if p != 2:
        raise InvalidParameters('construct_even needs even q', q=q)
    if g < 0:
        raise InvalidParameters('genus must be nonnegative', g=g)
    n = even_layer_count(g)
    if n == 1:
        i_seq = [2 * g + 1]
    else:
        fixed = sum(2 * k * 2 ** k for k in range(n - 1))
        t = (g - fixed) % 2 ** (n - 1)
        i_seq = [4 * k + 1 + 2 * ((t >> k) & 1) for k in range(n - 1)]
        partial = fixed + t
        last = (g - partial) // 2 ** (n - 2) + 1
        assert last % 2 == 1 and last > 4 * n - 5, (g, n, last)
        i_seq.append(last)
    tower = ASTower(2, i_seq, base_q=q, construction_q=2)
    assert genus_formula(tower) == g
    return CurveCertificate('abelian', q, g, 2 ** n, tower.to_payload())


@family('abelian')
def construct_abelian(q, g, **options):
    p, _ = prime_power(q)
    if p == 2:
        return construct_even(q, g)
    return construct_odd(q, g)


def odd_bound_holds(p, g, points):
    """points * log g > (log p / (2 p^2)) * g, up to 1e-12."""
    return points * log(g) - log(p) / (2 * p * p) * g > -1e-12


def even_bound_holds(g, points):
    """points > ((log 2) / 4) * g / log g, for g > 1."""
    return points - log(2) / 4 * g / log(g) > -1e-12


class EquationRecord(namedtuple('EquationRecord', 'variable terms text')):
    """
    One equation sum(c * x^a (x - 1)^b v^e) = 0 in its own fibre variable v;
    ``terms`` maps (a, b, e) to a coefficient code of the base field.
    """

    def to_dict(self):
        return {
            'variable': self.variable,
            'terms': [[a, b, e, c] for (a, b, e), c in sorted(self.terms.items())],
            'text': self.text,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['variable'], dict(((a, b, e), c) for a, b, e, c in data['terms']), data['text'])


def _monomial(a, b):
    parts = []
    if a:
        parts.append('x^%s' % a if a != 1 else 'x')
    if b:
        parts.append('(x-1)^%s' % b if b != 1 else '(x-1)')
    return '*'.join(parts) or '1'


def _layer_equations(ctx, p, layers):
    minus_one = ctx.neg(1)
    records = []
    for k, (i, j) in enumerate(layers):
        variable = 'y_%s' % k
        terms = {(0, 0, p): 1, (0, 0, 1): minus_one, (-i, -j, 0): minus_one}
        lhs = '%s^%s %s %s' % (variable, p, '+' if p == 2 else '-', variable)
        records.append(EquationRecord(variable, terms, '%s = %s' % (lhs, _monomial(-i, -j))))
    return records


def _square_equation(ctx, variable, poly):
    terms = {(0, 0, 2): 1}
    for e, c in enumerate(poly.coeffs):
        if c:
            terms[(e, 0, 0)] = ctx.neg(c)
    return EquationRecord(variable, terms, '%s^2 = %s' % (variable, poly))


def emit_equations(cert):
    """Equations of an abelian or hyperelliptic certificate, one per fibre variable."""
    if cert.family == 'abelian':
        tower = ASTower.from_payload(cert.payload, cert.q)
        records = _layer_equations(tower.field, tower.p, tower.layers())
        if tower.twist is not None:
            records.append(_square_equation(tower.field, 'w', tower.twist_poly()))
        return records
    if cert.family == 'hyperelliptic':
        ctx = field_of_size(cert.q)
        return [_square_equation(ctx, 'y', UPoly(ctx, cert.payload['h']))]
    raise UnsupportedFamily('no equations for family %r' % cert.family, family=cert.family)

