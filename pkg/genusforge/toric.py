"""
Curves in toric surfaces.

The explicit family is

    f(x, y) = 1 + y + x^{r+1} + sum_{i=0}^{r} x^i y^{p (a_i + ... + a_r)},

whose genus is the number of interior lattice points of its Newton polygon.
Points are counted on the torus plus, for every hull edge, the roots of the
edge polynomial read off the coefficients along that edge.
"""
import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np
from sympy import isprime

from genusforge import conf, family
from genusforge.certificate import CurveCertificate
from genusforge.exceptions import BudgetExceeded, InfeasibleGenus, InvalidParameters
from genusforge.field import UPoly, embedding, extension, field_of_size, find_irreducible, prime_power
from genusforge.kernels import power_table
from genusforge.lattice import BivariatePoly, edge_points, newton_polygon, pick_data
from genusforge.lattice import boundary_condition as polygon_boundary_condition

logger = logging.getLogger('genusforge.toric')

CERTIFIED = 'CERTIFIED'
CHECKED_TO_DEGREE = 'CHECKED_TO_DEGREE'
FAILED = 'FAILED'


class ToricCurve(namedtuple('ToricCurve', 'p q r a_seq f')):

    def to_payload(self):
        return {
            'p': self.p,
            'r': self.r,
            'a': list(self.a_seq),
            'newton_polygon': newton_polygon(self.f).to_list(),
        }


EdgeData = namedtuple('EdgeData', 'start end coeffs')

ConditionReport = namedtuple('ConditionReport', 'smooth smooth_degree witness constant_term boundary point_bound')


def _check_family(p, r, a_seq):
    if not isprime(p):
        raise InvalidParameters('%s is not prime' % p, p=p)
    if r < 1:
        raise InvalidParameters('r must be at least 1', r=r)
    a_seq = tuple(a_seq)
    if len(a_seq) != r + 1:
        raise InvalidParameters('need r + 1 = %s entries a_0..a_r' % (r + 1), a=a_seq)
    if a_seq[0] < 1 or any(b <= a for a, b in zip(a_seq, a_seq[1:])):
        raise InvalidParameters('need 1 <= a_0 < ... < a_r', a=a_seq)
    return a_seq


def build_family_poly(p, r, a_seq, q=None):
    a_seq = _check_family(p, r, a_seq)
    q = q or p
    ctx = field_of_size(q)
    if ctx.p != p:
        raise InvalidParameters('F_%s does not have characteristic %s' % (q, p), q=q)
    terms = {(0, 0): 1, (0, 1): 1, (r + 1, 0): 1}
    for i in range(r + 1):
        terms[(i, p * sum(a_seq[i:]))] = 1
    f = BivariatePoly(ctx, terms)
    assert f.partial('y').is_nonzero_constant()
    return ToricCurve(p, q, r, a_seq, f)


def genus_family(p, r, a_seq):
    a_seq = _check_family(p, r, a_seq)
    genus = -r + p * sum(i * a for i, a in enumerate(a_seq))
    assert genus == pick_data(newton_polygon(build_family_poly(p, r, a_seq).f)).interior
    return genus


def minimal_family_genus(p, r):
    """Genus of the smallest admissible sequence a = (1, ..., r - 1, r, r + 1)."""
    prefix = sum(i * (i + 1) for i in range(r - 1))
    return -r + p * (prefix + 2 * r * r)


def representable_threshold(r):
    """Values of sum i a_i past which every integer is representable."""
    return Fraction(2 * r ** 3 + 15 * r ** 2, 6)


def _solve_tail(r, target):
    for low in range(r, 3 * r + 1):
        high, remainder = divmod(target - (r - 1) * low, r)
        if not remainder and high > low:
            return low, high
    return None


def select_parameters(p, g):
    """
    (r, a) with genus_family(p, r, a) = g, r = -g (mod p) as large as the
    search allows; a_i = i + 1 below the last two entries.
    """
    if not isprime(p):
        raise InvalidParameters('%s is not prime' % p, p=p)
    if g < 1:
        raise InvalidParameters('genus must be at least 1', g=g)
    r = (-g) % p or p
    while minimal_family_genus(p, r + p) <= g:
        r += p
    while r >= 1:
        prefix = sum(i * (i + 1) for i in range(r - 1))
        target = (g + r) // p - prefix
        tail = _solve_tail(r, target)
        if tail is not None:
            a_seq = tuple(i + 1 for i in range(r - 1)) + tail
            logger.debug('toric parameters p=%s g=%s r=%s a=%s', p, g, r, a_seq, extra={
                'p': p, 'g': g, 'r': r, 'threshold': str(representable_threshold(r)),
            })
            return r, a_seq
        logger.info('no tail for p=%s g=%s at r=%s, retrying with r=%s', p, g, r, r - p)
        r -= p
    raise InfeasibleGenus('no toric family member of genus %s in characteristic %s' % (g, p), family='toric', p=p, g=g)


def fallback_poly(q, g):
    """y^2 + y + h(x) for even q, y^2 - h(x) for odd q, with h irreducible of degree 2g + 1."""
    if g < 1:
        raise InvalidParameters('genus must be at least 1', g=g)
    ctx = field_of_size(q)
    h = find_irreducible(ctx, 2 * g + 1)
    terms = {(0, 2): 1}
    if ctx.p == 2:
        terms[(0, 1)] = 1
        for e, c in enumerate(h.coeffs):
            terms[(e, 0)] = c
    else:
        for e, c in enumerate(h.coeffs):
            terms[(e, 0)] = ctx.neg(c)
    return BivariatePoly(ctx, terms), h


def point_ceiling(q, v):
    return (q - 1) ** 2 + (q - 1) * v


def agprop_point_bound(f):
    """Off-axis hull edges without interior lattice points each carry a rational point."""
    polygon = newton_polygon(f)
    primitive = 0
    for a, b in polygon.edges():
        on_axis = (a.i == 0 and b.i == 0) or (a.j == 0 and b.j == 0)
        if not on_axis and len(edge_points(a, b)) == 2:
            primitive += 1
    return max(len(polygon) - 2, primitive)


def _separable_hyperelliptic(f):
    """f = y^2 - h(x) with h squarefree, odd characteristic."""
    ctx = f.ctx
    if ctx.p == 2 or f.get((0, 2)) != 1:
        return False
    h = {}
    for (i, j), c in f.terms.items():
        if j == 0:
            h[i] = ctx.neg(c)
        elif (i, j) != (0, 2):
            return False
    if not h:
        return False
    poly = UPoly(ctx, [h.get(e, 0) for e in range(max(h) + 1)])
    return poly.degree() > 0 and poly.is_squarefree()


def _evaluate_grid(table, terms, x, ys):
    """f(x, y) for one x code and an array of y codes; terms already embedded."""
    value = np.zeros_like(ys)
    for (i, j), c in terms:
        xi = int(table.power(np.array([x]), i)[0])
        if not xi:
            continue
        value = table.add(value, table.mul(table.mul(c, xi), table.power(ys, j)))
    return value


def _embedded_terms(f, big):
    table = embedding(f.ctx, big)
    return [((point.i, point.j), table[c]) for point, c in sorted(f.terms.items())]


def _common_zero(f, m):
    big = extension(f.ctx, m)
    table = power_table(big)
    polys = [_embedded_terms(poly, big) for poly in (f, f.partial('x'), f.partial('y'))]
    ys = np.arange(big.q, dtype=np.int64)
    for x in range(big.q):
        zero = np.ones(big.q, dtype=bool)
        for terms in polys:
            zero &= _evaluate_grid(table, terms, x, ys) == 0
            if not zero.any():
                break
        if zero.any():
            return {'m': m, 'x': x, 'y': int(np.argmax(zero))}
    return None


def check_agprop(f, degree=None, budget=None):
    """
    Report on the three hypotheses for f: smoothness of the affine curve,
    constant term and axis shape, and the boundary lattice point condition.
    """
    degree = conf.option('AGPROP_DEGREE', degree)
    budget = conf.option('NAIVE_BUDGET', budget)
    constant_term = bool(f.constant_term()) and any(i for i, j in f.terms) and any(j for i, j in f.terms)
    boundary = polygon_boundary_condition(newton_polygon(f))
    witness, reached = None, None
    if f.partial('x').is_nonzero_constant() or f.partial('y').is_nonzero_constant():
        smooth = CERTIFIED
    elif _separable_hyperelliptic(f):
        smooth = CERTIFIED
    else:
        reached = 0
        for m in range(1, degree + 1):
            if f.ctx.q ** (2 * m) > budget:
                break
            witness = _common_zero(f, m)
            if witness is not None:
                break
            reached = m
        smooth = FAILED if witness is not None else CHECKED_TO_DEGREE
    point_bound = agprop_point_bound(f) if smooth != FAILED and constant_term and boundary else 0
    return ConditionReport(smooth, reached, witness, constant_term, boundary, point_bound)


def report_passes(report, m=1):
    if not (report.constant_term and report.boundary):
        return False
    if report.smooth == CERTIFIED:
        return True
    return report.smooth == CHECKED_TO_DEGREE and report.smooth_degree >= m


def edge_polynomials(f):
    data = []
    for a, b in newton_polygon(f).edges():
        start, end = min(a, b), max(a, b)
        coeffs = tuple(f.get(point) for point in edge_points(start, end))
        assert coeffs[0] and coeffs[-1]
        data.append(EdgeData(start, end, coeffs))
    return data


def _edge_roots(table, coeffs, us):
    return int(np.count_nonzero(table.horner(coeffs, us) == 0))


def count_points_toric(f, m=1, report=None, curve=None, budget=None):
    """
    Points over F_{q^m}: zeros on the torus plus, for every hull edge, the
    distinct nonzero roots of the edge polynomial.
    """
    if isinstance(f, ToricCurve):
        curve, f = f, f.f
    report = report or check_agprop(f)
    if not report_passes(report, m):
        raise InvalidParameters('toric counting needs the smoothness and boundary conditions', m=m)
    budget = conf.option('NAIVE_BUDGET', budget)
    big = extension(f.ctx, m)
    if (big.q - 1) ** 2 > budget:
        raise BudgetExceeded('torus of F_%s exceeds the budget %s' % (big.q, budget), q=big.q, budget=budget)
    table = power_table(big)
    embed = embedding(f.ctx, big)
    terms = _embedded_terms(f, big)
    units = np.arange(1, big.q, dtype=np.int64)
    torus = sum(int(np.count_nonzero(_evaluate_grid(table, terms, x, units) == 0)) for x in range(1, big.q))
    edges = sum(_edge_roots(table, [embed[c] for c in edge.coeffs], units) for edge in edge_polynomials(f))
    total = torus + edges
    if m == 1:
        assert total <= point_ceiling(f.ctx.q, len(newton_polygon(f))), total
        if curve is not None:
            assert total >= curve.r, (total, curve.r)
    return total


def _toric_certificate(q, g, curve=None, f=None, points_lb=None, extra=None):
    payload = curve.to_payload() if curve is not None else {
        'p': f.ctx.p,
        'newton_polygon': newton_polygon(f).to_list(),
    }
    payload.update(extra or {})
    return CurveCertificate('toric', q, g, points_lb, payload)


def curve_from_payload(payload, q):
    """Rebuild the polynomial of a toric certificate."""
    p = payload['p']
    if 'h' in payload:
        ctx = field_of_size(q)
        h = UPoly(ctx, payload['h'])
        terms = {(0, 2): 1}
        if p == 2:
            terms[(0, 1)] = 1
            terms.update(((e, 0), c) for e, c in enumerate(h.coeffs) if c)
        else:
            terms.update(((e, 0), ctx.neg(c)) for e, c in enumerate(h.coeffs) if c)
        return None, BivariatePoly(ctx, terms)
    curve = build_family_poly(p, payload['r'], payload['a'], q=q)
    return curve, curve.f


@family('toric')
def construct_toric(q, g, allow_fallback=False, **options):
    p, _ = prime_power(q)
    try:
        r, a_seq = select_parameters(p, g)
    except InfeasibleGenus:
        if not allow_fallback or g < 1:
            raise
        logger.info('toric hyperelliptic fallback for q=%s g=%s', q, g, extra={'q': q, 'g': g})
        f, h = fallback_poly(q, g)
        return _toric_certificate(q, g, f=f, points_lb=1, extra={'h': list(h.coeffs), 'modulus': list(f.ctx.modulus)})
    curve = build_family_poly(p, r, a_seq, q=q)
    assert genus_family(p, r, a_seq) == g
    return _toric_certificate(q, g, curve=curve, points_lb=r)
