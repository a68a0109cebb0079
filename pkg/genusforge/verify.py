"""
Independent verification of certificates.

Abelian towers are counted with the trace criterion: y^p - y = c has p
solutions in F_Q when Tr(c) = 0 and none otherwise. The naive counter
enumerates fibre variables instead and shares no code with the trace
kernel; the genus oracle sums the genera of all degree-p subcovers.
"""
import itertools
import logging
from math import log
from time import time

import numpy as np

from genusforge import FAMILIES, conf
from genusforge.abelian import ASTower, emit_equations, even_bound_holds, odd_bound_holds
from genusforge.exceptions import BudgetExceeded, GenusForgeError, InconsistentCounts, InvalidParameters
from genusforge.field import UPoly, count_irreducibles, embedding, extension, field_of_size, is_irreducible
from genusforge.kernels import chunked_sum, power_table
from genusforge.lattice import newton_polygon, pick_data
from genusforge.tame import check_hypotheses, genus_tame, record_certificate, record_family
from genusforge.toric import check_agprop, count_points_toric, curve_from_payload, report_passes
from genusforge.zeta import lpolynomial_from_counts, weil_ok

logger = logging.getLogger('genusforge.verify')

FAST = 'fast'
NAIVE = 'naive'
SKIPPED = 'skipped'

TABLE_COLUMNS = ('g', 'family', 'points_lb', 'N1_verified', 'ratio_g_over_logg', 'ratio_g_cuberoot')

TABLE_FAMILIES = ('abelian', 'toric', 'tame', 'tame-records')


def _log_timing(label, start, **extra):
    duration = time() - start
    extra['duration'] = duration
    logger.debug('(%.3f) %s', duration, label, extra=extra)


def count_points_abelian(tower, m=1, threads=None, budget=None, chunk_size=None):
    """Exact N_m of the tower (and its twist) over F_{q^m}, q = tower.base_q."""
    budget = conf.option('FAST_BUDGET', budget)
    threads = conf.option('THREADS', threads)
    chunk_size = conf.option('CHUNK_SIZE', chunk_size)
    big = extension(tower.field, m)
    Q = big.q
    if Q > budget:
        raise BudgetExceeded('F_%s exceeds the fast budget %s' % (Q, budget), q=Q, m=m, budget=budget)
    start = time()
    table = power_table(big)
    order = Q - 1
    fibre = tower.p ** tower.n
    layers = tower.layers()
    f = None
    if tower.twist is not None:
        embed = embedding(tower.field, big)
        f = [embed[c] for c in tower.twist]

    # x = gamma^e; two-point towers skip e = 0, which is x = 1
    offset = 1 if tower.two_point else 0

    def count(first, last):
        e = np.arange(first + offset, last + offset, dtype=np.int64)
        x = table.exp[e]
        log_x1 = table.log[table.sub(x, 1)] if tower.two_point else None
        split = np.ones(len(e), dtype=bool)
        for i, j in layers:
            logs = -i * e
            if tower.two_point:
                logs = logs - j * log_x1
            split &= table.trace_table[table.power_of_gamma(logs % order)] == 0
        if f is None:
            return int(np.count_nonzero(split)) * fibre
        fx = table.horner(f, x)
        weight = np.where(fx == 0, 1, 1 + table.character(fx))
        return int(weight[split].sum()) * fibre

    affine = chunked_sum(count, order - offset, chunk_size, threads)
    if f is not None:
        local = sum(1 + int(table.character(table.horner(f, np.array([x0])))[0]) for x0 in (0, 1)) + 2 * fibre
    elif tower.two_point:
        local = 2 + fibre
    else:
        local = 1 + fibre
    _log_timing('abelian count F_%s' % Q, start, q=tower.base_q, m=m, method=FAST)
    return affine + local


def count_points_hyperelliptic(q, h, m=1, threads=None, budget=None, chunk_size=None):
    """N_m of y^2 = h(x), deg h odd, odd q."""
    budget = conf.option('FAST_BUDGET', budget)
    threads = conf.option('THREADS', threads)
    chunk_size = conf.option('CHUNK_SIZE', chunk_size)
    ctx = field_of_size(q)
    if ctx.p == 2:
        raise InvalidParameters('hyperelliptic counting needs odd q', q=q)
    h = UPoly(ctx, h)
    if h.degree() % 2 == 0:
        raise InvalidParameters('h must have odd degree', degree=h.degree())
    big = extension(ctx, m)
    if big.q > budget:
        raise BudgetExceeded('F_%s exceeds the fast budget %s' % (big.q, budget), q=big.q, m=m, budget=budget)
    start = time()
    table = power_table(big)
    embed = embedding(ctx, big)
    coeffs = [embed[c] for c in h.coeffs]

    def count(first, last):
        values = table.horner(coeffs, np.arange(first, last, dtype=np.int64))
        return int((1 + table.character(values)).sum())

    total = chunked_sum(count, big.q, chunk_size, threads) + 1
    _log_timing('hyperelliptic count F_%s' % big.q, start, q=q, m=m, method=FAST)
    return total


def _equation_parts(embed, record):
    fibre, base = {}, {}
    for (a, b, e), c in record.terms.items():
        if e:
            fibre[(a, b, e)] = embed[c]
        else:
            base[(a, b)] = embed[c]
    separable = all(a == 0 and b == 0 for a, b, _ in fibre)
    return fibre, base, separable


def _base_values(table, base, x):
    value = np.zeros_like(x)
    for (a, b), c in base.items():
        term = table.mul(c, table.power(x, a))
        if b:
            term = table.mul(term, table.power(table.sub(x, 1), b))
        value = table.add(value, term)
    return value


def _fibre_values(table, fibre, x, v):
    value = np.zeros_like(v)
    for (a, b, e), c in fibre.items():
        coefficient = table.mul(c, table.power(np.array([x]), a))
        if b:
            coefficient = table.mul(coefficient, table.power(table.sub(np.array([x]), 1), b))
        value = table.add(value, table.mul(coefficient, table.power(v, e)))
    return value


def naive_count(equations, q, m=1, exclude=(), torus=False, extra=0, budget=None):
    """
    Count assignments (x, v_1, ..., v_r) over F_{q^m} satisfying every
    equation, each equation in its own variable, plus ``extra`` local points.
    ``exclude`` lists x codes left out; ``torus`` restricts x and the v to
    nonzero values.

    Work is counted as Q per equation whose fibre part has constant
    coefficients (one value table per equation) and Q^2 for any other.
    """
    budget = conf.option('NAIVE_BUDGET', budget)
    ctx = field_of_size(q)
    big = extension(ctx, m)
    Q = big.q
    table = power_table(big)
    embed = embedding(ctx, big)
    parts = [_equation_parts(embed, record) for record in equations]
    work = sum(Q if separable else Q * Q for _, _, separable in parts) + Q * len(parts)
    if work > budget:
        raise BudgetExceeded('naive count over F_%s needs %s units, budget %s' % (Q, work, budget),
                             q=Q, m=m, budget=budget)
    start = time()
    v = np.arange(1 if torus else 0, Q, dtype=np.int64)
    excluded = set(exclude)
    xs = np.array([x for x in range(1 if torus else 0, Q) if x not in excluded], dtype=np.int64)
    counts = np.ones(len(xs), dtype=object)
    for fibre, base, separable in parts:
        rhs = table.neg(_base_values(table, base, xs))
        if separable:
            histogram = np.bincount(_fibre_values(table, fibre, 0, v), minlength=Q)
            counts = counts * histogram[rhs].astype(object)
        else:
            column = [int(np.count_nonzero(_fibre_values(table, fibre, int(x), v) == target))
                      for x, target in zip(xs, rhs)]
            counts = counts * np.array(column, dtype=object)
    total = int(sum(counts)) + extra
    _log_timing('naive count F_%s' % Q, start, q=q, m=m, method=NAIVE, work=work)
    return total


def _square_roots(table, value, Q):
    """Number of w in F_Q with w^2 = value, by enumeration."""
    w = np.arange(Q, dtype=np.int64)
    return int(np.count_nonzero(table.mul(w, w) == value))


def local_points(cert, m=1):
    """Points above x = 0, 1 and infinity, read from the local structure of the family."""
    if cert.family == 'hyperelliptic':
        return 1, ()
    tower = ASTower.from_payload(cert.payload, cert.q)
    fibre = tower.p ** tower.n
    if not tower.two_point:
        return 1 + fibre, (0,)
    if tower.twist is None:
        return 2 + fibre, (0, 1)
    big = extension(tower.field, m)
    table = power_table(big)
    embed = embedding(tower.field, big)
    f = tower.twist_poly()
    ramified = sum(_square_roots(table, f.evaluate(x0, ctx=big, embed=embed), big.q) for x0 in (0, 1))
    return ramified + fibre * _square_roots(table, 1, big.q), (0, 1)


def naive_count_certificate(cert, m=1, budget=None):
    extra, exclude = local_points(cert, m)
    return naive_count(emit_equations(cert), cert.q, m, exclude=exclude, extra=extra, budget=budget)


def genus_oracle_abelian(tower):
    """Sum of the genera of the (p^n - 1)/(p - 1) degree-p subcovers."""
    p, n = tower.p, tower.n
    layers = tower.layers()
    twice = 0
    for vector in itertools.product(range(p), repeat=n):
        nonzero = [k for k, c in enumerate(vector) if c]
        if not nonzero or vector[nonzero[0]] != 1:
            continue
        top_i = max(layers[k][0] for k in nonzero)
        if tower.two_point:
            twice += (p - 1) * (top_i + max(layers[k][1] for k in nonzero))
        else:
            twice += (p - 1) * (top_i - 1)
    assert twice % 2 == 0, tower
    genus = twice // 2
    if tower.twist is None:
        return genus
    # Riemann-Hurwitz for the double cover branched at the p^n D zeros of f
    return 2 * genus - 1 + p ** n * tower.D


def _tame_hypotheses(cert):
    payload = cert.payload
    if 'record_e' in payload:
        e = payload['record_e']
        d = (cert.q ** e - 1) // (cert.q - 1)
        return payload['d'] == [d] and payload['L'] == d == cert.points_lb
    q = payload['construction_q']
    try:
        ells = check_hypotheses(q, payload['ell'])
    except InvalidParameters:
        return False
    if list(ells) != list(payload['ell']):
        return False
    L = 1
    for ell, r, d in zip(ells, payload['r'], payload['d']):
        L *= ell
        if d % r or pow(q, d, ell * (q - 1)) != 1 % (ell * (q - 1)):
            return False
    if L != payload['L'] or cert.points_lb > L:
        return False
    ctx = field_of_size(q)
    for d, place in zip(payload['d'], payload['places']):
        if place is None:
            if count_irreducibles(q, d) < payload['d'].count(d):
                return False
            continue
        poly = UPoly(ctx, place)
        if poly.degree() != d or not poly.is_monic() or not is_irreducible(poly):
            return False
    given = [tuple(place) for place in payload['places'] if place is not None]
    return len(given) == len(set(given))


def genus_oracle(cert):
    """Genus from the construction data, without the closed formulas of the constructors."""
    payload = cert.payload
    if cert.family == 'abelian':
        return genus_oracle_abelian(ASTower.from_payload(payload, cert.q))
    if cert.family == 'hyperelliptic':
        h = UPoly(field_of_size(cert.q), payload['h'])
        if h.degree() < 1 or h.degree() % 2 == 0 or not h.is_squarefree():
            return None
        return (h.degree() - 1) // 2
    if cert.family == 'toric':
        _, f = curve_from_payload(payload, cert.q)
        return pick_data(newton_polygon(f)).interior
    if 'record_e' in payload:
        d, e = payload['d'][0], payload['record_e']
        return (d - 1) * (e - 2) // 2
    try:
        return genus_tame(payload['ell'], payload['d'])
    except InvalidParameters:
        return None


class VerificationReport(object):
    """One entry per claim of the certificate."""

    def __init__(self, family, genus_claim, genus_oracle, enumerable=True):
        self.family = family
        self.genus_claim = genus_claim
        self.genus_oracle = genus_oracle
        self.enumerable = enumerable
        self.counts = []
        self.weil = []
        self.lpoly = None
        self.lpoly_ok = None
        self.claims_ok = None
        self.hypotheses_ok = None

    @property
    def genus_ok(self):
        return self.genus_oracle is not None and self.genus_oracle == self.genus_claim

    @property
    def counts_ok(self):
        return all(entry.get('naive', entry['N']) == entry['N'] for entry in self.counts)

    @property
    def weil_ok(self):
        return all(self.weil)

    @property
    def ok(self):
        checks = [self.genus_ok, self.counts_ok, self.weil_ok, self.claims_ok is not False,
                  self.lpoly_ok is not False, self.hypotheses_ok is not False]
        return all(checks)

    def count(self, m):
        for entry in self.counts:
            if entry['m'] == m:
                return entry['N']
        return None

    def to_dict(self):
        data = {
            'genus_oracle': self.genus_oracle,
            'genus_ok': self.genus_ok,
            'counts': self.counts,
            'weil_ok': self.weil_ok,
            'lpoly': self.lpoly,
            'lpoly_ok': self.lpoly_ok,
            'claims_ok': self.claims_ok,
            'ok': self.ok,
        }
        if not self.enumerable:
            data['enumerable'] = False
            data['hypotheses_ok'] = self.hypotheses_ok
        return data


def _counters(cert, naive_budget):
    """(fast, naive) callables taking (m, budget) for the certificate's family."""
    if cert.family == 'abelian':
        tower = ASTower.from_payload(cert.payload, cert.q)
        return (lambda m, **kwargs: count_points_abelian(tower, m, **kwargs),
                lambda m, budget: naive_count_certificate(cert, m, budget=budget))
    if cert.family == 'hyperelliptic':
        return (lambda m, **kwargs: count_points_hyperelliptic(cert.q, cert.payload['h'], m, **kwargs),
                lambda m, budget: naive_count_certificate(cert, m, budget=budget))
    curve, f = curve_from_payload(cert.payload, cert.q)
    report = check_agprop(f, budget=naive_budget)

    def toric(m, budget):
        if not report_passes(report, m):
            raise InvalidParameters('smoothness not established over F_%s^%s' % (cert.q, m), m=m)
        return count_points_toric(f, m, report=report, curve=curve, budget=budget)

    return None, toric


def verify_certificate(cert, depth=None, threads=None, naive_budget=None, fast_budget=None):
    depth = conf.option('DEPTH', depth)
    if depth < 0:
        raise InvalidParameters('depth must be nonnegative', depth=depth)
    naive_budget = conf.option('NAIVE_BUDGET', naive_budget)
    fast_budget = conf.option('FAST_BUDGET', fast_budget)
    start = time()
    report = VerificationReport(cert.family, cert.genus, genus_oracle(cert), cert.enumerable)
    if not cert.enumerable:
        report.hypotheses_ok = _tame_hypotheses(cert)
        report.claims_ok = report.hypotheses_ok
        _log_timing('verify %s' % cert.family, start, q=cert.q, depth=depth)
        return report

    fast, naive = _counters(cert, naive_budget)
    g = cert.genus
    for m in range(1, depth + 1):
        entry = {'m': m, 'N': None, 'method': SKIPPED}
        if fast is not None:
            try:
                entry.update(N=fast(m, threads=threads, budget=fast_budget), method=FAST)
            except BudgetExceeded:
                pass
        try:
            value = naive(m, naive_budget)
        except (BudgetExceeded, InvalidParameters) as e:
            logger.debug('no naive count for m=%s: %s', m, e)
        else:
            if entry['N'] is None:
                entry.update(N=value, method=NAIVE)
            else:
                entry['naive'] = value
        report.counts.append(entry)
        if entry['N'] is not None:
            report.weil.append(weil_ok(cert.q, g, m, entry['N']))

    N_1 = report.count(1)
    if N_1 is not None:
        report.claims_ok = cert.points_lb <= N_1
    counted = [entry['N'] for entry in report.counts]
    if depth >= 2 * g and None not in counted:
        try:
            zeta = lpolynomial_from_counts(cert.q, g, counted)
        except InconsistentCounts as e:
            logger.info('L-polynomial check failed: %s', e, extra={'q': cert.q, 'g': g})
            report.lpoly_ok = False
        else:
            report.lpoly = list(zeta.coeffs)
            report.lpoly_ok = zeta.roots_ok
    _log_timing('verify %s' % cert.family, start, q=cert.q, depth=depth)
    return report


def _format_ratio(value):
    return '%.6g' % value if value is not None else ''


def _record_candidates(q, g, e_max):
    for record, e in zip(record_family(q, e_max), itertools.count(4)):
        if record.genus == g:
            yield record_certificate(q, e)
        if record.genus > g:
            break


def _candidates(q, g, family, e_max):
    if family == 'tame-records':
        return list(_record_candidates(q, g, e_max))
    return [FAMILIES[family](q, g)]


def _bound_annotation(cert):
    if cert.genus < 2:
        return None
    p = field_of_size(cert.q).p
    if p == 2:
        return even_bound_holds(cert.genus, cert.points_lb)
    return odd_bound_holds(p, cert.genus, cert.points_lb)


def lower_bound_table(q, g_lo, g_hi, families=('abelian', 'toric'), threads=None, naive_budget=None,
                      fast_budget=None, e_max=None):
    """
    One row per genus with the best verified lower bound among the families.
    Failed constructions and failed verifications are recorded per row.
    """
    if g_lo < 0 or g_hi < g_lo:
        raise InvalidParameters('need 0 <= from <= to', g_lo=g_lo, g_hi=g_hi)
    families = TABLE_FAMILIES if 'all' in families else tuple(families)
    unknown = [name for name in families if name not in TABLE_FAMILIES]
    if unknown:
        raise InvalidParameters('unknown families %s' % ', '.join(unknown), families=','.join(unknown))
    e_max = conf.option('TAME_RECORD_MAX_E', e_max)
    field_of_size(q)
    rows = []
    for g in range(g_lo, g_hi + 1):
        best, failures = None, {}
        for name in families:
            try:
                candidates = _candidates(q, g, name, e_max)
            except GenusForgeError as e:
                failures[name] = e.identifier
                continue
            for cert in candidates:
                report = verify_certificate(cert, depth=1, threads=threads, naive_budget=naive_budget,
                                            fast_budget=fast_budget)
                if not report.ok:
                    logger.warning('%s certificate for q=%s g=%s failed verification', name, q, g,
                                   extra={'q': q, 'g': g, 'family': name})
                    failures[name] = 'VerificationFailed'
                    continue
                if best is None or cert.points_lb > best[0].points_lb:
                    best = (cert, report, name)
        row = dict.fromkeys(TABLE_COLUMNS, '')
        row.update(g=g, failures=failures)
        if best is None:
            row.update(family='none', points_lb=0)
        else:
            cert, report, name = best
            N_1 = report.count(1)
            row.update(family=name, points_lb=cert.points_lb, N1_verified='' if N_1 is None else N_1,
                       witness=cert, bound_holds=_bound_annotation(cert))
            if g >= 2:
                row['ratio_g_over_logg'] = _format_ratio(cert.points_lb / (g / log(g)))
            if g >= 1:
                row['ratio_g_cuberoot'] = _format_ratio(cert.points_lb / g ** (1 / 3))
        rows.append(row)
    return rows
