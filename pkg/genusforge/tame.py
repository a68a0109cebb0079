"""
Planning of tame cyclic covers of the projective line.

A plan fixes primes l_1 < ... (l_1 the least prime not dividing q), the
degrees d_i = r_i s_i of the ramified places and the places themselves;
class field theory then gives a cyclic cover of degree L = prod l_i,
ramified only at those places, in which the rational place at infinity
splits completely. The cover is never written down: plans are certified
through the genus identity

    2g - 2 = -2L + L * sum((l_i - 1) / l_i * d_i)

and the hypotheses under which the cover exists.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from math import log, prod

from sympy import isprime, nextprime, primerange

from genusforge import conf, family
from genusforge.certificate import CurveCertificate
from genusforge.exceptions import InfeasibleGenus, InvalidParameters
from genusforge.field import count_irreducibles, field_of_size, find_irreducible, prime_power

logger = logging.getLogger('genusforge.tame')

# Places of larger degree are certified by count_irreducibles only.
MAX_PLACE_DEGREE = 128

TameParams = namedtuple('TameParams', 'q construction_q ell r s d L places genus branch')

RecordGenus = namedtuple('RecordGenus', 'genus d points_lb bound_holds')


class TameSelection(namedtuple('TameSelection', 'q g x_g p1 p2 p3 primes fallback trivial')):

    @property
    def L(self):
        return prod(self.primes)


def planning_field(q):
    """Even q is planned over F_2 and base changed."""
    p, _ = prime_power(q)
    return 2 if p == 2 else q


def least_prime_not_dividing(q):
    ell = 2
    while q % ell == 0:
        ell = nextprime(ell)
    return ell


def genus_tame(ells, ds):
    if len(ells) != len(ds) or not ells:
        raise InvalidParameters('need matching nonempty prime and degree lists', ell=tuple(ells), d=tuple(ds))
    if any(ell < 2 for ell in ells) or any(d < 1 for d in ds):
        raise InvalidParameters('primes must be >= 2 and degrees >= 1', ell=tuple(ells), d=tuple(ds))
    L = prod(ells)
    twice = -2 * L + L * sum(Fraction(ell - 1, ell) * d for ell, d in zip(ells, ds))
    if twice.denominator != 1 or twice.numerator % 2 or twice < -2:
        raise InvalidParameters('2g - 2 = %s is not an even integer >= -2' % twice, ell=tuple(ells), d=tuple(ds))
    return (int(twice) + 2) // 2


def crt_bound(ells):
    """g must exceed 1 - L + (L/2) sum_{i>=2} (l_i - 1)^2 for the planner to be guaranteed."""
    L = prod(ells)
    return 1 - L + Fraction(L, 2) * sum((ell - 1) ** 2 for ell in ells[1:])


def check_hypotheses(q, ells):
    """Order the primes as l_1, l_2 < ... < l_n and check the planning hypotheses."""
    ell1 = least_prime_not_dividing(q)
    ells = sorted(set(ells))
    if len(ells) < 2:
        raise InvalidParameters('need at least two primes', ell=tuple(ells))
    if ell1 not in ells:
        raise InvalidParameters('l_1 = %s must be among the primes' % ell1, ell=tuple(ells))
    rest = [ell for ell in ells if ell != ell1]
    for ell in rest:
        if not isprime(ell) or (q * (q - 1) * ell1) % ell == 0:
            raise InvalidParameters('%s must be a prime not dividing q(q-1)l_1' % ell, ell=tuple(ells), q=q)
    if q % 2 == 0 and not any(ell % 8 == 7 for ell in rest):
        raise InvalidParameters('even q needs a prime = 7 (mod 8)', ell=tuple(ells))
    return tuple([ell1] + rest)


def _multiplicities(ds):
    wanted = {}
    for d in ds:
        wanted[d] = wanted.get(d, 0) + 1
    return wanted


def _short_degree(q, ds):
    """A degree asked for more often than there are monic irreducibles of it, or None."""
    wanted = _multiplicities(ds)
    for d in sorted(wanted):
        if count_irreducibles(q, d) < wanted[d]:
            return d
    return None


def _choose_places(q, ds, max_degree):
    ctx = field_of_size(q)
    wanted = _multiplicities(ds)
    found = {}
    for d, count in wanted.items():
        found[d] = [list(f.coeffs) for f in find_irreducible(ctx, d, t=count)] if d <= max_degree else [None] * count
    places = []
    for d in ds:
        places.append(found[d].pop(0))
    return places


def plan_cover(q, ells, g, max_place_degree=MAX_PLACE_DEGREE):
    plan_q = planning_field(q)
    ells = check_hypotheses(plan_q, ells)
    n, L = len(ells), prod(ells)
    bound = crt_bound(ells)
    branch = 'crt' if g > bound else 'best-effort'
    if branch != 'crt':
        logger.info('g=%s is below the bound %s for primes %s, solving anyway', g, bound, ells, extra={
            'q': q, 'g': g, 'bound': str(bound),
        })
    r = [2] + [ell - 1 for ell in ells[1:]]
    special = None
    if plan_q == 2:
        special = next(index for index in range(1, n) if ells[index] % 8 == 7)
        r[special] = (ells[special] - 1) // 2
    T = [L * (ell - 1) * ri // ell for ell, ri in zip(ells, r)]
    total = 2 * (g - 1 + L)
    s = [0] * n
    moduli = [None] * n
    for index in range(1, n):
        ell = ells[index]
        if index == special:
            coefficient, modulus, target = T[index] // 2, 2 * ell, g - 1 + L
        else:
            coefficient, modulus, target = T[index], ell, total
        s[index] = target * pow(coefficient, -1, modulus) % modulus or modulus
        moduli[index] = modulus
    while True:
        rest = total - sum(t * si for t, si in zip(T[1:], s[1:]))
        s1, remainder = divmod(rest, T[0])
        if remainder or s1 < 1:
            raise InfeasibleGenus('no tame plan of genus %s with primes %s (s_1 = %s)'
                                  % (g, ells, Fraction(rest, T[0])), family='tame', q=q, g=g, bound=str(bound))
        s[0] = s1
        d = [ri * si for ri, si in zip(r, s)]
        short = _short_degree(plan_q, d)
        if short is None:
            break
        # places must be distinct: move the last index of that degree up one period
        index = max(i for i in range(1, n) if d[i] == short)
        logger.debug('degree %s is short of places, raising s_%s by %s', short, index + 1, moduli[index])
        s[index] += moduli[index]
    for ell, di in zip(ells, d):
        assert pow(plan_q, di, ell * (plan_q - 1)) == 1 % (ell * (plan_q - 1)), (ell, di)
    assert genus_tame(ells, d) == g
    places = _choose_places(plan_q, d, max_place_degree)
    return TameParams(q, plan_q, ells, tuple(r), tuple(s), tuple(d), L, places, g, branch)


def _eligible(limit, forbidden):
    return [ell for ell in primerange(2, limit + 1) if forbidden % ell]


def _fallback_selection(plan_q, g, ell1, forbidden, prime_bound):
    best = None
    chosen = []
    candidate = 1
    while True:
        candidate = nextprime(candidate)
        if candidate > prime_bound:
            break
        if forbidden % candidate == 0:
            continue
        chosen.append(candidate)
        ells = [ell1] + chosen
        if g <= crt_bound(ells):
            break
        if plan_q != 2 or any(ell % 8 == 7 for ell in chosen):
            best = tuple(ells)
    return best


def select_primes(q, g, prime_bound=None):
    """
    Prime set for a tame plan of genus g: all eligible primes up to x_g with
    p_1 and p_2 traded for p_3, or the smallest eligible primes when that
    construction is not available.
    """
    prime_bound = conf.option('PRIME_TABLE_BOUND', prime_bound)
    plan_q = planning_field(q)
    ell1 = least_prime_not_dividing(plan_q)
    forbidden = plan_q * (plan_q - 1) * ell1

    x_g = None
    for x in primerange(2, prime_bound + 1):
        if forbidden % x == 0:
            continue
        primes = _eligible(x, forbidden)
        if 2 * (g - 1) <= ell1 * prod(primes) * (-2 + sum((ell - 1) ** 2 for ell in primes)):
            x_g = x
            break
    if x_g is None:
        raise InvalidParameters('x_g exceeds the prime bound %s' % prime_bound, q=q, g=g)
    primes = _eligible(x_g, forbidden)
    P = prod(primes)
    S = sum((ell - 1) ** 2 for ell in primes)

    p1 = next((ell for ell in primes if 2 * ell * (g - 1) > ell1 * P * (-2 - (ell - 1) ** 2 + S)), None)
    p2 = None
    if p1 is not None:
        p2 = next((ell for ell in reversed(primes) if ell != p1), None)
    p3 = None
    if p2 is not None:
        base = -2 - (p1 - 1) ** 2 - (p2 - 1) ** 2 + S
        candidate = 1
        while True:
            candidate = nextprime(candidate)
            if candidate > prime_bound:
                break
            holds = 2 * p1 * p2 * (g - 1) > ell1 * candidate * P * (base + (candidate - 1) ** 2)
            if holds:
                p3 = candidate
            elif base + (candidate - 1) ** 2 > 0:
                break
        if p3 is not None and (p3 in primes or forbidden % p3 == 0):
            p3 = None

    if p3 is not None:
        chosen = sorted(set(ell for ell in primerange(2, x_g + 1) if (plan_q * (plan_q - 1) * p1 * p2) % ell)
                        | {p3, ell1})
        try:
            ells = check_hypotheses(plan_q, chosen)
        except InvalidParameters:
            ells = None
        if ells is not None and g > crt_bound(ells):
            return TameSelection(q, g, x_g, p1, p2, p3, ells, False, False)

    logger.info('refined prime selection undefined for q=%s g=%s, using the smallest primes', q, g,
                extra={'q': q, 'g': g, 'x_g': x_g})
    ells = _fallback_selection(plan_q, g, ell1, forbidden, prime_bound)
    if ells is None:
        return TameSelection(q, g, x_g, p1, p2, p3, (ell1,), True, True)
    return TameSelection(q, g, x_g, p1, p2, p3, ells, True, False)


def record_genera(q, e):
    """
    The cover of degree d = (q^e - 1)/(q - 1) ramified at one place of
    degree e: genus (d - 1)(e/2 - 1) and d rational points.
    """
    if e < 4:
        raise InvalidParameters('record family needs e >= 4', e=e)
    d = (q ** e - 1) // (q - 1)
    twice = (d - 1) * (e - 2)
    assert twice % 2 == 0, (q, e)
    g = twice // 2
    return RecordGenus(g, d, d, d > 2 * log(q) * g / log(g))


def record_family(q, e_max):
    return [record_genera(q, e) for e in range(4, e_max + 1)]


def record_certificate(q, e):
    record = record_genera(q, e)
    payload = {
        'record_e': e,
        'd': [record.d],
        'L': record.d,
        'enumerable': False,
        'construction_q': q,
    }
    return CurveCertificate('tame', q, record.genus, record.points_lb, payload)


def asymptotic_ratio(g, points):
    """points / (6 g log log g / (log g)^3), for g > e."""
    return points / (6 * g * log(log(g)) / log(g) ** 3)


def plan_payload(plan, selection=None):
    payload = {
        'ell': list(plan.ell),
        'r': list(plan.r),
        's': list(plan.s),
        'd': list(plan.d),
        'L': plan.L,
        'places': plan.places,
        'enumerable': False,
        'branch': plan.branch,
        'construction_q': plan.construction_q,
    }
    if selection is not None:
        payload['selection'] = {
            'x_g': selection.x_g,
            'p1': selection.p1,
            'p2': selection.p2,
            'p3': selection.p3,
            'fallback': selection.fallback,
        }
    return payload


@family('tame')
def construct_tame(q, g, ells=None, prime_bound=None, **options):
    selection = None
    if ells is None:
        selection = select_primes(q, g, prime_bound=prime_bound)
        if selection.trivial:
            raise InfeasibleGenus('genus %s is too small for a tame plan over F_%s' % (g, q),
                                  family='tame', q=q, g=g)
        ells = selection.primes
    plan = plan_cover(q, ells, g)
    return CurveCertificate('tame', q, g, plan.L, plan_payload(plan, selection))
