"""
L-polynomials from point counts.

With S_m = q^m + 1 - N_m the power sums of the reciprocal roots, Newton's
identities give a_1..a_g of L(T) = sum a_i T^i and the functional equation
a_{2g-i} = q^{g-i} a_i gives the rest. Counts beyond N_g are then predicted
and compared exactly.
"""
import logging
from collections import namedtuple

import mpmath
from sympy import Poly, sqf_part, symbols

from genusforge.exceptions import InconsistentCounts, InvalidParameters

logger = logging.getLogger('genusforge.zeta')

ROOT_TOLERANCE = 1e-9

T = symbols('T')


def weil_ok(q, g, m, N):
    """|N - q^m - 1| <= 2g q^{m/2}, compared after squaring."""
    return (N - q ** m - 1) ** 2 <= 4 * g * g * q ** m


def power_sums(coeffs, count):
    """S_1..S_count of the reciprocal roots of sum coeffs[i] T^i."""
    degree = len(coeffs) - 1
    sums = []
    for m in range(1, count + 1):
        a_m = coeffs[m] if m <= degree else 0
        sums.append(-m * a_m - sum(sums[i - 1] * (coeffs[m - i] if m - i <= degree else 0) for i in range(1, m)))
    return sums


class ZetaData(namedtuple('ZetaData', 'q g counts coeffs roots_ok')):

    def predict(self, m):
        return self.q ** m + 1 - power_sums(self.coeffs, m)[-1]

    def to_list(self):
        return list(self.coeffs)


def roots_ok(q, coeffs, tolerance=ROOT_TOLERANCE):
    """Every reciprocal root alpha of L satisfies ||alpha|^2 - q| <= tolerance."""
    if len(coeffs) == 1:
        return True
    # the reciprocal roots of L are the roots of T^{2g} L(1/T)
    poly = sqf_part(Poly(list(coeffs), T))
    with mpmath.workdps(60):
        try:
            roots = mpmath.polyroots([int(c) for c in poly.all_coeffs()], maxsteps=500, extraprec=400)
        except mpmath.libmp.NoConvergence:
            logger.warning('root finding did not converge for q=%s L=%s', q, list(coeffs))
            return False
        return all(abs(abs(root) ** 2 - q) <= tolerance for root in roots)


def lpolynomial_from_counts(q, g, counts):
    """ZetaData for N_1..N_k, k >= g; raises InconsistentCounts."""
    counts = [int(N) for N in counts]
    if g < 0:
        raise InvalidParameters('genus must be nonnegative', g=g)
    if len(counts) < g:
        raise InvalidParameters('need at least g = %s counts, got %s' % (g, len(counts)), g=g)
    sums = [q ** m + 1 - N for m, N in enumerate(counts, 1)]
    coeffs = [1]
    for m in range(1, g + 1):
        numerator = -sum(sums[i - 1] * coeffs[m - i] for i in range(1, m + 1))
        a_m, remainder = divmod(numerator, m)
        if remainder:
            raise InconsistentCounts('a_%s = %s/%s is not an integer' % (m, numerator, m), q=q, g=g, m=m)
        coeffs.append(a_m)
    coeffs.extend(q ** (g - i) * coeffs[i] for i in range(g - 1, -1, -1))
    assert len(coeffs) == 2 * g + 1
    predicted = power_sums(coeffs, len(counts))
    for m, (S, expected) in enumerate(zip(sums, predicted), 1):
        if S != expected:
            raise InconsistentCounts('N_%s = %s, the L-polynomial predicts %s' % (m, counts[m - 1],
                                                                                  q ** m + 1 - expected),
                                     q=q, g=g, m=m)
    return ZetaData(q, g, tuple(counts), tuple(coeffs), roots_ok(q, coeffs))
