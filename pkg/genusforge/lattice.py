"""
Convex lattice polygons: Newton polygons, Pick data, the boundary condition
for toric curves, mixed areas and the small v-gon searches.
"""
import functools
import logging
from collections import namedtuple
from fractions import Fraction
from math import gcd

import numpy as np

from genusforge.exceptions import DegeneratePolygon, InvalidParameters

logger = logging.getLogger('genusforge.lattice')

LatticePoint = namedtuple('LatticePoint', 'i j')

PickData = namedtuple('PickData', 'interior boundary area2')


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """
    Counterclockwise hull vertices starting from the lexicographically least
    point, collinear points dropped (monotone chain).
    """
    points = sorted(set(LatticePoint(*point) for point in points))
    if len(points) <= 2:
        return points
    lower, upper = [], []
    for point in points:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], point) <= 0:
            lower.pop()
        lower.append(point)
    for point in reversed(points):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], point) <= 0:
            upper.pop()
        upper.append(point)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


class LatticePolygon(object):
    """
    Convex lattice polygon given by its counterclockwise vertices, stored in
    the canonical rotation that starts at the lexicographically least vertex.
    Segments and points are only built with ``degenerate=True``.
    """

    def __init__(self, vertices, degenerate=False):
        vertices = [LatticePoint(*vertex) for vertex in vertices]
        if len(vertices) >= 3:
            n = len(vertices)
            for index in range(n):
                if cross(vertices[index - 1], vertices[index], vertices[(index + 1) % n]) <= 0:
                    raise InvalidParameters('vertices are not in strictly convex counterclockwise position',
                                            vertex=tuple(vertices[index]))
            start = vertices.index(min(vertices))
            vertices = vertices[start:] + vertices[:start]
        elif not degenerate:
            raise DegeneratePolygon('a polygon needs at least 3 vertices', vertices=len(vertices))
        else:
            vertices = sorted(set(vertices))
        self.vertices = tuple(vertices)

    @classmethod
    def hull(cls, points, degenerate=False):
        return cls(convex_hull(points), degenerate=degenerate)

    def __eq__(self, other):
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return 'LatticePolygon(%s)' % self.to_list()

    def __len__(self):
        return len(self.vertices)

    @property
    def is_degenerate(self):
        return len(self.vertices) < 3

    def edges(self):
        n = len(self.vertices)
        if n < 2:
            return []
        if n == 2:
            return [(self.vertices[0], self.vertices[1]), (self.vertices[1], self.vertices[0])]
        return [(self.vertices[index], self.vertices[(index + 1) % n]) for index in range(n)]

    def area2(self):
        n = len(self.vertices)
        if n < 3:
            return 0
        return sum(self.vertices[index - 1][0] * self.vertices[index][1] -
                   self.vertices[index][0] * self.vertices[index - 1][1] for index in range(n))

    def area(self):
        return Fraction(self.area2(), 2)

    def contains(self, point):
        """Closed membership test."""
        return all(cross(a, b, point) >= 0 for a, b in self.edges())

    def to_list(self):
        return [[vertex.i, vertex.j] for vertex in self.vertices]


class BivariatePoly(object):
    """
    Sparse bivariate polynomial: {(i, j): coefficient code}, no stored zeros.
    """

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = dict((LatticePoint(*key), ctx.check(value)) for key, value in dict(terms).items() if value)

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.ctx == other.ctx and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'BivariatePoly(%s)' % self

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda item: (item[0].i + item[0].j, item[0])):
            monomial = '*'.join(
                name if e == 1 else '%s^%s' % (name, e) for name, e in (('x', i), ('y', j)) if e
            )
            if not monomial:
                parts.append(str(c))
            else:
                parts.append(monomial if c == 1 else '%s*%s' % (c, monomial))
        return ' + '.join(parts) or '0'

    def support(self):
        return sorted(self.terms)

    def get(self, point, default=0):
        return self.terms.get(LatticePoint(*point), default)

    def partial(self, variable):
        """Formal derivative with respect to 'x' or 'y'."""
        index = {'x': 0, 'y': 1}[variable]
        terms = {}
        for point, c in self.terms.items():
            e = point[index]
            value = self.ctx.scale(c, e)
            if e and value:
                shifted = (point.i - 1, point.j) if index == 0 else (point.i, point.j - 1)
                terms[shifted] = value
        return BivariatePoly(self.ctx, terms)

    def is_nonzero_constant(self):
        return list(self.terms) == [LatticePoint(0, 0)]

    def constant_term(self):
        return self.terms.get(LatticePoint(0, 0), 0)

    def evaluate(self, x, y):
        ctx = self.ctx
        value = 0
        for (i, j), c in self.terms.items():
            value = ctx.add(value, ctx.mul(c, ctx.mul(ctx.pow(x, i), ctx.pow(y, j))))
        return value

    def to_list(self):
        return [[point.i, point.j, c] for point, c in sorted(self.terms.items())]


def newton_polygon(f):
    hull = convex_hull(f.support())
    if len(hull) < 3:
        raise DegeneratePolygon('support of the polynomial lies on a line', support=len(f.terms))
    return LatticePolygon(hull)


def interior_count(polygon):
    """Interior lattice points by a bounding-box scan with half-plane tests."""
    xs = [vertex.i for vertex in polygon.vertices]
    ys = [vertex.j for vertex in polygon.vertices]
    grid_i, grid_j = np.meshgrid(np.arange(min(xs), max(xs) + 1, dtype=np.int64),
                                 np.arange(min(ys), max(ys) + 1, dtype=np.int64))
    inside = np.ones(grid_i.shape, dtype=bool)
    for a, b in polygon.edges():
        inside &= (b.i - a.i) * (grid_j - a.j) - (b.j - a.j) * (grid_i - a.i) > 0
    return int(inside.sum())


def boundary_count(polygon):
    return sum(gcd(abs(b.i - a.i), abs(b.j - a.j)) for a, b in polygon.edges())


def pick_data(polygon):
    if polygon.is_degenerate:
        raise DegeneratePolygon('Pick data needs a polygon')
    data = PickData(interior_count(polygon), boundary_count(polygon), polygon.area2())
    assert data.area2 == 2 * data.interior + data.boundary - 2, data
    return data


def edge_points(a, b):
    g = gcd(abs(b.i - a.i), abs(b.j - a.j))
    di, dj = (b.i - a.i) // g, (b.j - a.j) // g
    return [LatticePoint(a.i + t * di, a.j + t * dj) for t in range(g + 1)]


def boundary_condition(polygon):
    """Every non-vertex boundary lattice point lies on a coordinate axis."""
    for a, b in polygon.edges():
        for point in edge_points(a, b)[1:-1]:
            if point.i != 0 and point.j != 0:
                return False
    return True


def _angle_key(vector):
    # half-plane first, then counterclockwise order within the half-plane
    upper = vector[1] > 0 or (vector[1] == 0 and vector[0] > 0)
    return 0 if upper else 1


def _compare_edges(u, v):
    hu, hv = _angle_key(u), _angle_key(v)
    if hu != hv:
        return hu - hv
    turn = u[0] * v[1] - u[1] * v[0]
    return -1 if turn > 0 else (1 if turn < 0 else 0)


def minkowski_sum(first, second):
    """Minkowski sum by merging the counterclockwise edge sequences."""
    def start(polygon):
        return min(polygon.vertices, key=lambda vertex: (vertex.j, vertex.i))

    vectors = [(b.i - a.i, b.j - a.j) for polygon in (first, second) for a, b in polygon.edges()]
    vectors.sort(key=functools.cmp_to_key(_compare_edges))
    a, b = start(first), start(second)
    current = LatticePoint(a.i + b.i, a.j + b.j)
    walk = [current]
    for di, dj in vectors:
        current = LatticePoint(current.i + di, current.j + dj)
        walk.append(current)
    return LatticePolygon.hull(walk, degenerate=True)


def mixed_area(first, second):
    """Area(P1 + P2) - Area(P1) - Area(P2), as a Fraction."""
    area = minkowski_sum(first, second).area() - first.area() - second.area()
    assert area >= 0, (first, second)
    return area


def arnold_check(polygon):
    v = len(polygon.vertices)
    return polygon.area2() * 8192 >= 2 * v ** 3


def _chain_interior(chain):
    if len(chain) < 3:
        return 0
    polygon = LatticePolygon(chain)
    return (polygon.area2() - boundary_count(polygon) + 2) // 2


def _search_vgons(v, bound, start, best):
    grid = [LatticePoint(i, j) for j in range(bound + 1) for i in range(bound + 1)
            if (j, i) > (start.j, start.i)]

    def closes(chain):
        return (cross(chain[-2], chain[-1], start) > 0 and cross(chain[-1], start, chain[1]) > 0)

    def extend(chain):
        interior = _chain_interior(chain)
        if interior >= best[0]:
            return
        if len(chain) == v:
            if closes(chain):
                best[0], best[1] = interior, LatticePolygon(chain)
            return
        for point in grid:
            if len(chain) >= 2:
                if cross(start, chain[-1], point) <= 0 or cross(chain[-2], chain[-1], point) <= 0:
                    continue
                if len(chain) >= 3 and cross(chain[-1], point, start) <= 0:
                    continue
            extend(chain + [point])

    extend([start])


def min_interior_vgon(v, bound):
    """
    Least interior point count over convex lattice v-gons with vertices in
    [0, bound]^2, with one minimising polygon. Work is split by the lowest
    vertex, which must lie on the bottom row up to translation.
    """
    if not 3 <= v <= 8 or not 0 <= bound <= 8:
        raise InvalidParameters('v-gon search needs 3 <= v <= 8 and bound <= 8', v=v, bound=bound)
    best = [(bound + 1) ** 2 + 1, None]
    for i in range(bound + 1):
        _search_vgons(v, bound, LatticePoint(i, 0), best)
    if best[1] is None:
        raise InvalidParameters('no convex %s-gon fits in the box' % v, v=v, bound=bound)
    return best[0], best[1]
