"""
Singularities of surfaces in products of projective spaces.

Points are tuples of coordinates block by block. A point is singular when
the equation and its partial derivatives with respect to the free
coordinates of every block vanish; the chart coordinate of a block is its
last nonzero coordinate.
"""
import enum
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field

from core.budget import UNLIMITED
from core.conf import shtuka_setting
from core.exceptions import BudgetExceeded, PolynomialError
from core.fields import make_field
from core.galois import gf_gcd, gf_roots
from core.polys import PolyRing, SparsePoly, determinant
from moduli.builder import BLOCKS, TriForm
from moduli.shapes import parse_shape

logger = logging.getLogger(__name__)


def genus_upper_bound(d1, d2, d3):
    """Arithmetic genus of a (d1, d2, d3) hypersurface of P^1 x P^1 x P^1.

    Exact when the surface has at most rational double points.
    """
    if min(d1, d2, d3) < 2:
        raise ValueError(f'multidegree ({d1}, {d2}, {d3}) needs every degree >= 2')
    return (d1 - 1) * (d2 - 1) * (d3 - 1) + 1


class A1Status(enum.Enum):
    CERTIFIED = 'certified'
    DEGENERATE = 'degenerate'
    NOT_TESTED = 'not tested'


@dataclass(frozen=True)
class SingularPointReport:
    point: tuple
    is_on_surface: bool
    is_singular: bool
    a1: A1Status = A1Status.NOT_TESTED


def _chart(values):
    """Index of the last nonzero coordinate of a block."""
    for i in range(len(values) - 1, -1, -1):
        if values[i]:
            return i
    raise ValueError('a block of the point has every coordinate zero')


def normalize_point(point, field, blocks=BLOCKS):
    """Scale each block of a point of codes so its chart coordinate is 1."""
    out = []
    offset = 0
    for block in blocks:
        values = point[offset:offset + len(block)]
        inv = field.inv(values[_chart(values)])
        out.extend(field.mul(x, inv) for x in values)
        offset += len(block)
    return tuple(out)


def _target_ring(poly, blocks, field):
    names = {name for block in blocks for name in block}
    params = tuple(g for g in poly.ring.gens if g not in names)
    return PolyRing(params, field or poly.field)


def verify_singular_points(form, candidates, field=None, blocks=BLOCKS):
    """Evaluate the equation, its partials and the local Hessian at each candidate.

    ``form`` is a TriForm or a SparsePoly; candidate entries are codes of
    ``field`` (default: the coefficient field) or polynomials in the
    parameters P, Q, R left free in the equation.
    """
    poly = form.poly if isinstance(form, TriForm) else form
    target = _target_ring(poly, blocks, field)
    names = [name for block in blocks for name in block]
    reports = []
    for candidate in candidates:
        if len(candidate) != len(names):
            raise ValueError(f'{candidate} does not have {len(names)} coordinates')
        point = tuple(target.convert(x) if isinstance(x, SparsePoly) else target.constant(x) for x in candidate)
        mapping = dict(zip(names, point))
        free = []
        offset = 0
        for block in blocks:
            values = point[offset:offset + len(block)]
            chart = _chart(values)
            free.extend(name for i, name in enumerate(block) if i != chart)
            offset += len(block)
        on_surface = not poly.substitute(mapping, target)
        singular = on_surface and all(
            not poly.diff(name).substitute(mapping, target) for name in free
        )
        a1 = A1Status.NOT_TESTED
        if singular and target.field.p != 2:
            hessian = [
                [poly.diff(x).diff(y).substitute(mapping, target) for y in free]
                for x in free
            ]
            a1 = A1Status.CERTIFIED if determinant(hessian) else A1Status.DEGENERATE
        reports.append(SingularPointReport(tuple(candidate), on_surface, singular, a1))
    return reports


@dataclass
class SingularSearchResult:
    """Singular points found over F_{s^j}, j <= max_ext, up to Frobenius."""

    field: object
    max_ext: int
    points: list = dataclass_field(default_factory=list)
    counts: dict = dataclass_field(default_factory=dict)
    non_isolated: bool = False

    def degrees(self):
        return [degree for _, degree, _ in self.points]

    def geometric_count(self):
        return sum(self.degrees())

    @property
    def is_empty(self):
        return not self.points and not self.non_isolated


def _families(block):
    """Chart families of a projective block: (fixed values, free names, zero names).

    The coordinates after the chart are fixed to 0 but their partials must
    still vanish at a singular point.
    """
    for chart in range(len(block) - 1, -1, -1):
        fixed = {block[chart]: 1}
        fixed.update({name: 0 for name in block[chart + 1:]})
        yield fixed, block[:chart], block[chart + 1:]


def _bind_first(terms, value, K):
    out = {}
    for e, c in terms.items():
        if e[0]:
            if not value:
                continue
            c = K.mul(c, K.pow(value, e[0]))
        rest = e[1:]
        out[rest] = K.add(out.get(rest, 0), c)
    return {e: c for e, c in out.items() if c}


def _dense(terms):
    n = max(e[0] for e in terms)
    f = [0] * (n + 1)
    for e, c in terms.items():
        f[n - e[0]] = c
    return f


class _LineFound(Exception):
    pass


def _solve(polys, nfree, L, prefix, out, budget):
    polys = [t for t in polys if t]
    if not polys:
        if nfree:
            raise _LineFound(prefix)
        out.append(prefix)
        return
    if nfree == 0:
        return
    if nfree == 1:
        g = []
        for terms in polys:
            g = gf_gcd(g, _dense(terms), L)
            if len(g) == 1:
                return
        out.extend(prefix + (r,) for r in gf_roots(g, L))
        return
    budget.check('singular search')
    for x in L.elements():
        _solve([_bind_first(t, x, L) for t in polys], nfree - 1, L, prefix + (x,), out, budget)


def _points_over(poly, blocks, L, budget):
    """All singular points of poly over L, normalized chart by chart."""
    ring = poly.ring
    found = set()
    for families in itertools.product(*(_families(block) for block in blocks)):
        fixed = {}
        free = []
        zeros = []
        for values, names, zero_names in families:
            fixed.update(values)
            free.extend(names)
            zeros.extend(zero_names)
        target = PolyRing(free, L)
        polys = [poly] + [poly.diff(name) for name in free + zeros]
        terms = [f.substitute(fixed, target).terms for f in polys]
        out = []
        _solve(terms, len(free), L, (), out, budget)
        for values in out:
            assignment = dict(fixed)
            assignment.update(zip(free, values))
            found.add(tuple(assignment[name] for name in ring.gens))
    return found


def _orbit(point, L, s, j):
    orbit = [point]
    current = point
    for _ in range(j - 1):
        current = tuple(L.pow(x, s) for x in current)
        if current == point:
            break
        orbit.append(current)
    return orbit


def affordable_extension(field, max_ext=None):
    """Largest j <= max_ext with (|F_{s^j}| + 1)^3 inside the singular budget."""
    max_ext = max_ext or shtuka_setting('SING_EXT')
    limit = shtuka_setting('SINGULAR_BUDGET')
    j = 0
    while j < max_ext and (field.q ** (j + 1) + 1) ** 3 <= limit:
        j += 1
    return j


def search_singular_points(form, max_ext=None, budget=UNLIMITED, blocks=BLOCKS):
    """Exhaustive singular point search over F_{s^j}, j = 1..max_ext.

    Each point is reported once per Frobenius orbit, as the smallest member
    of its orbit together with its residue degree j.
    """
    poly = form.poly if isinstance(form, TriForm) else form
    names = [name for block in blocks for name in block]
    if tuple(names) != poly.ring.gens:
        raise PolynomialError(f'{poly.ring!r} is not the ring of the blocks {blocks}')
    F = poly.field
    max_ext = max_ext or shtuka_setting('SING_EXT')
    limit = shtuka_setting('SINGULAR_BUDGET')
    if (F.q ** max_ext + 1) ** 3 > limit:
        raise BudgetExceeded(
            f'singular search over F_{F.q}^{max_ext} exceeds the budget {limit}'
        )
    result = SingularSearchResult(F, max_ext)
    s = F.q
    for j in range(1, max_ext + 1):
        L = make_field(F.p, F.k * j)
        lifted = poly.substitute({}, PolyRing(poly.ring.gens, L))
        try:
            found = _points_over(lifted, blocks, L, budget)
        except _LineFound as exc:
            logger.warning('singular locus contains a line over %r at %s', L, exc.args[0])
            result.non_isolated = True
            break
        result.counts[j] = len(found)
        for point in sorted(found):
            orbit = _orbit(point, L, s, j)
            if len(orbit) == j and point == min(orbit):
                result.points.append((point, j, L))
        logger.debug('%d singular points over %r', len(found), L)
    if not result.non_isolated and max_ext >= 2 and max_ext in result.counts:
        last, previous = result.counts[max_ext], result.counts[max_ext - 1]
        if last > previous and last > s ** (max_ext - 1):
            result.non_isolated = True
    return result


class Ambient(enum.Enum):
    P3 = 'P3'
    P1_CUBED = 'P1xP1xP1'


def homogenize(affine_eq, ambient):
    """Projective closure of an affine equation; returns (poly, blocks)."""
    ambient = Ambient(ambient)
    ring = affine_eq.ring
    K = ring.field
    if ambient is Ambient.P3:
        if ring.ngens != 3:
            raise PolynomialError('P^3 closure needs three affine variables')
        target = PolyRing(ring.gens + ('z',), K)
        degree = affine_eq.total_degree()
        terms = {e + (degree - sum(e),): c for e, c in affine_eq.terms.items()}
        return SparsePoly(target, terms), (target.gens,)
    degrees = [affine_eq.degree(name) for name in ring.gens]
    gens = []
    for name in ring.gens:
        gens.extend([name, name + '_h'])
    target = PolyRing(gens, K)
    terms = {}
    for e, c in affine_eq.terms.items():
        exps = []
        for n, d in zip(e, degrees):
            exps.extend([n, d - n])
        terms[tuple(exps)] = c
    blocks = tuple((name, name + '_h') for name in ring.gens)
    return SparsePoly(target, terms), blocks


def verify_smooth_projective_closure(affine_eq, ambient=Ambient.P3, max_ext=None, budget=UNLIMITED):
    """True when the closure has no singular point over F_{s^j}, j <= max_ext."""
    poly, blocks = homogenize(affine_eq, ambient)
    result = search_singular_points(poly, max_ext, budget, blocks)
    return result.is_empty


# Known singular points, as functions of the parameter polynomials.

def _two_zero_one_infinity(P, Q, R, one, zero):
    return [
        (zero, one, zero, one, zero, one),
        (P, one, P, one, one, one),
        (Q, one, Q, one, one, one),
        (P, one, Q, one, one, one),
        (zero, one, zero, one, one, zero),
        (P, one, Q, one, one, zero),
        (Q - P, Q - one, zero, one, zero, one),
        (zero, one, P - Q, P - one, zero, one),
    ]


def _squarefree_odd(P, Q, R, one, zero):
    return [
        (zero, one, zero, one, zero, one),
        (one, one, one, one, one, one),
        (one, zero, one, zero, one, zero),
        (P, one, Q, one, R, one),
        (zero, one, P - Q, P - one, zero, one),
        (Q - P, Q - one, zero, one, zero, one),
        (P - P * Q, P - Q, one, zero, one, zero),
        (one, zero, Q - Q * P, Q - P, one, zero),
    ]


def _squarefree_even(P, Q, R, one, zero):
    # in characteristic 2 the slices w = 1 and w = R carry two more points each
    return _squarefree_odd(P, Q, R, one, zero) + [
        (P, Q, one, one, one, one),
        (one, one, Q, P, one, one),
        (P, one, P, one, R, one),
        (Q, one, Q, one, R, one),
    ]


def known_singular_candidates(form):
    """Listed singular points of a TriForm, or [] for shapes without a list.

    Symbolic forms get polynomial entries in the parameters; specialized
    forms get codes of their field.
    """
    shape = parse_shape(str(form.shape))
    if shape.name == '2(0)+(1)+inf':
        builder = _two_zero_one_infinity
    elif shape.name == 'sqfree':
        builder = _squarefree_odd if form.q % 2 else _squarefree_even
    else:
        return []
    if form.is_symbolic:
        ring = _target_ring(form.poly, BLOCKS, None)
        R = ring.gen('R') if 'R' in ring.index else None
        return builder(ring.gen('P'), ring.gen('Q'), R, ring.one, ring.zero)
    ring = PolyRing((), form.field)
    P, Q = ring.constant(form.P), ring.constant(form.Q)
    R = ring.constant(form.R) if form.R is not None else None
    points = builder(P, Q, R, ring.one, ring.zero)
    return [tuple(x.constant_value() for x in point) for point in points]
