"""
Genus one models of the fibres of a degree four Gamma_0 surface over the
w-line.

The trihomogeneous equation is read in the chart u1 = v1 = w1 = 1 as a
quadratic in v whose coefficients are quadratics in u over F_s(w). Writing
z = A v turns it into the double cover z^2 + h(u) z = g(u) with h = B and
g = -AC, which works in every characteristic.
"""
import itertools
import logging
from dataclasses import dataclass

from core.budget import UNLIMITED
from core.conf import shtuka_setting
from core.exceptions import DegenerateFibrationError, ShapeError
from core.galois import gf_add, gf_degree, gf_gcd, gf_mul, gf_sqr, gf_sqrt
from fibration.function_field import FunctionField

logger = logging.getLogger(__name__)

CHART = {'u1': 1, 'v1': 1, 'w1': 1}
CHART_LABEL = 'u1=v1=w1=1'


# little-endian polynomials in u with coefficients in F_s(w)

def poly_add(f, g, zero):
    n = max(len(f), len(g))
    f = list(f) + [zero] * (n - len(f))
    g = list(g) + [zero] * (n - len(g))
    return [a + b for a, b in zip(f, g)]


def poly_mul(f, g, zero):
    if not f or not g:
        return []
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def poly_eval(f, x, zero):
    acc = zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_diff(f, zero):
    return [c * i for i, c in enumerate(f)][1:] or [zero]


def pad(f, n, zero):
    f = list(f)
    if len(f) > n:
        if any(f[n:]):
            raise ShapeError(f'expected degree < {n}, got {len(f) - 1}')
        return f[:n]
    return f + [zero] * (n - len(f))


@dataclass(frozen=True)
class BiquadraticFiber:
    """F = A v^2 + B v + C with A, B, C quadratics in u over F_s(w).

    ``grid[i][j]`` is the coefficient of u^i v^j; ``swapped`` records that u
    and v have been exchanged.
    """

    grid: tuple
    base: FunctionField
    swapped: bool = False
    chart: str = CHART_LABEL

    def _column(self, j):
        return [self.grid[i][j] for i in range(3)]

    @property
    def A(self):
        return self._column(2)

    @property
    def B(self):
        return self._column(1)

    @property
    def C(self):
        return self._column(0)

    def swap(self):
        grid = tuple(tuple(self.grid[i][j] for i in range(3)) for j in range(3))
        return BiquadraticFiber(grid, self.base, not self.swapped, self.chart)

    def evaluate(self, u, v):
        zero = self.base.zero
        return sum(
            (self.grid[i][j] * u ** i * v ** j for i in range(3) for j in range(3)), zero
        )


@dataclass(frozen=True)
class QuarticModel:
    """z^2 + h(u) z = g(u) over F_s(w); h, g little-endian of lengths 3 and 5."""

    h: tuple
    g: tuple
    base: FunctionField
    swapped: bool = False

    @property
    def field(self):
        return self.base.field

    @property
    def characteristic(self):
        return self.base.field.p

    def discriminant_quartic(self):
        """h^2 + 4g, the right side after completing the square (char != 2)."""
        zero = self.base.zero
        return pad(poly_add(poly_mul(self.h, self.h, zero), [4 * c for c in self.g], zero), 5, zero)

    def at(self, u):
        zero = self.base.zero
        return poly_eval(self.h, u, zero), poly_eval(self.g, u, zero)

    def contains(self, point):
        if point.u is None:
            z = point.z
            return z * z + self.h[2] * z == self.g[4]
        hu, gu = self.at(point.u)
        return point.z * point.z + hu * point.z == gu


@dataclass(frozen=True)
class QuarticPoint:
    """A point of a QuarticModel; ``u is None`` is a point over u = infinity,
    where ``z`` is the leading coefficient of z / u^2."""

    u: object
    z: object

    @property
    def at_infinity(self):
        return self.u is None

    def to_dict(self):
        return {'u': 'inf' if self.u is None else str(self.u), 'z': str(self.z)}


def _fiber_coefficient(poly, base):
    return base.from_poly(poly, 'w0')


def fiber_quadratic_in_v(form):
    """The affine fibre equation of a specialized TriForm as a quadratic in v."""
    if form.is_symbolic:
        raise ShapeError('the generic fibre needs specialized P and Q')
    if form.multidegree is None or form.multidegree[:2] != (2, 2):
        raise ShapeError(f'multidegree {form.multidegree} is not (2, 2, *)')
    base = FunctionField(form.field)
    affine = form.poly.specialize(CHART, form.field)
    grid = [[base.zero] * 3 for _ in range(3)]
    for j, vcoeff in affine.collect('v0').items():
        for i, ucoeff in vcoeff.collect('u0').items():
            grid[i][j] = _fiber_coefficient(ucoeff, base)
    fiber = BiquadraticFiber(tuple(tuple(row) for row in grid), base)
    if not any(fiber.A) and not any(fiber.B):
        raise DegenerateFibrationError('the surface equation does not involve v')
    logger.debug('fibre of %s: A=%s', form.shape, [str(c) for c in fiber.A])
    return fiber


def eliminate_v(fiber):
    """z^2 + B z = -A C with z = A v; u and v are swapped first when A = 0."""
    if not any(fiber.A):
        fiber = fiber.swap()
        if not any(fiber.A):
            raise DegenerateFibrationError('the fibres are not curves of bidegree (2, 2)')
        logger.info('v^2 coefficient vanishes, eliminating u instead')
    zero = fiber.base.zero
    g = [-c for c in poly_mul(fiber.A, fiber.C, zero)]
    return QuarticModel(tuple(pad(fiber.B, 3, zero)), tuple(pad(g, 5, zero)), fiber.base, fiber.swapped)


def artin_schreier_root(c):
    """t in F_s(w) with t^2 + t = c, s a power of two, or None.

    With c = n/d in lowest terms a solution a/b forces d = b^2 and
    a^2 + ab = n, which is F_2-linear in the coefficients of a.
    """
    base, K = c.parent, c.field
    if not c:
        return base.zero
    b = gf_sqrt(c.den, K)
    if b is None:
        return None
    n = c.num
    bound = max(gf_degree(n) // 2, gf_degree(b))
    k = K.k
    mask = (1 << k) - 1

    def encode(f):
        value = 0
        for i, coeff in enumerate(reversed(f)):
            value |= coeff << (i * k)
        return value

    pivots = {}
    for i in range(bound + 1):
        for j in range(k):
            a = [1 << j] + [0] * i
            image = encode(gf_add(gf_sqr(a, K), gf_mul(a, b, K), K))
            combo = 1 << (i * k + j)
            while image:
                top = image.bit_length() - 1
                if top not in pivots:
                    pivots[top] = (image, combo)
                    break
                image ^= pivots[top][0]
                combo ^= pivots[top][1]

    target, combo = encode(n), 0
    while target:
        top = target.bit_length() - 1
        if top not in pivots:
            return None
        target ^= pivots[top][0]
        combo ^= pivots[top][1]
    a = [(combo >> (i * k)) & mask for i in range(bound, -1, -1)]
    return base(a, b)


def solve_fiber(hu, gu):
    """z in F_s(w) with z^2 + hu z = gu, or None."""
    base = hu.parent
    if base.field.p == 2:
        if not hu:
            return gu.sqrt()
        t = artin_schreier_root(gu / (hu * hu))
        return None if t is None else hu * t
    root = (hu * hu + 4 * gu).sqrt()
    if root is None:
        return None
    return (root - hu) / 2


def is_smooth_point(qm, point):
    """Nonvanishing gradient of z^2 + h z - g at the point."""
    zero = qm.base.zero
    z = point.z
    if point.u is None:
        # coordinates (t, z') with u = 1/t, z = z' / t^2
        h, g = qm.h, qm.g
        return bool(2 * z + h[2]) or bool(z * h[1] - g[3])
    hu, _ = qm.at(point.u)
    dh = poly_eval(poly_diff(qm.h, zero), point.u, zero)
    dg = poly_eval(poly_diff(qm.g, zero), point.u, zero)
    return bool(2 * z + hu) or bool(z * dh - dg)


def _polynomials(K, degree):
    """Polynomials of exact degree ``degree`` over K, big-endian, in code order."""
    for lead in K.nonzero():
        for rest in itertools.product(range(K.q), repeat=degree):
            yield [lead, *rest]


def _monic_polynomials(K, degree):
    for rest in itertools.product(range(K.q), repeat=degree):
        yield [K.one, *rest]


def candidate_abscissae(base, deg_bound):
    """u-values in search order: constants, polynomials by degree, infinity,
    then reduced ratios with a monic denominator."""
    K = base.field
    for c in range(K.q):
        yield base.constant(c)
    for degree in range(1, deg_bound + 1):
        for f in _polynomials(K, degree):
            yield base(f)
    yield None
    for dd in range(1, deg_bound + 1):
        for den in _monic_polynomials(K, dd):
            for dn in range(0, deg_bound + 1):
                numerators = [[c] for c in K.nonzero()] if dn == 0 else _polynomials(K, dn)
                for num in numerators:
                    if len(gf_gcd(num, den, K)) == 1:
                        yield base(num, den)


def find_rational_point(qm, deg_bound=None, budget=UNLIMITED):
    """First smooth F_s(w)-point of the quartic model in search order, or None."""
    deg_bound = shtuka_setting('DEG_BOUND') if deg_bound is None else deg_bound
    if deg_bound < 0:
        raise ValueError('deg_bound must be non-negative')
    for count, u in enumerate(candidate_abscissae(qm.base, deg_bound)):
        if count % 256 == 0:
            budget.check('section search')
        if u is None:
            hu, gu = qm.h[2], qm.g[4]
        else:
            hu, gu = qm.at(u)
        z = solve_fiber(hu, gu)
        if z is None:
            continue
        point = QuarticPoint(u, z)
        if is_smooth_point(qm, point):
            logger.debug('section at u=%s after %d candidates', u, count + 1)
            return point
    logger.info('no section with deg_bound=%d', deg_bound)
    return None
