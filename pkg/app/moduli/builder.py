"""
Explicit equations of the moduli surfaces of rank two shtukas with level.

The coefficient matrix of a shtuka is written as

    M(T) = [[a0 + a1 T, b1 T], [c0 + c1 T, d0 + d1 T]]

(c1 only for the levels with three or more conditions at one point), with
det M(T) = n (T - P)(T - Q), n = a1 d1 - b1 c1. Rank one at T = P and T = Q
is encoded by kernel vectors u = (u0 : u1) and v = (v0 : v1); the linear
level conditions together with the four kernel equations form a system of
corank one, solved by signed maximal minors into (2, 2)-forms in (u, v).
"""
import enum
import functools
import logging
from dataclasses import dataclass

from core.exceptions import (
    DegenerateSpecializationError,
    EmbeddingError,
    PolynomialError,
    ShapeError,
)
from core.fields import common_field, make_field, prime_power
from core.polys import PolyRing, RationalFunction, SparsePoly, determinant, poly_gcd, specialize
from moduli.shapes import SHAPES, LevelKind, check_R, check_support, default_R, parse_shape

logger = logging.getLogger(__name__)

UV = ('u0', 'u1', 'v0', 'v1')
BLOCKS = (('u0', 'u1'), ('v0', 'v1'), ('w0', 'w1'))
PROJECTIVE = UV + ('w0', 'w1')

SIX = ('a0', 'a1', 'b1', 'c0', 'd0', 'd1')
SEVEN = ('a0', 'a1', 'b1', 'c0', 'c1', 'd0', 'd1')

# coefficient system for the 2(0) + 2(inf) level
TWO_INFINITY = '2inf'

SYSTEMS = {
    1: (SIX, ((1, 1, 1, -1, -1, -1),)),
    2: (SIX, ((1, 0, 1, 0, -1, 0),)),
    3: (SEVEN, ((1, 0, 1, 0, 0, -1, 0), (1, 1, 0, -1, 0, -1, -1))),
    TWO_INFINITY: (SEVEN, ((1, 0, 1, 0, 0, -1, 0), (0, 1, 1, 0, -1, 0, -1))),
}

# coefficient system used by each degree four case
DEG4_FORMS = {1: 1, 2: 1, 3: TWO_INFINITY, 4: 3, 5: 3}


def _coefficients(f, names):
    """Coefficients of f as a polynomial in ``names``, as elements of f.ring."""
    idx = {f.ring.index[n] for n in names}
    grouped = {}
    for e, c in f.terms.items():
        key = tuple(v for i, v in enumerate(e) if i in idx)
        rest = tuple(0 if i in idx else v for i, v in enumerate(e))
        grouped.setdefault(key, {})[rest] = c
    return [SparsePoly(f.ring, terms) for terms in grouped.values()]


def parameter_content(polys, names):
    """Monic gcd of all coefficients of ``polys`` seen as polynomials in ``names``."""
    ring = polys[0].ring
    content = ring.zero
    for f in polys:
        for c in _coefficients(f, names):
            content = poly_gcd(content, c)
            if content == ring.one:
                return content
    return content


def _kernel_rows(variables, x0, x1, T):
    """Rows of M(T) (x0, x1)^t = 0 in the coefficient variables."""
    zero = x0.ring.zero
    if len(variables) == 6:
        return [
            [x0, T * x0, T * x1, zero, zero, zero],
            [zero, zero, zero, x0, x1, T * x1],
        ]
    return [
        [x0, T * x0, T * x1, zero, zero, zero, zero],
        [zero, zero, zero, x0, T * x0, x1, T * x1],
    ]


@dataclass(frozen=True, eq=False)
class CoeffForms:
    """The coefficients a0, ..., d1 as (2, 2)-forms in (u, v)."""

    case: object
    ring: PolyRing
    values: dict
    P: SparsePoly
    Q: SparsePoly
    content: SparsePoly

    @property
    def variables(self):
        return tuple(self.values)

    def __getitem__(self, name):
        if name in self.values:
            return self.values[name]
        if name in SEVEN:
            return self.ring.zero
        raise KeyError(name)

    @property
    def n(self):
        return self['a1'] * self['d1'] - self['b1'] * self['c1']

    def det_coefficients(self):
        """Coefficients of det M(T) in T, constant term first."""
        a0, a1, b1, c0, c1, d0, d1 = (self[name] for name in SEVEN)
        return [a0 * d0, a0 * d1 + a1 * d0 - b1 * c0, a1 * d1 - b1 * c1]

    def determinant_conditions(self):
        a0, a1, b1, c0, d0, d1 = (self[name] for name in SIX)
        n = self.n
        return [
            a0 * d0 - self.P * self.Q * n,
            a0 * d1 + a1 * d0 - b1 * c0 + (self.P + self.Q) * n,
        ]

    def kernel_residuals(self):
        """M(P) u and M(Q) v."""
        u0, u1, v0, v1 = (self.ring.gen(name) for name in UV)
        a0, a1, b1, c0, c1, d0, d1 = (self[name] for name in SEVEN)
        residuals = []
        for x0, x1, T in ((u0, u1, self.P), (v0, v1, self.Q)):
            residuals.append((a0 + a1 * T) * x0 + b1 * T * x1)
            residuals.append((c0 + c1 * T) * x0 + (d0 + d1 * T) * x1)
        return residuals

    def condition_residuals(self):
        _, conditions = SYSTEMS[self.case]
        return [
            sum((self[name] * c for name, c in zip(self.variables, row) if c), self.ring.zero)
            for row in conditions
        ]

    def certify(self):
        """Raise PolynomialError unless the forms solve their system identically."""
        for label, residuals in (
            ('kernel', self.kernel_residuals()),
            ('level', self.condition_residuals()),
            ('determinant', self.determinant_conditions()),
        ):
            if any(residuals):
                raise PolynomialError(f'{label} equations fail for case {self.case}')

    def specialize(self, P, Q, field):
        bindings = {'P': P, 'Q': Q}
        values = {name: f.specialize(bindings, field) for name, f in self.values.items()}
        ring = PolyRing(UV, field)
        return CoeffForms(
            self.case, ring, values, ring.constant(P), ring.constant(Q),
            self.content.specialize(bindings, field),
        )


@functools.lru_cache(maxsize=None)
def _symbolic_forms(case, p):
    variables, conditions = SYSTEMS[case]
    ring = PolyRing(('P', 'Q') + UV, make_field(p))
    P, Q, u0, u1, v0, v1 = ring.gens_polys()
    rows = _kernel_rows(variables, u0, u1, P) + _kernel_rows(variables, v0, v1, Q)
    rows += [[ring.from_int(c) for c in row] for row in conditions]
    values = []
    for j in range(len(variables)):
        minor = determinant([row[:j] + row[j + 1:] for row in rows])
        values.append(minor if j % 2 == 0 else -minor)
    content = parameter_content(values, UV)
    if not content:
        raise PolynomialError(f'coefficient system {case} has no solution')
    if content != ring.one:
        values = [f.exquo(content) for f in values]
    forms = CoeffForms(case, ring, dict(zip(variables, values)), P, Q, content)
    forms.certify()
    logger.debug('solved coefficient system %s over F_%d', case, p)
    return forms


def _deg3_shape(case):
    try:
        return SHAPES[f'deg3-{case}']
    except KeyError:
        raise ShapeError(f'unsupported degree three case {case!r}') from None


def solve_coeffs_uv(case, field, P=None, Q=None):
    """CoeffForms of a degree three case (or TWO_INFINITY), symbolic in P, Q
    unless both are given as elements of ``field``."""
    if case not in SYSTEMS:
        raise ShapeError(f'unsupported coefficient system {case!r}')
    forms = _symbolic_forms(case, field.p)
    if P is None and Q is None:
        return forms
    shape = SHAPES['2(0)+2inf'] if case == TWO_INFINITY else _deg3_shape(case)
    check_support(shape, P, Q, field)
    return forms.specialize(P, Q, field)


def build_gamma0_deg3(case, field, P=None, Q=None):
    """Homogeneous equations of the degree three surface in P^5 (cases 1, 2)
    or P^6 (case 3); the linear level conditions come first."""
    shape = _deg3_shape(case)
    variables, conditions = SYSTEMS[case]
    ring = PolyRing(variables + ('P', 'Q'), make_field(field.p))
    x = {name: ring.gen(name) for name in variables}
    zero = ring.zero
    a0, a1, b1, c0, d0, d1 = (x[name] for name in SIX)
    c1 = x.get('c1', zero)
    Pg, Qg = ring.gen('P'), ring.gen('Q')
    n = a1 * d1 - b1 * c1
    equations = [
        sum((x[name] * c for name, c in zip(variables, row) if c), zero)
        for row in conditions
    ]
    equations += [
        a0 * d0 - Pg * Qg * n,
        a0 * d1 + a1 * d0 - b1 * c0 + (Pg + Qg) * n,
    ]
    if P is None and Q is None:
        return equations
    check_support(shape, P, Q, field)
    return [f.specialize({'P': P, 'Q': Q}, field) for f in equations]


def _check_pair(shape, field, P, Q):
    if (P is None) != (Q is None):
        raise ShapeError('P and Q must be given together')
    if P is not None:
        check_support(shape, P, Q, field)


def build_gamma_full_deg1(field, P=None, Q=None):
    """Full level at (0): d^2 + (P+Q)/(PQ) d + bc + 1/(PQ) in A^3_{b,c,d}."""
    _check_pair(SHAPES['(0)'], field, P, Q)
    ring = PolyRing(('b', 'c', 'd', 'P', 'Q'), make_field(field.p))
    b, c, d, Pg, Qg = ring.gens_polys()
    gamma = RationalFunction(
        Pg * Qg * d ** 2 + (Pg + Qg) * d + Pg * Qg * b * c + 1, Pg * Qg
    )
    if P is None:
        return gamma
    return specialize(gamma, {'P': P, 'Q': Q}, field)


def build_gamma1(shape, field, P=None, Q=None):
    """Gamma_1 level of degree two; affine in (b, c, d) resp. (c, d, n)."""
    shape = parse_shape(str(shape))
    _check_pair(shape, field, P, Q)
    base = make_field(field.p)
    if shape.name == '(0)+inf':
        ring = PolyRing(('b', 'c', 'd', 'P', 'Q'), base)
        b, c, d, Pg, Qg = ring.gens_polys()
        f = d ** 2 * Pg * Qg + d * (Pg + Qg) + 1 - b * c
    elif shape.name == '2(0)':
        ring = PolyRing(('c', 'd', 'n', 'P', 'Q'), base)
        c, d, n, Pg, Qg = ring.gens_polys()
        f = d ** 2 + d * n * (Pg + Qg) + n + c - c * n * Pg * Qg
    else:
        raise ShapeError(f'{shape.name} is not a degree two Gamma_1 level')
    if P is None:
        return f
    return f.specialize({'P': P, 'Q': Q}, field)


def _w_equation(case, forms, R, w0, w1, q):
    a0, a1, b1, c0, c1, d0, d1 = (forms[name] for name in SEVEN)
    if case == 1:
        return (
            c0 * w0 ** (q + 1) + (d0 + d1 * R) * w0 ** q * w1
            - (a0 + a1 * R) * w0 * w1 ** q - b1 * R * w1 ** (q + 1)
        )
    if case == 2:
        return d0 * w0 ** q - a0 * w0 * w1 ** (q - 1) - b1 * w1 ** q
    if case == 3:
        return (c1 + d1) * w0 ** q + (c1 - a1) * w0 * w1 ** (q - 1) + (c0 + d0 - a0) * w1 ** q
    if case == 4:
        return c1 * w0 ** (q + 1) + d1 * w0 ** q * w1 - a1 * w0 * w1 ** q - b1 * w1 ** (q + 1)
    return d0 * w0 ** q - a0 * w0 * w1 ** (q - 1) + (2 * c0 + c1 + d1 - a1) * w1 ** q


def _multidegree(poly):
    degrees = []
    for block in BLOCKS:
        found = poly.block_degrees(block)
        if len(found) != 1:
            return None
        degrees.append(found.pop())
    return tuple(degrees)


@dataclass(frozen=True, eq=False)
class TriForm:
    """Trihomogeneous equation of a degree four Gamma_0 surface in
    P^1_u x P^1_v x P^1_w.

    Symbolic forms live over F_p with the parameters P, Q (and R) as extra
    generators; ``content`` is the parameter factor cleared while building
    and must not vanish under specialization.
    """

    poly: SparsePoly
    shape: object
    q: int
    multidegree: tuple
    content: SparsePoly
    P: int = None
    Q: int = None
    R: int = None

    blocks = BLOCKS
    variables = PROJECTIVE

    @property
    def field(self):
        return self.poly.field

    @property
    def is_symbolic(self):
        return self.P is None

    @property
    def case(self):
        return self.shape.case

    @property
    def equations(self):
        return (self.poly,)

    @property
    def provenance(self):
        return {'case': self.case, 'cleared': str(self.content)}

    def partials(self):
        return {name: self.poly.diff(name) for name in PROJECTIVE}

    def specialize(self, P, Q, field, R=None):
        """The surface at the given pole, zero (and R) in ``field``."""
        if not self.is_symbolic:
            raise ShapeError('the form is already specialized')
        p, a = prime_power(self.q)
        if field.p != p or field.k % a:
            raise EmbeddingError(f'{field!r} does not contain F_{self.q}')
        bindings = {'P': P, 'Q': Q}
        if self.shape.needs_R:
            R = default_R(self.q, field) if R is None else R
            check_R(R, field)
            bindings['R'] = R
        else:
            R = None
        check_support(self.shape, P, Q, field, R)
        if not self.content.specialize(bindings, field):
            raise DegenerateSpecializationError(
                f'the cleared factor {self.content} vanishes at P={field.format(P)}, Q={field.format(Q)}'
            )
        poly = self.poly.specialize(bindings, field)
        if _multidegree(poly) != self.multidegree:
            raise DegenerateSpecializationError(
                f'specialization changes the multidegree {self.multidegree}'
            )
        if any(poly.monomial_content()):
            raise DegenerateSpecializationError('specialization acquires a coordinate component')
        logger.debug(
            'specialized %s q=%d at P=%s Q=%s', self.shape, self.q, field.format(P), field.format(Q)
        )
        return TriForm(poly.monic(), self.shape, self.q, self.multidegree, self.content, P, Q, R)


@functools.lru_cache(maxsize=None)
def _symbolic_deg4(name, q):
    shape = SHAPES[name]
    p, _ = prime_power(q)
    params = ('P', 'Q', 'R') if shape.needs_R else ('P', 'Q')
    ring = PolyRing(params + PROJECTIVE, make_field(p))
    forms = _symbolic_forms(DEG4_FORMS[shape.case], p)
    converted = CoeffForms(
        forms.case, ring, {k: ring.convert(f) for k, f in forms.values.items()},
        ring.gen('P'), ring.gen('Q'), ring.convert(forms.content),
    )
    R = ring.gen('R') if shape.needs_R else None
    poly = _w_equation(shape.case, converted, R, ring.gen('w0'), ring.gen('w1'), q)
    content = parameter_content([poly], PROJECTIVE)
    if not content:
        raise PolynomialError(f'{name} has a vanishing equation')
    poly = poly.exquo(content)
    monomial = poly.monomial_content()
    projective = {ring.index[g] for g in PROJECTIVE}
    poly = poly.divide_monomial(
        tuple(e if i in projective else 0 for i, e in enumerate(monomial))
    ).monic()
    multidegree = _multidegree(poly)
    if multidegree is None:
        raise PolynomialError(f'{name} equation is not trihomogeneous')
    logger.info('built %s for q=%d: multidegree %s', name, q, multidegree)
    return TriForm(poly, shape, q, multidegree, content)


def build_gamma0_deg4(shape, q, P=None, Q=None, R=None, field=None):
    """TriForm of a degree four Gamma_0 level; symbolic when P and Q are omitted."""
    shape = parse_shape(str(shape))
    if not shape.is_surface_of_fibration:
        raise ShapeError(f'{shape.name} is not a degree four Gamma_0 level')
    p, a = prime_power(q)
    if shape.needs_R and p == 2 and q == 2:
        raise ShapeError('the squarefree level needs four rational points; q = 2 has three')
    form = _symbolic_deg4(shape.name, q)
    if P is None and Q is None:
        return form
    if P is None or Q is None:
        raise ShapeError('P and Q must be given together')
    field = field or make_field(p, a)
    return form.specialize(P, Q, field, R)


def specialization_field(q, *fields):
    """F_s: the smallest field of the tower containing F_q and the given fields."""
    return common_field(make_field(*prime_power(q)), *fields)


@dataclass(frozen=True, eq=False)
class LevelEquations:
    """Equations of a level of degree at most three."""

    shape: object
    q: int
    equations: tuple
    P: int = None
    Q: int = None
    R = None
    multidegree = None

    @property
    def field(self):
        return self.equations[0].field

    @property
    def variables(self):
        ring = self.equations[0].ring
        return tuple(g for g in ring.gens if g not in ('P', 'Q'))

    @property
    def provenance(self):
        return {'case': self.shape.case, 'cleared': '1'}


def build_surface(shape, q, P, Q, R=None, field=None):
    """Equations for any supported level at a specialized pole and zero."""
    shape = parse_shape(str(shape))
    p, a = prime_power(q)
    field = field or make_field(p, a)
    if shape.is_surface_of_fibration:
        return build_gamma0_deg4(shape, q, P, Q, R, field)
    if shape.kind is LevelKind.FULL:
        equations = (build_gamma_full_deg1(field, P, Q),)
    elif shape.kind is LevelKind.GAMMA1:
        equations = (build_gamma1(shape, field, P, Q),)
    else:
        equations = tuple(build_gamma0_deg3(shape.case, field, P, Q))
    return LevelEquations(shape, q, equations, P, Q)


class LevelVectorMode(enum.Enum):
    DEG2_PLUS_POINT = 'deg2+point'
    DEG3 = 'deg3'


def normalize_level_vector(x, y, z, mode, field):
    """Matrix Z = [[1, b], [c, d]] moving a level vector to the standard one.

    DEG2_PLUS_POINT: Z(x + y pi) = pi mod pi^2 and Z z = inf.
    DEG3: Z(x + y pi + z pi^2) = pi + pi^2 mod pi^3.
    """
    K = field
    mode = LevelVectorMode(mode)
    if not y:
        raise ShapeError('the level vector has y = 0')
    b = K.neg(x)
    if mode is LevelVectorMode.DEG2_PLUS_POINT:
        gap = K.sub(x, z)
        if not gap:
            raise ShapeError('the level vector has x = z')
        c = K.div(y, gap)
        d = K.neg(K.mul(c, z))
    else:
        c = K.div(K.sub(z, y), y)
        d = K.sub(y, K.mul(c, x))
    matrix = ((1, b), (c, d))
    _check_level_matrix(matrix, x, y, z, mode, K)
    return matrix


def _check_level_matrix(matrix, x, y, z, mode, K):
    (a, b), (c, d) = matrix
    denominator = K.add(K.mul(c, x), d)
    checks = [K.add(K.mul(a, x), b) == 0, K.mul(a, y) == denominator]
    if mode is LevelVectorMode.DEG2_PLUS_POINT:
        checks.append(K.add(K.mul(c, z), d) == 0)
    else:
        checks.append(K.mul(a, z) == K.add(K.mul(c, y), denominator))
    if not all(checks):
        raise ArithmeticError('level vector normalisation failed')
