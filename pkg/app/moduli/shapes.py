"""
Level divisors supported on degree one points of the projective line.
"""
import enum
import itertools
from dataclasses import dataclass

from core.exceptions import ShapeError, SupportCollisionError
from core.fields import embed, make_field, prime_power, primitive_element


class LevelKind(enum.Enum):
    FULL = 'full'
    GAMMA1 = 'gamma1'
    GAMMA0 = 'gamma0'


INFINITY = 'inf'


@dataclass(frozen=True)
class DivisorShape:
    """A level divisor after the normalising change of variables.

    ``support`` lists (point, multiplicity) with points among
    '0', '1', '-1', 'R' and 'inf'; ``case`` is the case number of the
    construction for degree three and four Gamma_0 levels.
    """

    name: str
    kind: LevelKind
    support: tuple
    case: int = None

    @property
    def degree(self):
        return sum(m for _, m in self.support)

    @property
    def points(self):
        return tuple(point for point, _ in self.support)

    @property
    def needs_R(self):
        return 'R' in self.points

    @property
    def is_surface_of_fibration(self):
        return self.kind is LevelKind.GAMMA0 and self.degree == 4

    def w_degree(self, q):
        """Degree in (w0:w1) of the degree four surface equation."""
        if not self.is_surface_of_fibration:
            raise ShapeError(f'{self.name} has no w coordinate')
        return q + 1 if self.case in (1, 4) else q

    def __str__(self):
        return self.name


SHAPES = {
    shape.name: shape for shape in (
        DivisorShape('(0)', LevelKind.FULL, (('0', 1),)),
        DivisorShape('(0)+inf', LevelKind.GAMMA1, (('0', 1), (INFINITY, 1))),
        DivisorShape('2(0)', LevelKind.GAMMA1, (('0', 2),)),
        DivisorShape('deg3-1', LevelKind.GAMMA0, (('0', 1), ('1', 1), (INFINITY, 1)), 1),
        DivisorShape('deg3-2', LevelKind.GAMMA0, (('0', 2), (INFINITY, 1)), 2),
        DivisorShape('deg3-3', LevelKind.GAMMA0, (('0', 3),), 3),
        DivisorShape('sqfree', LevelKind.GAMMA0, (('0', 1), ('1', 1), ('R', 1), (INFINITY, 1)), 1),
        DivisorShape('2(0)+(1)+inf', LevelKind.GAMMA0, (('0', 2), ('1', 1), (INFINITY, 1)), 2),
        DivisorShape('2(0)+2inf', LevelKind.GAMMA0, (('0', 2), (INFINITY, 2)), 3),
        DivisorShape('3(0)+inf', LevelKind.GAMMA0, (('0', 3), (INFINITY, 1)), 4),
        DivisorShape('4(0)', LevelKind.GAMMA0, (('0', 4),), 5),
    )
}

ALIASES = {
    '(0)+(inf)': '(0)+inf',
    '(0)+(1)+inf': 'deg3-1',
    '(0)+(1)+(inf)': 'deg3-1',
    '2(0)+inf': 'deg3-2',
    '2(0)+(inf)': 'deg3-2',
    '3(0)': 'deg3-3',
    '(0)+(1)+(R)+(inf)': 'sqfree',
    '(0)+(1)+(R)+inf': 'sqfree',
    '2(0)+(1)+(inf)': '2(0)+(1)+inf',
    '2(0)+2(inf)': '2(0)+2inf',
    '3(0)+(inf)': '3(0)+inf',
}

DEGREE_FOUR = tuple(name for name, shape in SHAPES.items() if shape.is_surface_of_fibration)


def parse_shape(name):
    """Return the DivisorShape called ``name`` (spaces and the infinity sign are tolerated)."""
    key = name.replace(' ', '').replace('∞', 'inf')
    key = ALIASES.get(key, key)
    try:
        return SHAPES[key]
    except KeyError:
        raise ShapeError(
            f'unsupported shape {name!r}; expected one of {", ".join(SHAPES)}'
        ) from None


def default_R(q, field):
    """The fourth support point of the squarefree level, as a code of ``field``.

    -1 for odd q and the primitive element of F_q for even q > 2.
    """
    p, a = prime_power(q)
    if p != 2:
        return field.from_int(-1)
    if q == 2:
        raise ShapeError('the squarefree level needs four rational points; q = 2 has three')
    Fq = make_field(p, a)
    return embed(primitive_element(Fq), Fq, field)


def support_values(shape, field, R=None):
    """Finite support points of ``shape`` as codes of ``field``."""
    values = set()
    for point in shape.points:
        if point == INFINITY:
            continue
        if point == 'R':
            if R is None:
                raise ShapeError(f'{shape.name} needs the support point R')
            values.add(R)
        else:
            values.add(field.from_int(int(point)))
    return values


def check_R(R, field):
    if R is None:
        raise ShapeError('the squarefree level needs the support point R')
    if R in (0, 1) or not 0 <= R < field.q:
        raise ShapeError(f'R = {field.format(R)} must avoid 0, 1 and infinity')


def check_support(shape, P, Q, field, R=None):
    """Raise SupportCollisionError unless P, Q are distinct and off the support."""
    if P == Q:
        raise SupportCollisionError('pole and zero coincide')
    support = support_values(shape, field, R)
    for label, value in (('P', P), ('Q', Q)):
        if value in support:
            raise SupportCollisionError(
                f'{label} = {field.format(value)} lies in the support of {shape.name}'
            )


def admissible_pairs(shape, field, R=None):
    """Ordered pairs (P, Q) of codes of ``field`` off the support, in code order."""
    support = support_values(shape, field, R)
    allowed = [x for x in field.elements() if x not in support]
    return [(P, Q) for P, Q in itertools.permutations(allowed, 2)]
