"""
Tate's algorithm over the finite residue fields of F_s(w).

Every place is moved to w = 0 (tate.residue), so the uniformizer is w and
residues are the lowest coefficients of w-adic expansions. Multiplicative
places are recognised without leaving F_s[w]: v(c4) = 0 < v(Delta) means I_n
with n = v(Delta) in every characteristic.
"""
import logging
import re
from dataclasses import dataclass

from core.budget import UNLIMITED
from core.exceptions import DegenerateFibrationError
from core.galois import gf_factor, gf_sqf_list
from core.polys import Place
from tate.residue import LocalCurve, localize

logger = logging.getLogger(__name__)

ADDITIVE_COMPONENTS = {'II': 1, 'III': 2, 'IV': 3, 'IV*': 7, 'III*': 8, 'II*': 9}

TYPE_PATTERN = re.compile(r'^(?:I_?(?P<n>\d+)(?P<star>\*?)|(?P<name>IV\*?|III\*?|II\*?))$')


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol: I_n (``star`` False), I_n* (``star`` True) or an additive
    name such as 'IV*'."""

    name: str = 'I'
    n: int = 0
    star: bool = False

    def __str__(self):
        if self.name == 'I':
            return f'I_{self.n}{"*" if self.star else ""}'
        return self.name

    @classmethod
    def parse(cls, text):
        match = TYPE_PATTERN.match(text.strip().replace(' ', ''))
        if match is None:
            raise ValueError(f'unknown Kodaira symbol {text!r}')
        if match.group('name'):
            return cls(match.group('name'))
        return cls('I', int(match.group('n')), bool(match.group('star')))

    @property
    def is_good(self):
        return self.name == 'I' and self.n == 0 and not self.star

    @property
    def is_multiplicative(self):
        return self.name == 'I' and self.n > 0 and not self.star

    @property
    def components(self):
        """Number of geometric components of the fibre."""
        if self.name != 'I':
            return ADDITIVE_COMPONENTS[self.name]
        if self.star:
            return self.n + 5
        return max(self.n, 1)


GOOD = KodairaType()


@dataclass(frozen=True)
class KodairaFiber:
    place: Place
    kodaira: KodairaType
    ord_delta: int

    @property
    def degree(self):
        return self.place.degree

    @property
    def components(self):
        return self.kodaira.components

    def to_dict(self):
        return {
            'place': str(self.place),
            'degree': self.degree,
            'type': str(self.kodaira),
            'ordDelta': self.ord_delta,
            'mv': self.components,
        }


# local step helpers at w = 0

def _root_of_double(quadratic, L):
    """The double root of a X^2 + b X + c over L, or None when the roots are distinct."""
    a, b, c = quadratic
    if L.p == 2:
        if b:
            return None
        return L.sqrt(L.div(c, a))
    disc = L.sub(L.mul(b, b), L.scale(4, L.mul(a, c)))
    if disc:
        return None
    return L.neg(L.div(b, L.scale(2, a)))


def _repeated_root(cubic, L):
    """(multiplicity, root) of the most repeated root of a cubic over L."""
    _, factors = gf_sqf_list(cubic, L)
    best = max(factors, key=lambda item: item[1], default=(None, 1))
    g, e = best
    if e == 1:
        return 1, None
    return e, L.neg(g[-1])


def _singular_point(E):
    """(x0, y0) in L of the singular point of the reduction mod w."""
    L = E.field
    red = [a.residue() for a in E.ainvs]
    a1, a2, a3, a4, a6 = red
    if L.p == 2:
        if a1:
            x0 = L.div(a3, a1)
            y0 = L.div(L.add(L.mul(x0, x0), a4), a1)
        else:
            x0 = L.sqrt(a4)
            rhs = L.add(L.mul(L.add(L.mul(x0, x0), L.mul(a2, x0)), x0), L.add(L.mul(a4, x0), a6))
            y0 = L.sqrt(rhs)
        return x0, y0
    cubic = [L.from_int(4), E.b2.residue(), L.scale(2, E.b4.residue()), E.b6.residue()]
    _, x0 = _repeated_root(cubic, L)
    if x0 is None:
        raise DegenerateFibrationError('reduction has no singular point')
    y0 = L.neg(L.div(L.add(L.mul(a1, x0), a3), L.from_int(2)))
    return x0, y0


def _tate_at_zero(E, budget=UNLIMITED):
    """(KodairaType, minimal model) for an integral model at w = 0."""
    L = E.field
    w = E.base.gen

    def lift(c):
        return E.base.constant(c)

    while True:
        budget.check('Tate loop')
        n = E.discriminant.valuation()
        if n == 0:
            return GOOD, E
        x0, y0 = _singular_point(E)
        E = E.change_coordinates(r=lift(x0), t=lift(y0))
        if E.b2.residue():
            return KodairaType('I', n), E
        if E.a6.valuation() < 2:
            return KodairaType('II'), E
        if E.b8.valuation() < 3:
            return KodairaType('III'), E
        if E.b6.valuation() < 3:
            return KodairaType('IV'), E

        if L.p == 2:
            s = lift(L.sqrt(E.a2.residue()))
            t = w * lift(L.sqrt(E.a6.residue(2)))
        else:
            s = -E.a1 / 2
            t = -E.a3 / 2
        E = E.change_coordinates(s=s, t=t)

        cubic = [L.one, E.a2.residue(1), E.a4.residue(2), E.a6.residue(3)]
        multiplicity, root = _repeated_root(cubic, L)
        if multiplicity == 1:
            return KodairaType('I', 0, True), E
        E = E.change_coordinates(r=w * lift(root))

        if multiplicity == 2:
            m = 1
            while True:
                budget.check('Tate loop')
                if m % 2:
                    k = (m + 3) // 2
                    quadratic = [L.one, E.a3.residue(k), L.neg(E.a6.residue(m + 3))]
                    y = _root_of_double(quadratic, L)
                    if y is None:
                        return KodairaType('I', m, True), E
                    E = E.change_coordinates(t=lift(y) * w ** k)
                else:
                    k = m // 2 + 1
                    quadratic = [E.a2.residue(1), E.a4.residue(k + 1), E.a6.residue(m + 3)]
                    x = _root_of_double(quadratic, L)
                    if x is None:
                        return KodairaType('I', m, True), E
                    E = E.change_coordinates(r=lift(x) * w ** k)
                m += 1

        y = _root_of_double([L.one, E.a3.residue(2), L.neg(E.a6.residue(4))], L)
        if y is None:
            return KodairaType('IV*'), E
        E = E.change_coordinates(t=lift(y) * w ** 2)
        if E.a4.valuation() < 4:
            return KodairaType('III*'), E
        if E.a6.valuation() < 6:
            return KodairaType('II*'), E
        logger.debug('non-minimal model at w = 0, scaling by w')
        E = E.change_coordinates(u=w)


def minimal_model_at(E, place, budget=UNLIMITED):
    """LocalCurve at ``place`` whose model is minimal at w = 0."""
    if E.is_singular():
        raise DegenerateFibrationError('vanishing discriminant')
    local = localize(E, place)
    _, curve = _tate_at_zero(local.curve, budget)
    return LocalCurve(curve, place)


def tate_local(E, place, budget=UNLIMITED):
    """KodairaFiber of E at ``place``."""
    if E.is_singular():
        raise DegenerateFibrationError('vanishing discriminant')
    if not place.is_infinite:
        integral = E.integral_model()
        pi = list(place.poly)
        n = integral.discriminant.valuation(pi)
        if n > 0 and integral.c4.valuation(pi) == 0:
            return KodairaFiber(place, KodairaType('I', n), n)
    local = localize(E, place)
    kodaira, curve = _tate_at_zero(local.curve, budget)
    fiber = KodairaFiber(place, kodaira, curve.discriminant.valuation())
    logger.debug('%s at %s: ord Delta %d', kodaira, place, fiber.ord_delta)
    return fiber


def candidate_places(E):
    """Places dividing the discriminant of the integral model, then infinity."""
    if E.is_singular():
        raise DegenerateFibrationError('vanishing discriminant')
    K = E.field
    _, factors = gf_factor(E.integral_model().discriminant.num, K)
    places = sorted((Place.finite(K, g) for g, _ in factors), key=Place.sort_key)
    return places + [Place.infinity(K)]


def local_fibers(E, budget=UNLIMITED):
    """KodairaFiber at every place of bad reduction, in census order."""
    fibers = []
    for place in candidate_places(E):
        budget.check(f'place {place}')
        fiber = tate_local(E, place, budget)
        if fiber.ord_delta > 0:
            fibers.append(fiber)
    return fibers


def bad_places(E, budget=UNLIMITED):
    """(Place, ord Delta_min) for every place of bad reduction."""
    return [(f.place, f.ord_delta) for f in local_fibers(E, budget)]
