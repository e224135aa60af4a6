"""
Moving a place of F_s(w) to w = 0.

A finite place of degree d is moved by w -> w + theta with theta a root of
its monic generator in F_{s^d}; infinity by w -> 1/w. The translated model
is then rescaled until it is integral at w = 0.
"""
import logging
import math
from dataclasses import dataclass

from core.exceptions import BudgetExceeded, FieldError
from core.fields import embed, make_field
from core.galois import gf_roots
from fibration.function_field import FunctionField
from fibration.weierstrass import WeierstrassCurve

logger = logging.getLogger(__name__)

WEIGHTS = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class LocalCurve:
    """A Weierstrass model over L(w), L the residue field, the place at w = 0."""

    curve: WeierstrassCurve
    place: object

    @property
    def residue_field(self):
        return self.curve.field

    @property
    def degree(self):
        return self.place.degree


def residue_field(place, field):
    """F_{s^d} for a place of degree d over F_s."""
    if place.is_infinite or place.degree == 1:
        return field
    try:
        return make_field(field.p, field.k * place.degree)
    except FieldError as exc:
        raise BudgetExceeded(f'residue field of {place} is too large: {exc}') from exc


def integral_at_zero(curve):
    """Rescale a_i -> a_i w^(ik) with the least k making the model integral at 0."""
    k = 0
    for a, i in zip(curve.ainvs, WEIGHTS):
        if a:
            k = max(k, math.ceil(-a.valuation() / i))
    if k == 0:
        return curve
    return curve.change_coordinates(u=curve.base.gen ** -k)


def localize(curve, place):
    """LocalCurve of ``curve`` at ``place``."""
    K = curve.field
    if place.is_infinite:
        local = curve.map(lambda a: a.reciprocal(), curve.base)
    else:
        L = residue_field(place, K)
        target = FunctionField(L, curve.base.var)
        generator = [embed(c, K, L) for c in place.poly]
        theta = gf_roots(generator, L)[0]
        local = curve.map(lambda a: a.shift(theta, target), target)
    logger.debug('localized at %s over %r', place, local.field)
    return LocalCurve(integral_at_zero(local), place)
