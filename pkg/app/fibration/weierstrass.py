"""
Long Weierstrass models over F_s(w) and the passage from the quartic model
of the fibres to a Weierstrass model of the generic fibre.
"""
import logging
from functools import cached_property

from core.budget import UNLIMITED
from core.exceptions import DegenerateFibrationError, NoPointFound
from fibration.curves import (
    eliminate_v,
    fiber_quadratic_in_v,
    find_rational_point,
    poly_add,
    poly_mul,
)
from fibration.function_field import polynomial_lcm

logger = logging.getLogger(__name__)

A_INVARIANTS = ('a1', 'a2', 'a3', 'a4', 'a6')


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a function field."""

    def __init__(self, base, a1=0, a2=0, a3=0, a4=0, a6=0, provenance=None):
        self.base = base
        self.a1, self.a2, self.a3, self.a4, self.a6 = (
            base.convert(a) for a in (a1, a2, a3, a4, a6)
        )
        self.provenance = provenance or {}
        self._integral = None

    def __repr__(self):
        return f'WeierstrassCurve({", ".join(str(a) for a in self.ainvs)})'

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(self.ainvs)

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def field(self):
        return self.base.field

    @cached_property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_singular(self):
        return not self.discriminant

    def j_invariant(self):
        if self.is_singular():
            raise DegenerateFibrationError('singular Weierstrass equation')
        return self.c4 ** 3 / self.discriminant

    def change_coordinates(self, u=1, r=0, s=0, t=0):
        """The model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = (self.base.convert(x) for x in (u, r, s, t))
        a1, a2, a3, a4, a6 = self.ainvs
        ui = u.inverse()
        return WeierstrassCurve(
            self.base,
            (a1 + 2 * s) * ui,
            (a2 - s * a1 + 3 * r - s * s) * ui ** 2,
            (a3 + r * a1 + 2 * t) * ui ** 3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui ** 4,
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) * ui ** 6,
            self.provenance,
        )

    def is_integral(self):
        """All a-invariants in F_s[w]."""
        return all(a.is_polynomial() for a in self.ainvs)

    def integral_model(self):
        """Scale by the lcm D of the denominators: a_i -> a_i D^i."""
        if self._integral is None:
            if self.is_integral():
                self._integral = self
            else:
                D = self.base(polynomial_lcm(self.ainvs))
                self._integral = self.change_coordinates(u=D.inverse())
        return self._integral

    def map(self, f, base):
        """Apply a field map coefficientwise."""
        return WeierstrassCurve(base, *(f(a) for a in self.ainvs), provenance=self.provenance)

    def to_dict(self):
        return {name: str(a) for name, a in zip(A_INVARIANTS, self.ainvs)}


def quartic_invariants(quartic):
    """I and J of a u^4 + b u^3 + c u^2 + d u + e (little-endian input)."""
    e, d, c, b, a = quartic
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    return I, J


def _invariants_route(qm):
    if qm.characteristic < 5:
        raise DegenerateFibrationError('the invariants route needs characteristic at least 5')
    I, J = quartic_invariants([c / 4 for c in qm.discriminant_quartic()])
    return WeierstrassCurve(qm.base, 0, 0, 0, -27 * I, -27 * J)


def _move_to_infinity(qm, point):
    """(H, G, z0) for the model in t with the point at t = infinity."""
    zero = qm.base.zero
    if point.u is None:
        return list(qm.h), list(qm.g), point.z
    # u = u0 + 1/t, z = Z / t^2
    line = [qm.base.one, point.u]
    H, G = [zero] * 3, [zero] * 5
    for degree, coeffs, out in ((2, qm.h, H), (4, qm.g, G)):
        for i, c in enumerate(coeffs):
            if not c:
                continue
            term = [c]
            for _ in range(i):
                term = poly_mul(term, line, zero)
            term = [zero] * (degree - i) + term
            for k, x in enumerate(term):
                out[k] = out[k] + x
    return H, G, point.z


def _point_route(qm, point):
    zero = qm.base.zero
    H, G, z0 = _move_to_infinity(qm, point)
    # Z = Z1 + z0 t^2 puts the point on the branch Z1 / t^2 -> 0
    h = poly_add(H, [zero, zero, 2 * z0], zero)
    g = poly_add(G, [zero] * 4 + [-z0 * z0], zero)
    g = poly_add(g, [-z0 * c for c in poly_mul([zero, zero, qm.base.one], H, zero)], zero)
    if g[4]:
        raise DegenerateFibrationError(f'{point.to_dict()} is not on the model')
    h0, h1, h2 = h[:3]
    g0, g1, g2, g3 = g[:4]
    if h2:
        # expand Z = zeta0 t + zeta1 + V along the branch; x = -(V + h~), y = t x
        zeta0 = g3 / h2
        zeta1 = (g2 - h1 * zeta0 - zeta0 * zeta0) / h2
        m1 = h1 + 2 * zeta0
        m0 = h0 + 2 * zeta1
        k1 = 2 * zeta0 * zeta1 + h1 * zeta1 + h0 * zeta0 - g1
        k0 = zeta1 * zeta1 + h0 * zeta1 - g0
        return WeierstrassCurve(
            qm.base, m1 / h2, -m0 / h2, -k1 / (h2 * h2), k0 / (h2 * h2), 0
        )
    if g3:
        return WeierstrassCurve(qm.base, h1, g2, h0 * g3, g1 * g3, g0 * g3 * g3)
    raise DegenerateFibrationError('the fibres have genus zero')


def quartic_to_weierstrass(qm, point=None):
    """Weierstrass model of the Jacobian of z^2 + h z = g.

    Without a point the classical invariants of the quartic are used, which
    needs characteristic at least 5. With a point it is moved to u = infinity
    and the cubic is read off directly.
    """
    if point is None:
        curve = _invariants_route(qm)
        provenance = {'route': 'invariants'}
    else:
        curve = _point_route(qm, point)
        provenance = {'route': 'point', 'point': point.to_dict()}
    if curve.is_singular():
        raise DegenerateFibrationError('the Weierstrass model has vanishing discriminant')
    curve.provenance = provenance
    return curve


def generic_fiber(form, deg_bound=None, budget=UNLIMITED):
    """Weierstrass model over F_s(w) of the generic fibre of a specialized TriForm."""
    fiber = fiber_quadratic_in_v(form)
    qm = eliminate_v(fiber)
    if qm.characteristic >= 5:
        curve = quartic_to_weierstrass(qm)
    else:
        point = find_rational_point(qm, deg_bound, budget)
        if point is None:
            raise NoPointFound(
                f'no section of {form.shape} at P={form.field.format(form.P)}, '
                f'Q={form.field.format(form.Q)} within the degree bound'
            )
        curve = quartic_to_weierstrass(qm, point)
    curve.provenance = {'chart': fiber.chart, 'swapped': qm.swapped, **curve.provenance}
    logger.info('generic fibre of %s q=%d: %s via %s', form.shape, form.q, curve, curve.provenance['route'])
    return curve
