"""
The rational function field F_s(w) over a finite field of the tower.

Elements are reduced fractions of dense big-endian polynomials (see
core.galois) with a monic denominator. Integers coerce through the prime
subfield, field elements are passed as codes through ``constant``.
"""
from core.exceptions import PolynomialError
from core.fields import embed
from core.galois import (
    gf_add,
    gf_compose,
    gf_div,
    gf_eval,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_mul_ground,
    gf_neg,
    gf_quo,
    gf_sqrt,
    gf_strip,
)
from core.polys import PolyRing


def _trailing_zeros(f):
    """Number of trailing zero coefficients (the w-adic valuation of f)."""
    n = 0
    for c in reversed(f):
        if c:
            break
        n += 1
    return n


def poly_valuation(f, pi, K):
    """Exponent of the irreducible pi in the nonzero polynomial f."""
    if not f:
        return float('inf')
    n = 0
    while True:
        quo, rem = gf_div(f, pi, K)
        if rem:
            return n
        f, n = quo, n + 1


class FunctionField:
    """F_s(w) for a finite field F_s."""

    def __init__(self, field, var='w'):
        self.field = field
        self.var = var

    def __repr__(self):
        return f'{self.field!r}({self.var})'

    def __eq__(self, other):
        return isinstance(other, FunctionField) and (self.field, self.var) == (other.field, other.var)

    def __hash__(self):
        return hash((self.field, self.var))

    def __call__(self, num, den=None):
        return FunctionFieldElement(self, list(num), [self.field.one] if den is None else list(den))

    @property
    def zero(self):
        return FunctionFieldElement(self, [], [self.field.one], reduce=False)

    @property
    def one(self):
        return self.constant(self.field.one)

    @property
    def gen(self):
        return FunctionFieldElement(self, [self.field.one, 0], [self.field.one], reduce=False)

    def constant(self, c):
        return FunctionFieldElement(self, [c] if c else [], [self.field.one], reduce=False)

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def monomial(self, c, n):
        """c w^n, n >= 0."""
        return FunctionFieldElement(self, [c] + [0] * n if c else [], [self.field.one], reduce=False)

    def from_poly(self, f, name=None):
        """Element from a SparsePoly involving at most the generator ``name``."""
        if f.is_constant():
            return self.constant(f.constant_value())
        return self(f.to_dense(name or self.var))

    def convert(self, value):
        if isinstance(value, FunctionFieldElement):
            if value.parent != self:
                raise PolynomialError(f'{value!r} does not belong to {self!r}')
            return value
        if isinstance(value, int):
            return self.from_int(value)
        raise PolynomialError(f'cannot convert {value!r} into {self!r}')


class FunctionFieldElement:
    """num/den in lowest terms, den monic."""

    __slots__ = ('parent', 'num', 'den')

    def __init__(self, parent, num, den, reduce=True):
        K = parent.field
        num, den = gf_strip(num), gf_strip(den)
        if not den:
            raise ZeroDivisionError('zero denominator')
        if reduce:
            if not num:
                den = [K.one]
            else:
                g = gf_gcd(num, den, K)
                if len(g) > 1:
                    num, den = gf_quo(num, g, K), gf_quo(den, g, K)
                lc, den = gf_monic(den, K)
                if lc != K.one:
                    num = gf_mul_ground(num, K.inv(lc), K)
        self.parent = parent
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.parent.field

    def __repr__(self):
        return f'FunctionFieldElement({self})'

    def __str__(self):
        ring = PolyRing((self.parent.var,), self.field)
        num = str(ring.from_dense(self.parent.var, self.num))
        if self.den == [self.field.one]:
            return num
        return f'({num})/({ring.from_dense(self.parent.var, self.den)})'

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.parent.from_int(other)
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        return self.parent == other.parent and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.parent, tuple(self.num), tuple(self.den)))

    # arithmetic

    def _coerce(self, other):
        try:
            return self.parent.convert(other)
        except PolynomialError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        if self.den == other.den:
            return FunctionFieldElement(self.parent, gf_add(self.num, other.num, K), self.den)
        num = gf_add(gf_mul(self.num, other.den, K), gf_mul(other.num, self.den, K), K)
        return FunctionFieldElement(self.parent, num, gf_mul(self.den, other.den, K))

    __radd__ = __add__

    def __neg__(self):
        return FunctionFieldElement(self.parent, gf_neg(self.num, self.field), self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        return FunctionFieldElement(
            self.parent, gf_mul(self.num, other.num, K), gf_mul(self.den, other.den, K)
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError('division by zero in the function field')
        return FunctionFieldElement(self.parent, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            raise PolynomialError(f'invalid exponent {n}')
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.parent.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # structure

    def is_polynomial(self):
        return len(self.den) == 1

    def is_constant(self):
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise PolynomialError(f'{self} is not constant')
        return self.num[0] if self.num else 0

    def degree(self):
        """deg num - deg den; minus the valuation at infinity."""
        if not self.num:
            return float('-inf')
        return len(self.num) - len(self.den)

    def valuation(self, pi=None):
        """Valuation at the place w = 0, or at the monic irreducible ``pi``."""
        if not self.num:
            return float('inf')
        if pi is None:
            return _trailing_zeros(self.num) - _trailing_zeros(self.den)
        K = self.field
        return poly_valuation(self.num, pi, K) - poly_valuation(self.den, pi, K)

    def residue(self, shift=0):
        """Value of self / w^shift at w = 0; requires valuation >= shift."""
        v = self.valuation()
        if v > shift:
            return 0
        if v < shift:
            raise ValueError(f'{self} / {self.parent.var}^{shift} is not integral at 0')
        K = self.field
        lead_num = self.num[len(self.num) - 1 - _trailing_zeros(self.num)]
        lead_den = self.den[len(self.den) - 1 - _trailing_zeros(self.den)]
        return K.div(lead_num, lead_den)

    def __call__(self, a):
        K = self.field
        den = gf_eval(self.den, a, K)
        if not den:
            raise ZeroDivisionError(f'{self} has a pole at {K.format(a)}')
        return K.div(gf_eval(self.num, a, K), den)

    def sqrt(self):
        """A square root in F_s(w), or None."""
        K = self.field
        root = gf_sqrt(gf_mul(self.num, self.den, K), K)
        if root is None:
            return None
        return FunctionFieldElement(self.parent, root, self.den)

    # changes of variable

    def shift(self, theta, target):
        """The element f(w + theta) of ``target``, an extension containing theta."""
        K, L = self.field, target.field
        line = [L.one, theta]
        num = gf_compose([embed(c, K, L) for c in self.num], line, L)
        den = gf_compose([embed(c, K, L) for c in self.den], line, L)
        return FunctionFieldElement(target, num, den)

    def reciprocal(self):
        """The element f(1/w)."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        if not self.num:
            return self
        num = list(reversed(self.num)) + [0] * max(dd - dn, 0)
        den = list(reversed(self.den)) + [0] * max(dn - dd, 0)
        return FunctionFieldElement(self.parent, num, den)

    def numerator(self):
        return list(self.num)

    def denominator(self):
        return list(self.den)


def polynomial_lcm(elements):
    """Monic lcm of the denominators of some elements."""
    if not elements:
        raise PolynomialError('lcm of nothing')
    K = elements[0].field
    result = [K.one]
    for x in elements:
        g = gf_gcd(result, x.den, K)
        result = gf_quo(gf_mul(result, x.den, K), g, K)
    return gf_monic(result, K)[1]
