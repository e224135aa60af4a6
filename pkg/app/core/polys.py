"""
Sparse multivariate polynomials and rational functions over a FiniteField.

A ``PolyRing`` fixes the generator names and the coefficient field; a
``SparsePoly`` maps exponent tuples to nonzero element codes. Monomials are
ordered graded-lexicographically with the generators in declaration order.
Python ints in arithmetic are integers (mapped to the prime subfield); field
elements enter through ``ring.constant(code)``.
"""
import logging
from dataclasses import dataclass
from functools import reduce

from core.exceptions import EmbeddingError, PolynomialError
from core.fields import embed
from core.galois import (
    gf_factor,
    gf_gcd,
    gf_monic,
    gf_sqf_part,
)

logger = logging.getLogger(__name__)


def _order_key(exps):
    return sum(exps), exps


class PolyRing:
    """Polynomial ring field[gens]."""

    def __init__(self, gens, field):
        self.gens = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise PolynomialError(f'repeated generator in {self.gens}')
        self.field = field
        self.ngens = len(self.gens)
        self.index = {name: i for i, name in enumerate(self.gens)}
        self.zero_monom = (0,) * self.ngens

    def __repr__(self):
        return f'PolyRing({",".join(self.gens)}; {self.field!r})'

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.gens == other.gens
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.gens, self.field))

    @property
    def zero(self):
        return SparsePoly(self, {})

    @property
    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        return SparsePoly(self, {self.zero_monom: c} if c else {})

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def gen(self, name):
        exps = [0] * self.ngens
        exps[self.index[name]] = 1
        return SparsePoly(self, {tuple(exps): self.field.one})

    def gens_polys(self):
        return tuple(self.gen(name) for name in self.gens)

    def monomial(self, exps, c=None):
        c = self.field.one if c is None else c
        return SparsePoly(self, {tuple(exps): c} if c else {})

    def drop(self, *names):
        return PolyRing([g for g in self.gens if g not in names], self.field)

    def with_field(self, field):
        return PolyRing(self.gens, field)

    def convert(self, value):
        """Coerce ints and polynomials of a compatible ring into this ring."""
        if isinstance(value, SparsePoly):
            if value.ring == self:
                return value
            return value.substitute({}, self)
        if isinstance(value, int):
            return self.from_int(value)
        raise PolynomialError(f'cannot convert {value!r} into {self!r}')

    def from_dense(self, name, f):
        """Polynomial in one generator from a big-endian coefficient list."""
        n = len(f) - 1
        i = self.index[name]
        terms = {}
        for k, c in enumerate(f):
            if c:
                exps = [0] * self.ngens
                exps[i] = n - k
                terms[tuple(exps)] = c
        return SparsePoly(self, terms)

    def from_json(self, terms):
        K = self.field
        return SparsePoly(self, {
            tuple(term['e']): K.from_vector(term['c']) for term in terms
        })


class SparsePoly:
    """Element of a PolyRing."""

    __slots__ = ('ring', 'terms')

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    @property
    def field(self):
        return self.ring.field

    def __repr__(self):
        return f'SparsePoly({self})'

    def __str__(self):
        if not self.terms:
            return '0'
        K, gens = self.field, self.ring.gens
        out = []
        for exps, c in self.sorted_terms():
            factors = [
                name if e == 1 else f'{name}^{e}'
                for name, e in zip(gens, exps) if e
            ]
            if not factors:
                out.append(K.format(c))
            elif c == K.one:
                out.append('*'.join(factors))
            else:
                out.append('*'.join([K.format(c)] + factors))
        return ' + '.join(out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.ring != self.ring:
                raise PolynomialError(f'{other.ring!r} differs from {self.ring!r}')
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = K.add(terms.get(e, 0), c)
        return SparsePoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return SparsePoly(self.ring, {e: K.neg(c) for e, c in self.terms.items()})

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
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = K.add(terms.get(e, 0), K.mul(c1, c2))
        return SparsePoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError(f'invalid exponent {n}')
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_ground(self, c):
        K = self.field
        return SparsePoly(self.ring, {e: K.mul(c, v) for e, v in self.terms.items()})

    # structure

    def is_constant(self):
        return all(e == self.ring.zero_monom for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise PolynomialError(f'{self} is not constant')
        return self.terms.get(self.ring.zero_monom, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_term(self):
        exps = max(self.terms, key=_order_key)
        return exps, self.terms[exps]

    def LC(self):
        return self.leading_term()[1] if self.terms else 0

    def monic(self):
        if not self.terms:
            return self
        return self.mul_ground(self.field.inv(self.LC()))

    def degree(self, name):
        i = self.ring.index[name]
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def involves(self, name):
        return self.degree(name) > 0

    def variables(self):
        return [g for g in self.ring.gens if self.involves(g)]

    def block_degrees(self, names):
        """Set of degrees of the terms in the given block of generators."""
        idx = [self.ring.index[n] for n in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def is_homogeneous_in(self, names, degree=None):
        degrees = self.block_degrees(names)
        if not degrees:
            return True
        return len(degrees) == 1 and (degree is None or degrees == {degree})

    def diff(self, name):
        i = self.ring.index[name]
        K = self.field
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = K.add(terms.get(tuple(d), 0), K.scale(e[i], c))
        return SparsePoly(self.ring, terms)

    def collect(self, name):
        """Coefficients in one generator: {power: poly free of that generator}."""
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            d = list(e)
            d[i] = 0
            out.setdefault(e[i], {})[tuple(d)] = c
        return {k: SparsePoly(self.ring, t) for k, t in out.items()}

    def coeff(self, name, power):
        return self.collect(name).get(power, self.ring.zero)

    def monomial_content(self):
        if not self.terms:
            return self.ring.zero_monom
        return tuple(min(col) for col in zip(*self.terms))

    def divide_monomial(self, exps):
        return SparsePoly(self.ring, {
            tuple(a - b for a, b in zip(e, exps)): c for e, c in self.terms.items()
        })

    def to_dense(self, name):
        """Big-endian coefficient list; the polynomial may only involve name."""
        i = self.ring.index[name]
        for e in self.terms:
            if any(v for j, v in enumerate(e) if j != i):
                raise PolynomialError(f'{self} involves more than {name}')
        n = self.degree(name)
        f = [0] * (n + 1)
        for e, c in self.terms.items():
            f[n - e[i]] = c
        return f

    def to_json(self):
        K = self.field
        return [{'e': list(e), 'c': K.vector(c)} for e, c in self.sorted_terms()]

    # substitution

    def substitute(self, mapping, target):
        """Ring map into target: generators in mapping go to the given images,
        the others to the generator of the same name in target. Coefficients
        are embedded into target.field."""
        K, L = self.field, target.field
        images = []
        for name in self.ring.gens:
            if name in mapping:
                value = mapping[name]
                if isinstance(value, SparsePoly):
                    images.append(target.convert(value))
                else:
                    images.append(target.constant(value))
            elif name in target.index:
                images.append(target.gen(name))
            else:
                raise PolynomialError(f'no image for generator {name}')
        power_cache = [dict() for _ in images]

        def power(i, n):
            cache = power_cache[i]
            if n not in cache:
                cache[n] = images[i] ** n
            return cache[n]

        result = {}
        for e, c in self.terms.items():
            c = c if K == L else embed(c, K, L)
            term = target.constant(c)
            for i, n in enumerate(e):
                if n:
                    term = term * power(i, n)
            for te, tc in term.terms.items():
                result[te] = L.add(result.get(te, 0), tc)
        return SparsePoly(target, result)

    def specialize(self, bindings, field=None):
        """Substitute field elements (codes of ``field``) or polynomials for
        some generators; the bound generators leave the ring."""
        field = field or self.field
        for name in bindings:
            if name not in self.ring.index:
                raise PolynomialError(f'{name} is not a generator of {self.ring!r}')
        if field.p != self.field.p or field.k % self.field.k:
            raise EmbeddingError(f'{self.field!r} does not embed in {field!r}')
        target = PolyRing(self.ring.drop(*bindings).gens, field)
        return self.substitute(bindings, target)

    def evaluate(self, values):
        """Value at a point given as {name: code} for every generator."""
        K = self.field
        idx = [values[name] for name in self.ring.gens]
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, n in zip(idx, e):
                if n:
                    v = K.mul(v, K.pow(x, n))
            total = K.add(total, v)
        return total

    # division

    def exquo(self, other):
        """Exact quotient; raises PolynomialError when other does not divide."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError('division by the zero polynomial')
        K = self.field
        lm_g, lc_g = other.leading_term()
        inv = K.inv(lc_g)
        quotient = {}
        r = self
        while r:
            lm_r, lc_r = r.leading_term()
            if any(a < b for a, b in zip(lm_r, lm_g)):
                raise PolynomialError(f'{other} does not divide {self}')
            m = tuple(a - b for a, b in zip(lm_r, lm_g))
            c = K.mul(lc_r, inv)
            quotient[m] = c
            r = r - other * self.ring.monomial(m, c)
        return SparsePoly(self.ring, quotient)

    def __floordiv__(self, other):
        return self.exquo(other)


# gcd over F_q[x1, ..., xn] by recursive primitive remainder sequences

def _main_variable(*polys):
    for name in polys[0].ring.gens:
        if any(p.involves(name) for p in polys):
            return name
    return None


def _content(f, name):
    coeffs = list(f.collect(name).values())
    return reduce(poly_gcd, coeffs[1:], coeffs[0].monic())


def _primitive(f, name):
    return f.exquo(_content(f, name))


def _prem(a, b, name):
    db = b.degree(name)
    lcb = b.coeff(name, db)
    x = b.ring.gen(name)
    r = a
    while r and r.degree(name) >= db:
        dr = r.degree(name)
        r = lcb * r - r.coeff(name, dr) * x ** (dr - db) * b
    return r


def poly_gcd(f, g):
    """Monic gcd in F_q[gens] (zero only when both inputs vanish)."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    name = _main_variable(f, g)
    if name is None:
        return f.ring.one
    cf, cg = _content(f, name), _content(g, name)
    c = poly_gcd(cf, cg)
    a, b = f.exquo(cf), g.exquo(cg)
    if a.degree(name) < b.degree(name):
        a, b = b, a
    while b and b.degree(name) > 0:
        r = _prem(a, b, name)
        a, b = b, (_primitive(r, name) if r else r)
    h = a if not b else f.ring.one
    return (c * h).monic()


class RationalFunction:
    """numerator/denominator in reduced form with monic denominator."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, reduce=True):
        ring = num.ring
        den = ring.one if den is None else ring.convert(den)
        if not den:
            raise ZeroDivisionError('zero denominator')
        if reduce:
            g = poly_gcd(num, den)
            if g != ring.one:
                num, den = num.exquo(g), den.exquo(g)
            lc = den.LC()
            if lc != ring.field.one:
                inv = ring.field.inv(lc)
                num, den = num.mul_ground(inv), den.mul_ground(inv)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def __repr__(self):
        return f'RationalFunction({self})'

    def __str__(self):
        if self.den == self.ring.one:
            return str(self.num)
        return f'({self.num})/({self.den})'

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(self.ring.convert(other))

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError('division by zero rational function')
        return RationalFunction(self.num * other.den, self.den * other.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.is_polynomial():
            raise PolynomialError(f'{self} is not a polynomial')
        return self.num.mul_ground(self.ring.field.inv(self.den.constant_value()))

    def specialize(self, bindings, field=None):
        num = self.num.specialize(bindings, field)
        den = self.den.specialize(bindings, field)
        if not den:
            raise ZeroDivisionError(f'specialization kills the denominator {self.den}')
        return RationalFunction(num, den)

    def coefficient_view(self, names):
        """Coefficients with respect to the monomials in ``names``: a dict
        mapping exponent tuples (over names) to reduced rational functions
        in the remaining generators."""
        idx = [self.ring.index[n] for n in names]
        grouped = {}
        for e, c in self.num.terms.items():
            key = tuple(e[i] for i in idx)
            rest = tuple(0 if i in idx else v for i, v in enumerate(e))
            grouped.setdefault(key, {})[rest] = c
        return {
            key: RationalFunction(SparsePoly(self.ring, terms), self.den)
            for key, terms in sorted(grouped.items(), key=lambda t: _order_key(t[0]), reverse=True)
        }


def determinant(matrix):
    """Determinant of a square matrix of SparsePoly by fraction-free Bareiss
    elimination (every division is exact)."""
    n = len(matrix)
    if n == 0:
        raise PolynomialError('empty matrix')
    ring = matrix[0][0].ring
    m = [list(row) for row in matrix]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ring.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exquo(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f, g, name):
    """Sylvester resultant of f and g with respect to the generator ``name``."""
    if f.ring != g.ring:
        raise PolynomialError('resultant of polynomials from different rings')
    if not f.involves(name) and not g.involves(name):
        raise PolynomialError(f'{name} occurs in neither polynomial')
    ring = f.ring
    m, n = f.degree(name), g.degree(name)
    if not f or not g:
        return ring.zero
    fc, gc = f.collect(name), g.collect(name)
    frow = [fc.get(m - i, ring.zero) for i in range(m + 1)]
    grow = [gc.get(n - i, ring.zero) for i in range(n + 1)]
    size = m + n
    sylvester = []
    for i in range(n):
        sylvester.append([ring.zero] * i + frow + [ring.zero] * (size - m - 1 - i))
    for i in range(m):
        sylvester.append([ring.zero] * i + grow + [ring.zero] * (size - n - 1 - i))
    return determinant(sylvester)


def _univariate_name(*polys):
    names = set()
    for f in polys:
        names.update(f.variables())
    if len(names) > 1:
        raise PolynomialError(f'expected univariate input, found {sorted(names)}')
    return names.pop() if names else polys[0].ring.gens[0]


def gcd_univariate(f, g):
    """Monic gcd of two univariate polynomials of the same ring."""
    if f.ring != g.ring:
        raise PolynomialError('gcd of polynomials from different rings')
    name = _univariate_name(f, g)
    h = gf_gcd(f.to_dense(name), g.to_dense(name), f.field)
    return f.ring.from_dense(name, h)


def factor_univariate(f):
    """[(monic irreducible, multiplicity)] sorted by degree then coefficients."""
    if not f:
        raise PolynomialError('cannot factor the zero polynomial')
    name = _univariate_name(f)
    _, factors = gf_factor(f.to_dense(name), f.field)
    return [(f.ring.from_dense(name, g), e) for g, e in factors]


def squarefree_part(f):
    if not f:
        raise PolynomialError('square-free part of the zero polynomial')
    name = _univariate_name(f)
    return f.ring.from_dense(name, gf_sqf_part(f.to_dense(name), f.field))


def specialize(f, bindings, field=None):
    """Specialize a SparsePoly or RationalFunction; a RationalFunction whose
    denominator becomes constant is returned as a SparsePoly."""
    if isinstance(f, RationalFunction):
        result = f.specialize(bindings, field)
        return result.as_poly() if result.is_polynomial() else result
    return f.specialize(bindings, field)


@dataclass(frozen=True)
class Place:
    """A place of F_s(w): a monic irreducible (big-endian codes) or infinity."""

    field: object
    poly: tuple = None

    @classmethod
    def infinity(cls, field):
        return cls(field, None)

    @classmethod
    def finite(cls, field, poly):
        lc, monic = gf_monic(list(poly), field)
        if lc == 0 or len(monic) < 2:
            raise PolynomialError(f'{poly} does not define a finite place')
        return cls(field, tuple(monic))

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else len(self.poly) - 1

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.degree, self.poly)

    def __str__(self):
        if self.poly is None:
            return 'inf'
        ring = PolyRing(('w',), self.field)
        return str(ring.from_dense('w', list(self.poly)))
