"""
Finite fields F_{p^k} with table-driven arithmetic.

Elements are plain ints: the code of ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}``
is ``sum(c_i * p**i)``, so the prime subfield is ``range(p)`` in every field
of characteristic ``p``. Fields are interned by ``make_field``; arithmetic goes
through the owning field, passed around alongside the codes.
"""
import functools
import logging
import math

from core.conf import shtuka_setting
from core.exceptions import EmbeddingError, FieldError

logger = logging.getLogger(__name__)


def is_prime(n):
    """Trial-division primality test for small integers."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """Return the distinct prime factors of n in increasing order."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def prime_power(q):
    """Split q = p**k, raising FieldError when q is not a prime power."""
    if q < 2:
        raise FieldError(f'{q} is not a prime power')
    p = prime_factors(q)[0]
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise FieldError(f'{q} is not a prime power')
    return p, k


# Little-endian coefficient lists over F_p, used only while building tables.

def _strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _rem_prime(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return _strip(f[:dg])


def _mulmod_prime(a, b, modulus, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _rem_prime(_strip(prod), modulus, p)


def _monic_polys(p, degree):
    """All monic polynomials of the given degree, in code order."""
    for code in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            code, c = divmod(code, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible_prime(f, p):
    """Irreducibility over F_p by trial division by monics of degree <= deg/2."""
    n = len(f) - 1
    if n <= 1:
        return n == 1
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _rem_prime(f, g, p):
                return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    for f in _monic_polys(p, k):
        if is_irreducible_prime(f, p):
            return tuple(f)
    raise FieldError(f'no irreducible polynomial of degree {k} over F_{p}')


class FiniteField:
    """The field F_p[x]/(modulus), modulus monic irreducible of degree k."""

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self.zero = 0
        self.one = 1
        self._order = self.q - 1
        self._build_tables()

    def __repr__(self):
        return f'GF({self.p}^{self.k})' if self.k > 1 else f'GF({self.p})'

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # construction

    def vector(self, a):
        """Little-endian coefficient vector of length k."""
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_vector(self, coeffs):
        if len(coeffs) > self.k:
            raise FieldError(f'{coeffs} has more than {self.k} coefficients')
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    def _build_tables(self):
        p, n = self.p, self._order
        modulus = list(self.modulus)
        factors = prime_factors(n) if n > 1 else []

        def power(vec, e):
            result, base = [1], vec
            while e:
                if e & 1:
                    result = _mulmod_prime(result, base, modulus, p)
                base = _mulmod_prime(base, base, modulus, p)
                e >>= 1
            return result

        generator = 1
        for code in range(1, self.q):
            vec = _strip(self.vector(code))
            if all(power(vec, n // ell) != [1] for ell in factors):
                generator = code
                break
        self._generator = generator

        exp = [0] * (2 * n) if n else [1]
        log = [0] * self.q
        if n:
            g = _strip(self.vector(generator))
            current = [1]
            for i in range(n):
                code = self.from_vector(current)
                exp[i] = code
                log[code] = i
                current = _mulmod_prime(current, g, modulus, p)
            for i in range(n, 2 * n):
                exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

        self._zech = None
        if p != 2 and self.k > 1:
            zech = [-1] * n
            for d in range(n):
                c = exp[d]
                c0 = c % p
                shifted = c - c0 + (c0 + 1) % p
                zech[d] = log[shifted] if shifted else -1
            self._zech = zech
        logger.debug('built tables for %r, generator %d', self, generator)

    # arithmetic

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._order]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._order]

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        if self.k == 1:
            return self.p - a
        return self._exp[(self._log[a] + self._order // 2) % self._order]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f'zero has no inverse in {self!r}')
        return self._exp[(-self._log[a]) % self._order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % self._order]

    def from_int(self, n):
        """Image of an integer in the prime subfield."""
        return n % self.p

    def scale(self, n, a):
        """The sum a + ... + a (n times), n any integer."""
        return self.mul(self.from_int(n), a)

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def pth_root(self, a):
        if a == 0:
            return 0
        return self._exp[self._log[a] * (self.q // self.p) % self._order]

    def is_square(self, a):
        return self.p == 2 or a == 0 or self._log[a] % 2 == 0

    def sqrt(self, a):
        """A square root of a, or None when a is a non-square."""
        if self.p == 2:
            return self.pth_root(a)
        if a == 0:
            return 0
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def log(self, a):
        if a == 0:
            raise ValueError('logarithm of zero')
        return self._log[a]

    def order(self, a):
        if a == 0:
            raise ValueError('zero has no multiplicative order')
        return self._order // math.gcd(self._log[a], self._order)

    def primitive_element(self):
        return self._generator

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def contains_prime_subfield(self, a):
        return 0 <= a < self.p

    def format(self, a):
        if self.k == 1:
            return str(a)
        return '[' + ','.join(str(c) for c in self.vector(a)) + ']'

    def subfield_degree(self, a):
        """Degree over F_p of the smallest subfield containing a."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.pow(a, self.p ** d) == a:
                return d
        return self.k


@functools.lru_cache(maxsize=None)
def _build_field(p, k):
    return FiniteField(p, k, smallest_irreducible(p, k))


def make_field(p, k=1):
    """Construct (or fetch the interned) F_{p^k}."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f'{p} is not prime')
    if not isinstance(k, int) or k < 1:
        raise FieldError(f'extension degree must be positive, got {k}')
    limit = shtuka_setting('FIELD_CARDINALITY_LIMIT')
    if p ** k > limit:
        raise FieldError(f'|F| = {p}^{k} exceeds the configured limit {limit}')
    return _build_field(p, k)


def field_of_order(q):
    return make_field(*prime_power(q))


def primitive_element(field):
    return field.primitive_element()


class Embedding:
    """Ring homomorphism F_{p^k} -> F_{p^m} sending x to a fixed root."""

    def __init__(self, source, target):
        if source.p != target.p or target.k % source.k:
            raise EmbeddingError(f'{source!r} does not embed in {target!r}')
        self.source = source
        self.target = target
        self.root = self._find_root()
        self._powers = [1]
        for _ in range(1, source.k):
            self._powers.append(target.mul(self._powers[-1], self.root))

    def _find_root(self):
        if self.source.k == 1:
            return 0
        target, modulus = self.target, self.source.modulus
        for r in target.elements():
            value = 0
            for c in reversed(modulus):
                value = target.add(target.mul(value, r), c)
            if value == 0:
                return r
        raise EmbeddingError(f'{self.source!r} has no root in {self.target!r}')

    def __call__(self, a):
        if self.source.k == 1:
            return a
        target = self.target
        out = 0
        for c, power in zip(self.source.vector(a), self._powers):
            if c:
                out = target.add(out, target.mul(c, power))
        return out


@functools.lru_cache(maxsize=None)
def field_embedding(source, target):
    return Embedding(source, target)


def embed(x, source, target):
    """Image of x in target under the deterministic embedding of source."""
    if not 0 <= x < source.q:
        raise EmbeddingError(f'{x} is not an element of {source!r}')
    return field_embedding(source, target)(x)


def common_field(*fields):
    """Smallest field of the interned tower containing every argument."""
    p = fields[0].p
    if any(f.p != p for f in fields):
        raise EmbeddingError('fields of different characteristic')
    k = 1
    for f in fields:
        k = k * f.k // math.gcd(k, f.k)
    return make_field(p, k)
