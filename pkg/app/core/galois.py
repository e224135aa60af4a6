"""
Dense univariate polynomials over a FiniteField.

Polynomials are big-endian lists of element codes (``[lc, ..., c0]``), the
zero polynomial is ``[]``; every function takes the coefficient field ``K``
last. Factorization is square-free decomposition, distinct-degree and then
Cantor-Zassenhaus equal-degree splitting (trace map in characteristic 2).
"""
import logging
import random

from core.conf import shtuka_setting
from core.exceptions import PolynomialError

logger = logging.getLogger(__name__)


def gf_strip(f):
    """Remove leading zeros."""
    if not f or f[0]:
        return f
    k = 0
    for c in f:
        if c:
            break
        k += 1
    return f[k:]


def gf_degree(f):
    return len(f) - 1


def gf_LC(f, K):
    return f[0] if f else K.zero


def gf_TC(f, K):
    return f[-1] if f else K.zero


def gf_one(K):
    return [K.one]


def gf_x(K):
    return [K.one, K.zero]


def gf_neg(f, K):
    return [K.neg(c) for c in f]


def gf_add(f, g, K):
    if not f:
        return g
    if not g:
        return f
    df, dg = len(f), len(g)
    if df == dg:
        return gf_strip([K.add(a, b) for a, b in zip(f, g)])
    k = abs(df - dg)
    if df > dg:
        head, f = f[:k], f[k:]
    else:
        head, g = g[:k], g[k:]
    return head + [K.add(a, b) for a, b in zip(f, g)]


def gf_sub(f, g, K):
    return gf_add(f, gf_neg(g, K), K)


def gf_add_ground(f, a, K):
    if not f:
        return [a] if a else []
    return gf_strip(f[:-1] + [K.add(f[-1], a)])


def gf_mul_ground(f, a, K):
    if not a:
        return []
    return [K.mul(a, c) for c in f]


def gf_quo_ground(f, a, K):
    return gf_mul_ground(f, K.inv(a), K)


def gf_mul(f, g, K):
    if not f or not g:
        return []
    h = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    h[i + j] = K.add(h[i + j], K.mul(a, b))
    return gf_strip(h)


def gf_sqr(f, K):
    return gf_mul(f, f, K)


def gf_monic(f, K):
    """Return (lc, f / lc)."""
    if not f:
        return K.zero, []
    lc = f[0]
    if lc == K.one:
        return lc, list(f)
    return lc, gf_quo_ground(f, lc, K)


def gf_div(f, g, K):
    """Division with remainder, returns (quotient, remainder)."""
    if not g:
        raise ZeroDivisionError('polynomial division by zero')
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return [], list(f)
    inv = K.inv(g[0])
    r = list(f)
    quo = []
    for i in range(df - dg + 1):
        c = K.mul(r[i], inv)
        quo.append(c)
        if c:
            for j in range(1, dg + 1):
                if g[j]:
                    r[i + j] = K.sub(r[i + j], K.mul(c, g[j]))
    return quo, gf_strip(r[df - dg + 1:])


def gf_rem(f, g, K):
    return gf_div(f, g, K)[1]


def gf_quo(f, g, K):
    return gf_div(f, g, K)[0]


def gf_exquo(f, g, K):
    quo, rem = gf_div(f, g, K)
    if rem:
        raise PolynomialError(f'{g} does not divide {f}')
    return quo


def gf_gcd(f, g, K):
    """Monic greatest common divisor."""
    while g:
        f, g = g, gf_rem(f, g, K)
    return gf_monic(f, K)[1]


def gf_lcm(f, g, K):
    if not f or not g:
        return []
    return gf_monic(gf_quo(gf_mul(f, g, K), gf_gcd(f, g, K), K), K)[1]


def gf_gcdex(f, g, K):
    """Extended Euclid: s, t, h with s*f + t*g = h = gcd(f, g) monic."""
    if not (f or g):
        return [K.one], [], []
    p0, r0 = gf_monic(f, K)
    p1, r1 = gf_monic(g, K)
    if not f:
        return [], [K.inv(p1)], r1
    if not g:
        return [K.inv(p0)], [], r0
    s0, s1 = [K.inv(p0)], []
    t0, t1 = [], [K.inv(p1)]
    while True:
        quo, rem = gf_div(r0, r1, K)
        if not rem:
            break
        (lc, r1), r0 = gf_monic(rem, K), r1
        inv = K.inv(lc)
        s = gf_sub(s0, gf_mul(s1, quo, K), K)
        t = gf_sub(t0, gf_mul(t1, quo, K), K)
        s1, s0 = gf_mul_ground(s, inv, K), s1
        t1, t0 = gf_mul_ground(t, inv, K), t1
    return s1, t1, r1


def gf_invert(f, g, K):
    """Inverse of f modulo g."""
    s, _, h = gf_gcdex(f, g, K)
    if h != [K.one]:
        raise ZeroDivisionError('polynomial is not invertible modulo g')
    return gf_rem(s, g, K)


def gf_diff(f, K):
    n = len(f) - 1
    return gf_strip([K.scale(n - i, c) for i, c in enumerate(f[:-1])])


def gf_eval(f, a, K):
    result = K.zero
    for c in f:
        result = K.add(K.mul(result, a), c)
    return result


def gf_pow(f, n, K):
    result = [K.one]
    while n:
        if n & 1:
            result = gf_mul(result, f, K)
        n >>= 1
        if n:
            f = gf_sqr(f, K)
    return result


def gf_pow_mod(f, n, g, K):
    """f**n modulo g by repeated squaring."""
    result = [K.one]
    f = gf_rem(f, g, K)
    while n:
        if n & 1:
            result = gf_rem(gf_mul(result, f, K), g, K)
        n >>= 1
        if n:
            f = gf_rem(gf_sqr(f, K), g, K)
    return gf_rem(result, g, K)


def gf_compose(f, g, K):
    """f(g)."""
    result = []
    for c in f:
        result = gf_add_ground(gf_mul(result, g, K), c, K)
    return result


def gf_pth_root(f, K):
    """p-th root of a polynomial whose exponents are all multiples of p."""
    p = K.p
    n = len(f) - 1
    if n % p or any(c for i, c in enumerate(f) if i % p):
        raise PolynomialError('polynomial is not a p-th power')
    return [K.pth_root(c) for c in f[::p]]


def gf_sqrt(f, K):
    """Square root of f in K[w], or None when f is not a square."""
    if not f:
        return []
    if K.p == 2:
        n = len(f) - 1
        if n % 2 or any(c for i, c in enumerate(f) if i % 2):
            return None
        return gf_pth_root(f, K)
    n = len(f) - 1
    if n % 2:
        return None
    r0 = K.sqrt(f[0])
    if r0 is None:
        return None
    m = n // 2
    r = [r0]
    denominator = K.inv(K.scale(2, r0))
    for i in range(1, m + 1):
        acc = f[i]
        for j in range(1, i):
            acc = K.sub(acc, K.mul(r[j], r[i - j]))
        r.append(K.mul(acc, denominator))
    return r if gf_sqr(r, K) == list(f) else None


def gf_sqf_list(f, K):
    """Square-free decomposition: (lc, [(g_i, e_i)]), g_i monic, pairwise coprime."""
    lc, f = gf_monic(f, K)
    if gf_degree(f) < 1:
        return lc, []
    n, factors = 1, []
    while True:
        F = gf_diff(f, K)
        if F:
            g = gf_gcd(f, F, K)
            h = gf_quo(f, g, K)
            i = 1
            while h != [K.one]:
                G = gf_gcd(g, h, K)
                H = gf_quo(h, G, K)
                if gf_degree(H) > 0:
                    factors.append((H, i * n))
                g, h, i = gf_quo(g, G, K), G, i + 1
            if g == [K.one]:
                break
            f = g
        f = gf_pth_root(f, K)
        n *= K.p
    return lc, factors


def gf_sqf_part(f, K):
    """Product of the distinct monic irreducible factors of f."""
    if not f:
        raise PolynomialError('square-free part of the zero polynomial')
    _, factors = gf_sqf_list(f, K)
    result = [K.one]
    for g, _ in factors:
        result = gf_mul(result, g, K)
    return result


def gf_ddf(f, K):
    """Distinct-degree factorization of a monic square-free f."""
    x = gf_x(K)
    i, g, factors = 1, x, []
    while 2 * i <= gf_degree(f):
        g = gf_pow_mod(g, K.q, f, K)
        h = gf_gcd(f, gf_sub(g, x, K), K)
        if h != [K.one]:
            factors.append((h, i))
            f = gf_quo(f, h, K)
            g = gf_rem(g, f, K)
        i += 1
    if f != [K.one]:
        factors.append((f, gf_degree(f)))
    return factors


def _gf_random(n, K, rng):
    return gf_strip([rng.randrange(K.q) for _ in range(n + 1)])


def _gf_trace_map(r, n, f, K):
    """r + r^2 + r^4 + ... over the K.k * n Frobenius steps of F_2."""
    h = r
    for _ in range(K.k * n - 1):
        r = gf_rem(gf_sqr(r, K), f, K)
        h = gf_add(h, r, K)
    return h


def gf_edf(f, n, K, rng=None):
    """Split a monic f whose irreducible factors all have degree n."""
    if gf_degree(f) <= n:
        return [f]
    if rng is None:
        rng = random.Random(shtuka_setting('SEED'))
    N = gf_degree(f) // n
    factors = [f]
    while len(factors) < N:
        r = _gf_random(gf_degree(f) - 1, K, rng)
        if gf_degree(r) < 1:
            continue
        if K.p == 2:
            h = _gf_trace_map(r, n, f, K)
        else:
            h = gf_add_ground(gf_pow_mod(r, (K.q ** n - 1) // 2, f, K), K.neg(K.one), K)
        g = gf_gcd(f, h, K)
        if g != [K.one] and g != f:
            factors = gf_edf(g, n, K, rng) + gf_edf(gf_quo(f, g, K), n, K, rng)
    return sorted(factors, key=_factor_key)


def _factor_key(g):
    return len(g), g


def gf_factor_sqf(f, K, rng=None):
    """Monic irreducible factors of a monic square-free f."""
    factors = []
    for g, n in gf_ddf(f, K):
        factors.extend(gf_edf(g, n, K, rng))
    return sorted(factors, key=_factor_key)


def gf_factor(f, K):
    """Complete factorization: (lc, [(monic irreducible, multiplicity)])."""
    if not f:
        raise PolynomialError('cannot factor the zero polynomial')
    lc, sqf = gf_sqf_list(f, K)
    rng = random.Random(shtuka_setting('SEED'))
    factors = []
    for g, e in sqf:
        for h in gf_factor_sqf(g, K, rng):
            factors.append((h, e))
    factors.sort(key=lambda item: (_factor_key(item[0]), item[1]))
    logger.debug('factored degree %d polynomial into %d factors', gf_degree(f), len(factors))
    return lc, factors


def gf_irreducible_p(f, K):
    if gf_degree(f) < 1:
        return False
    f = gf_monic(f, K)[1]
    if gf_gcd(f, gf_diff(f, K), K) != [K.one]:
        return False
    return gf_ddf(f, K) == [(f, gf_degree(f))]


def gf_roots(f, K):
    """Distinct roots of f in K, sorted by code."""
    if gf_degree(f) < 1:
        return []
    f = gf_monic(f, K)[1]
    x = gf_x(K)
    split = gf_gcd(f, gf_sub(gf_pow_mod(x, K.q, f, K), x, K), K)
    if gf_degree(split) < 1:
        return []
    rng = random.Random(shtuka_setting('SEED'))
    return sorted(K.neg(g[-1]) for g in gf_edf(split, 1, K, rng))
