"""
Tests for dense univariate polynomial arithmetic.
"""
import random

from django.test import SimpleTestCase

from core.exceptions import PolynomialError
from core.fields import make_field
from core.galois import (
    gf_degree,
    gf_div,
    gf_factor,
    gf_gcd,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_add,
    gf_pow,
    gf_roots,
    gf_sqf_part,
    gf_sqrt,
    gf_strip,
)


def random_poly(field, degree, rng):
    """Return a random polynomial of exact degree."""
    return [rng.randrange(1, field.q)] + [rng.randrange(field.q) for _ in range(degree)]


class GcdTests(SimpleTestCase):
    """Test gcd computations."""

    def test_gcd_linear(self):
        """Test gcd(x^2-1, x-1) = x-1 over F_5."""
        F = make_field(5)

        self.assertEqual(gf_gcd([1, 0, 4], [1, 4], F), [1, 4])

    def test_gcd_with_zero(self):
        """Test gcd(f, 0) is f made monic."""
        F = make_field(5)

        self.assertEqual(gf_gcd([2, 1], [], F), [1, 3])

    def test_gcd_char_two(self):
        """Test gcd(x^4+x, x^2+x) = x^2+x over F_2."""
        F = make_field(2)

        self.assertEqual(gf_gcd([1, 0, 0, 1, 0], [1, 1, 0], F), [1, 1, 0])

    def test_gcdex_bezout(self):
        """Test s*f + t*g equals the monic gcd."""
        F = make_field(3, 2)
        rng = random.Random(5)
        for _ in range(10):
            f = random_poly(F, 5, rng)
            g = random_poly(F, 3, rng)
            s, t, h = gf_gcdex(f, g, F)
            self.assertEqual(gf_add(gf_mul(s, f, F), gf_mul(t, g, F), F), h)
            self.assertEqual(h, gf_gcd(f, g, F))

    def test_division_identity(self):
        """Test f = quo*g + rem with deg rem < deg g."""
        F = make_field(2, 3)
        rng = random.Random(6)
        for _ in range(10):
            f = random_poly(F, 7, rng)
            g = random_poly(F, 3, rng)
            quo, rem = gf_div(f, g, F)
            self.assertLess(gf_degree(rem), gf_degree(g))
            self.assertEqual(gf_add(gf_mul(quo, g, F), rem, F), f)


class FactorTests(SimpleTestCase):
    """Test factorization over finite fields."""

    def test_artin_schreier_product(self):
        """Test w^9 - w over F_3 splits into 3 linear and 3 quadratic factors."""
        F = make_field(3)
        f = [1] + [0] * 7 + [2, 0]
        _, factors = gf_factor(f, F)
        degrees = sorted(gf_degree(g) for g, _ in factors)

        self.assertEqual(degrees, [1, 1, 1, 2, 2, 2])
        self.assertTrue(all(e == 1 for _, e in factors))

    def test_square(self):
        """Test w^2 over F_5 is (w, 2)."""
        _, factors = gf_factor([1, 0, 0], make_field(5))

        self.assertEqual(factors, [([1, 0], 2)])

    def test_irreducible_quadratic(self):
        """Test w^2+1 is irreducible over F_3."""
        F = make_field(3)
        _, factors = gf_factor([1, 0, 1], F)

        self.assertEqual(factors, [([1, 0, 1], 1)])
        self.assertTrue(gf_irreducible_p([1, 0, 1], F))

    def test_zero_rejected(self):
        """Test factoring zero raises."""
        with self.assertRaises(PolynomialError):
            gf_factor([], make_field(3))

    def test_reconstruction(self):
        """Test the product of the factors rebuilds the input."""
        rng = random.Random(7)
        for p, k in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]:
            F = make_field(p, k)
            for _ in range(4):
                f = random_poly(F, rng.randrange(1, 13), rng)
                lc, factors = gf_factor(f, F)
                product = [lc]
                for g, e in factors:
                    self.assertTrue(gf_irreducible_p(g, F))
                    product = gf_mul(product, gf_pow(g, e, F), F)
                self.assertEqual(product, f)
                self.assertEqual(
                    sum(gf_degree(g) * e for g, e in factors), gf_degree(f)
                )


class SquarefreeTests(SimpleTestCase):
    """Test square-free parts and square roots."""

    def test_repeated_factor(self):
        """Test (w-1)^3 (w+1) has square-free part w^2-1 over F_5."""
        F = make_field(5)
        f = gf_mul(gf_pow([1, 4], 3, F), [1, 1], F)

        self.assertEqual(gf_sqf_part(f, F), [1, 0, 4])

    def test_inseparable_descent(self):
        """Test w^3 - 2 over F_3 has square-free part w - 2."""
        self.assertEqual(gf_sqf_part([1, 0, 0, 1], make_field(3)), [1, 1])

    def test_inseparable_over_extension(self):
        """Test w^4 + c^2 over F_4 descends to w + sqrt(c)."""
        F = make_field(2, 2)
        c = F.primitive_element()

        self.assertEqual(
            gf_sqf_part([1, 0, 0, 0, F.mul(c, c)], F), [1, F.sqrt(c)]
        )

    def test_polynomial_sqrt(self):
        """Test square roots of squares and non-squares."""
        F = make_field(7)
        rng = random.Random(8)
        for _ in range(5):
            r = random_poly(F, 3, rng)
            root = gf_sqrt(gf_mul(r, r, F), F)
            self.assertEqual(gf_mul(root, root, F), gf_mul(r, r, F))
        self.assertIsNone(gf_sqrt([1, 0, 3], F))

    def test_roots(self):
        """Test the roots of (w-1)(w-2)(w^2+1) over F_3 are 1, 2."""
        F = make_field(3)
        f = gf_mul(gf_mul([1, 2], [1, 1], F), [1, 0, 1], F)

        self.assertEqual(gf_roots(f, F), [1, 2])
        self.assertEqual(gf_strip([0, 0, 1]), [1])
