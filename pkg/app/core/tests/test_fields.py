"""
Tests for finite fields.
"""
import random

from django.test import SimpleTestCase, override_settings

from core.exceptions import EmbeddingError, FieldError
from core.fields import (
    embed,
    make_field,
    prime_factors,
    prime_power,
    primitive_element,
)

TEST_ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (3, 3)]


def random_triples(field, count=40, seed=1):
    """Return reproducible random triples of field elements."""
    rng = random.Random(seed)
    return [tuple(rng.randrange(field.q) for _ in range(3)) for _ in range(count)]


class MakeFieldTests(SimpleTestCase):
    """Test field construction."""

    def test_prime_field_modulus(self):
        """Test F_2 is defined by x."""
        F = make_field(2, 1)

        self.assertEqual(F.q, 2)
        self.assertEqual(F.modulus, (0, 1))

    def test_f4_modulus(self):
        """Test F_4 is defined by x^2+x+1."""
        self.assertEqual(make_field(2, 2).modulus, (1, 1, 1))

    def test_f9_smallest_modulus(self):
        """Test F_9 is defined by x^2+1."""
        self.assertEqual(make_field(3, 2).modulus, (1, 0, 1))

    def test_f8_and_f16_moduli(self):
        """Test the cubic and quartic moduli over F_2."""
        self.assertEqual(make_field(2, 3).modulus, (1, 1, 0, 1))
        self.assertEqual(make_field(2, 4).modulus, (1, 1, 0, 0, 1))

    def test_fields_are_interned(self):
        """Test repeated construction returns the same object."""
        self.assertIs(make_field(3, 2), make_field(3, 2))

    def test_non_prime_characteristic_rejected(self):
        """Test a composite characteristic raises."""
        with self.assertRaises(FieldError):
            make_field(4, 1)

    def test_non_positive_degree_rejected(self):
        """Test k <= 0 raises."""
        with self.assertRaises(FieldError):
            make_field(2, 0)

    @override_settings(SHTUKA={'FIELD_CARDINALITY_LIMIT': 100})
    def test_cardinality_limit(self):
        """Test the configured cardinality cap."""
        with self.assertRaises(FieldError):
            make_field(2, 7)

    def test_prime_power_split(self):
        """Test prime power decomposition."""
        self.assertEqual(prime_power(9), (3, 2))
        self.assertEqual(prime_power(16), (2, 4))
        with self.assertRaises(FieldError):
            prime_power(12)


class PrimitiveElementTests(SimpleTestCase):
    """Test primitive elements."""

    def test_f2(self):
        """Test the generator of F_2 is 1."""
        self.assertEqual(primitive_element(make_field(2, 1)), 1)

    def test_f4_is_x(self):
        """Test the class of x generates F_4."""
        F = make_field(2, 2)

        self.assertEqual(F.vector(primitive_element(F)), [0, 1])

    def test_f7(self):
        """Test 3 generates F_7."""
        self.assertEqual(primitive_element(make_field(7, 1)), 3)

    def test_f9(self):
        """Test x+1 is the smallest generator of F_9."""
        F = make_field(3, 2)

        self.assertEqual(F.vector(primitive_element(F)), [1, 1])

    def test_order_is_exact(self):
        """Test g^(q-1) = 1 and no proper divisor kills g."""
        for p, k in TEST_ORDERS:
            F = make_field(p, k)
            g = primitive_element(F)
            n = F.q - 1
            self.assertEqual(F.pow(g, n), 1)
            for ell in prime_factors(n) if n > 1 else []:
                self.assertNotEqual(F.pow(g, n // ell), 1)


class ArithmeticTests(SimpleTestCase):
    """Test field axioms and Frobenius."""

    def test_field_axioms(self):
        """Test associativity, distributivity and inverses."""
        for p, k in TEST_ORDERS:
            F = make_field(p, k)
            for a, b, c in random_triples(F):
                self.assertEqual(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
                self.assertEqual(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
                self.assertEqual(
                    F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))
                )
                self.assertEqual(F.add(a, F.neg(a)), 0)
                if a:
                    self.assertEqual(F.mul(a, F.inv(a)), 1)

    def test_fermat_identity(self):
        """Test x^q = x for every element."""
        for p, k in TEST_ORDERS:
            F = make_field(p, k)
            for a in F.elements():
                self.assertEqual(F.pow(a, F.q), a)

    def test_frobenius_is_a_ring_map(self):
        """Test Frobenius is additive, multiplicative and of order k."""
        for p, k in TEST_ORDERS:
            F = make_field(p, k)
            for a, b, _ in random_triples(F, seed=2):
                self.assertEqual(
                    F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b))
                )
                self.assertEqual(
                    F.frobenius(F.mul(a, b)), F.mul(F.frobenius(a), F.frobenius(b))
                )
                self.assertEqual(F.frobenius(a, k), a)

    def test_roots(self):
        """Test p-th roots and square roots."""
        F = make_field(3, 2)
        for a in F.elements():
            self.assertEqual(F.pow(F.pth_root(a), 3), a)
            root = F.sqrt(F.mul(a, a))
            self.assertEqual(F.mul(root, root), F.mul(a, a))

    def test_vector_round_trip(self):
        """Test the polynomial-basis vector of an element."""
        F = make_field(5, 2)

        self.assertEqual(F.from_vector([3, 3]), 18)
        self.assertEqual(F.vector(18), [3, 3])
        self.assertEqual(F.format(18), '[3,3]')


class EmbeddingTests(SimpleTestCase):
    """Test embeddings between fields."""

    def test_prime_subfield_is_fixed(self):
        """Test 1 in F_2 maps to 1 in F_8."""
        self.assertEqual(embed(1, make_field(2, 1), make_field(2, 3)), 1)

    def test_order_preserved(self):
        """Test x in F_4 maps to an element of order 3 in F_16."""
        F4, F16 = make_field(2, 2), make_field(2, 4)
        image = embed(F4.primitive_element(), F4, F16)

        self.assertEqual(F16.order(image), 3)

    def test_embedding_is_a_homomorphism(self):
        """Test the embedding F_9 -> F_81 commutes with arithmetic."""
        F9, F81 = make_field(3, 2), make_field(3, 4)
        for a, b, _ in random_triples(F9, seed=3):
            self.assertEqual(
                embed(F9.mul(a, b), F9, F81),
                F81.mul(embed(a, F9, F81), embed(b, F9, F81)),
            )
            self.assertEqual(
                embed(F9.add(a, b), F9, F81),
                F81.add(embed(a, F9, F81), embed(b, F9, F81)),
            )

    def test_incompatible_degrees(self):
        """Test F_4 does not embed in F_8."""
        with self.assertRaises(EmbeddingError):
            embed(2, make_field(2, 2), make_field(2, 3))
