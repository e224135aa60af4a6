"""
Tests for the rational function field F_s(w).
"""
from django.test import SimpleTestCase

from core.fields import make_field
from core.galois import gf_roots
from fibration.function_field import FunctionField, polynomial_lcm


def create_base(p=5, k=1):
    """Create and return F_{p^k}(w) and its generator."""
    base = FunctionField(make_field(p, k))
    return base, base.gen


class ArithmeticTests(SimpleTestCase):
    """Test field operations."""

    def test_reduced_form(self):
        """Test fractions are stored in lowest terms with a monic denominator."""
        base, w = create_base()
        x = (w * w - 1) / (2 * w + 2)

        self.assertEqual(x.den, [1])
        self.assertEqual(x, (w - 1) / 2)

    def test_inverse(self):
        """Test x * x^-1 = 1 and division by zero raises."""
        base, w = create_base()
        x = w / (w + 1)

        self.assertEqual(x * x.inverse(), base.one)
        self.assertEqual(x ** -2 * x ** 2, 1)
        with self.assertRaises(ZeroDivisionError):
            base.zero.inverse()

    def test_integer_coercion(self):
        """Test integers map to the prime subfield."""
        base, w = create_base(3)

        self.assertEqual(w + 3, w)
        self.assertEqual(2 - w, -(w + 1))

    def test_evaluate(self):
        """Test evaluation at an element and at a pole."""
        base, w = create_base()
        x = (w * w + 2) / (w - 2)

        self.assertEqual(x(0), 4)
        with self.assertRaises(ZeroDivisionError):
            x(2)

    def test_lcm(self):
        """Test the lcm of denominators."""
        base, w = create_base()

        self.assertEqual(polynomial_lcm([1 / w, 1 / (w * w - w), w]), [1, 4, 0])


class ValuationTests(SimpleTestCase):
    """Test valuations and residues."""

    def test_valuation_at_zero(self):
        """Test v_w of w^2 (w - 1) / (w + 2) is 2."""
        base, w = create_base()
        x = w ** 2 * (w - 1) / (w + 2)

        self.assertEqual(x.valuation(), 2)
        self.assertEqual((1 / x).valuation(), -2)
        self.assertEqual(base.zero.valuation(), float('inf'))

    def test_valuation_at_place(self):
        """Test the valuation at w - 1 and the degree."""
        base, w = create_base()
        x = w ** 2 * (w - 1) ** 3 / (w + 2)

        self.assertEqual(x.valuation([1, 4]), 3)
        self.assertEqual(x.degree(), 4)

    def test_residue(self):
        """Test the leading coefficient at w = 0."""
        base, w = create_base()
        x = 3 * w ** 2 / (w + 1)

        self.assertEqual(x.residue(2), 3)
        self.assertEqual(x.residue(1), 0)
        with self.assertRaises(ValueError):
            x.residue(3)


class SubstitutionTests(SimpleTestCase):
    """Test changes of the variable."""

    def test_reciprocal(self):
        """Test f(1/w) for f = w^2 + 1 and the involution."""
        base, w = create_base()
        x = w ** 2 + 1

        self.assertEqual(x.reciprocal(), (1 + w ** 2) / w ** 2)
        self.assertEqual(x.reciprocal().reciprocal(), x)
        self.assertEqual((w / (w + 1)).reciprocal(), 1 / (1 + w))

    def test_shift_to_extension_root(self):
        """Test w^2 + 1 over F_3 vanishes at w = 0 after shifting by a root in F_9."""
        base, w = create_base(3)
        F9 = make_field(3, 2)
        target = FunctionField(F9)
        theta = gf_roots([1, 0, 1], F9)[0]

        shifted = (w ** 2 + 1).shift(theta, target)

        self.assertEqual(shifted.valuation(), 1)

    def test_sqrt(self):
        """Test square roots in odd and even characteristic."""
        base, w = create_base()
        x = (w + 1) ** 2 / w ** 2
        root = x.sqrt()

        self.assertEqual(root * root, x)
        self.assertIsNone(w.sqrt())
        base2, w2 = create_base(2)
        self.assertEqual((w2 ** 2 + 1).sqrt(), w2 + 1)
        self.assertIsNone((w2 ** 2 + w2).sqrt())
