"""
Tests for the build and analyze stages.
"""
from unittest.mock import patch

from django.test import SimpleTestCase

from core.exceptions import (
    DegenerateFibrationError,
    FieldError,
    NoPointFound,
    PipelineError,
    ShapeError,
)
from core.fields import make_field
from fibration.function_field import FunctionField
from fibration.weierstrass import WeierstrassCurve
from reports.pipeline import (
    advice,
    analyze,
    build,
    common_specialization,
    conway_element,
    parse_element,
    stage,
    surface_meta,
    trial_pairs,
)


def create_legendre(p=5):
    """Create and return y^2 = x(x - 1)(x - w) over F_p(w)."""
    base = FunctionField(make_field(p))
    w = base.gen
    return WeierstrassCurve(base, 0, -(1 + w), 0, w, 0)


class ElementTests(SimpleTestCase):
    """Test reading --P/--Q/--R values."""

    def test_integer(self):
        """Test an integer is read in the prime field."""
        code, K = parse_element('3', 5)

        self.assertEqual(code, 3)
        self.assertEqual(K, make_field(5))

    def test_vector(self):
        """Test a coefficient vector selects F_{p^k}."""
        code, K = parse_element('[0,1]', 2)

        self.assertEqual(K.q, 4)
        self.assertEqual(code, 2)

    def test_alpha_power(self):
        """Test alpha_r^e is a power of the Conway generator 2 + 2 t of F_9."""
        code, K = parse_element('alpha_9^2', 3)

        self.assertEqual(K.q, 9)
        self.assertEqual(code, K.pow(8, 2))

    def test_alpha_matches_fixture_rows(self):
        """Test alpha_r agrees with the Conway entries of the tables."""
        self.assertEqual(parse_element('alpha_9', 3), conway_element({'9': [2, 2]}, 9, 1, 3))
        self.assertEqual(parse_element('alpha_25', 5)[0], make_field(5, 2).from_vector([3, 3]))

    def test_alpha_given_generators(self):
        """Test explicit generators replace the bundled ones."""
        code, K = parse_element('alpha_9^-1', 3, {'9': [0, 1]})

        self.assertEqual(code, K.inv(K.from_vector([0, 1])))
        with self.assertRaises(FieldError):
            parse_element('alpha_27', 3, {'9': [2, 2]})

    def test_wrong_characteristic(self):
        """Test alpha_8 is rejected in characteristic 3."""
        with self.assertRaises(FieldError):
            parse_element('alpha_8', 3)

    def test_unreadable(self):
        """Test garbage and out of range vectors raise."""
        with self.assertRaises(FieldError):
            parse_element('x', 3)
        with self.assertRaises(FieldError):
            parse_element('[0,3]', 3)

    def test_conway_element(self):
        """Test the Conway generator of F_9 is stored as 2 + 2 t."""
        code, K = conway_element({'9': [2, 2]}, 9, 1, 3)

        self.assertEqual(K.q, 9)
        self.assertEqual(code, 8)

    def test_common_specialization(self):
        """Test elements of F_2 and F_4 meet in F_4."""
        F4 = make_field(2, 2)

        F, codes = common_specialization(2, (1, make_field(2)), (2, F4), None)

        self.assertEqual(F, F4)
        self.assertEqual(codes, [1, 2, None])


class BuildTests(SimpleTestCase):
    """Test the build stage."""

    def test_trial_pairs_prefer_base_field(self):
        """Test F_3 has the pairs (1, 2) and (2, 1) off the support of 4(0)."""
        found = trial_pairs('4(0)', 3, 1)

        self.assertEqual(len(found), 1)
        P, Q, R, F = found[0]
        self.assertEqual((P, Q, R), (1, 2, None))
        self.assertEqual(F, make_field(3))

    def test_trial_pairs_extend(self):
        """Test F_2 has no pair off the support of 4(0)."""
        for P, Q, R, F in trial_pairs('4(0)', 2, 2):
            self.assertEqual(F.p, 2)
            self.assertGreater(F.k, 1)
            self.assertNotEqual(P, Q)

    def test_trial_pairs_continue_into_extensions(self):
        """Test the trials of 2(0)+2inf at q = 3 go on to new pairs over F_9."""
        F3, F9 = make_field(3), make_field(3, 2)

        found = trial_pairs('2(0)+2inf', 3, 4)

        self.assertLessEqual(len(found), 4)
        self.assertEqual([F for *_, F in found[:2]], [F3, F3])
        self.assertIn(F9, [F for *_, F in found])
        for P, Q, R, F in found:
            if F == F9:
                self.assertFalse(F9.subfield_degree(P) == 1 and F9.subfield_degree(Q) == 1)

    def test_build_given_pair(self):
        """Test 4(0) at q = 3 has multidegree (2, 2, 3)."""
        surface = build('4(0)', 3, (1, make_field(3)), (2, make_field(3)))

        self.assertEqual(surface.multidegree, (2, 2, 3))
        self.assertEqual(surface_meta(surface), {
            'shape': '4(0)', 'q': 3, 'field': 'F_3', 'P': '1', 'Q': '2',
        })

    def test_build_default_pair(self):
        """Test omitted P and Q select the first admissible pair."""
        surface = build('4(0)', 2)

        self.assertEqual(surface.multidegree, (2, 2, 2))
        self.assertGreater(surface.field.k, 1)

    def test_squarefree_q2(self):
        """Test the squarefree level at q = 2 fails in the build stage."""
        with self.assertRaises(PipelineError) as raised:
            build('sqfree', 2)

        self.assertEqual(raised.exception.stage, 'build')
        self.assertIsInstance(raised.exception.error, ShapeError)

    def test_lone_pole(self):
        """Test P without Q is rejected."""
        with self.assertRaises(PipelineError):
            build('4(0)', 3, (1, make_field(3)))


class StageTests(SimpleTestCase):
    """Test stage labels."""

    def test_label(self):
        """Test a domain error is wrapped with its stage."""
        with self.assertRaises(PipelineError) as raised:
            with stage('tate'):
                raise DegenerateFibrationError('Delta = 0')

        self.assertEqual(str(raised.exception), '[tate] Delta = 0')
        self.assertTrue(advice(raised.exception))

    def test_other_errors_pass(self):
        """Test errors outside the domain are not wrapped."""
        with self.assertRaises(TypeError):
            with stage('report'):
                raise TypeError('bug')

    def test_no_advice(self):
        """Test a non degenerate error has no hint."""
        self.assertEqual(advice(PipelineError('build', ShapeError('unknown shape'))), '')


@patch('reports.pipeline.generic_fiber')
class AnalyzeTests(SimpleTestCase):
    """Test the analyze stages with a known generic fibre."""

    def test_report(self, patched_fiber):
        """Test the report, genus and singular entries of an analysis."""
        patched_fiber.return_value = create_legendre()
        surface = build('4(0)', 5, (1, make_field(5)), (2, make_field(5)))

        analysis = analyze(surface)

        self.assertEqual(analysis.report.table_row(), 'b2=10 rkT=10 #BF=3 (I_2, 1), (I_2, 1), (I_2*, 1)')
        self.assertEqual(analysis.report.meta['shape'], '4(0)')
        self.assertEqual(analysis.genus, {'genus_bound': 5, 'genus_bound_exact': False, 'pa': 1})
        self.assertEqual(analysis.singular.to_dict(), {'candidates': 0, 'confirmed': 0, 'searched': False})
        self.assertIs(patched_fiber.call_args[0][0], surface)

    def test_fibration_failure(self, patched_fiber):
        """Test a missing section is reported by the fibration stage."""
        patched_fiber.side_effect = NoPointFound('no section')
        surface = build('4(0)', 5, (1, make_field(5)), (2, make_field(5)))

        with self.assertRaises(PipelineError) as raised:
            analyze(surface)

        self.assertEqual(raised.exception.stage, 'fibration')
        self.assertIn('different (P, Q)', advice(raised.exception))
