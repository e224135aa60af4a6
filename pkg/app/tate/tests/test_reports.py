"""
Tests for the global invariants and report.json.
"""
import random
from collections import Counter
from unittest.mock import patch

from django.test import SimpleTestCase
from rest_framework.serializers import ValidationError

from core.exceptions import NonMinimalModelError
from core.fields import make_field
from core.polys import Place
from fibration.function_field import FunctionField
from fibration.weierstrass import WeierstrassCurve
from tate.algorithm import KodairaFiber, KodairaType
from tate.reports import (
    analyze_surface,
    format_census,
    parse_types,
    split_types,
    surface_kind,
)
from tate.serializers import load_report, report_to_dict


def create_legendre(p=5):
    """Create and return y^2 = x(x - 1)(x - w) over F_p(w)."""
    base = FunctionField(make_field(p))
    w = base.gen
    return WeierstrassCurve(base, 0, -(1 + w), 0, w, 0)


def create_short_curve(rng, p):
    """Create and return y^2 = x^3 + a4 x + a6 with a4, a6 of degree at most one."""
    base = FunctionField(make_field(p))
    a4 = base([rng.randrange(p) for _ in range(2)])
    a6 = base([rng.randrange(p) for _ in range(2)])
    return WeierstrassCurve(base, 0, 0, 0, a4, a6)


class CensusTests(SimpleTestCase):
    """Test reading and writing types cells."""

    def test_split(self):
        """Test commas inside parentheses are kept."""
        self.assertEqual(split_types('(III, 1), (I_6, 1)'), ['(III, 1)', '(I_6, 1)'])

    def test_parse_with_degrees(self):
        """Test '(K, n)' counts a place of degree n n times."""
        census = parse_types('(I_4*,1),(I_8,1),(I_1,3),(I_1,3)')

        self.assertEqual(census, Counter({'I_4*': 1, 'I_8': 1, 'I_1': 6}))

    def test_parse_repetitions(self):
        """Test both repetition spellings."""
        self.assertEqual(parse_types('(I_1, 7) × 2'), Counter({'I_1': 14}))
        self.assertEqual(
            parse_types('II×2, I_6, I_10'), Counter({'II': 2, 'I_6': 1, 'I_10': 1})
        )
        self.assertEqual(parse_types('(I_12, 1), (I_28, 1), (I_1, 10), (I_1, 10)')['I_1'], 20)

    def test_parse_invalid(self):
        """Test unreadable tokens raise."""
        with self.assertRaises(ValueError):
            parse_types('(I_6; 1)')

    def test_format(self):
        """Test additive types come first and counts of one are omitted."""
        census = Counter({'I_1': 12, 'I_16': 1, 'I_8': 1, 'II': 2, 'I_2*': 1})

        self.assertEqual(format_census(census), 'II×2, I_2*, I_1×12, I_8, I_16')

    def test_format_is_order_free(self):
        """Test the same census in two spellings formats the same way."""
        self.assertEqual(
            format_census(parse_types('(I_8, 1), (I_16, 1), (I_1, 6), (I_1, 6)')),
            format_census(parse_types('I_8, I_16, I_1×12')),
        )

    def test_kind(self):
        """Test the classification by arithmetic genus."""
        self.assertEqual(surface_kind(1), 'rational')
        self.assertEqual(surface_kind(2), 'K3')
        self.assertEqual(surface_kind(5), 'honestly elliptic')


class AnalyzeSurfaceTests(SimpleTestCase):
    """Test the global invariants."""

    def test_legendre(self):
        """Test the Legendre surface is rational with I_2, I_2, I_2*."""
        report = analyze_surface(create_legendre(), {'shape': 'legendre'})

        self.assertEqual(report.e, 12)
        self.assertEqual(report.pa, 1)
        self.assertEqual(report.b2, 10)
        self.assertEqual(report.rank_T, 10)
        self.assertEqual(report.bad_fiber_count, 3)
        self.assertEqual(report.kind, 'rational')
        self.assertEqual(report.closure_census, Counter({'I_2': 2, 'I_2*': 1}))
        self.assertEqual(report.types_row(), '(I_2, 1), (I_2, 1), (I_2*, 1)')
        self.assertEqual(report.table_row(), 'b2=10 rkT=10 #BF=3 (I_2, 1), (I_2, 1), (I_2*, 1)')

    def test_invariant_identities(self):
        """Test 12 | e, b2 = e - 2 and the rank_T census identity on random curves."""
        rng = random.Random(5)
        checked = 0
        for p in (5, 7):
            for _ in range(6):
                E = create_short_curve(rng, p)
                if E.is_singular():
                    continue
                report = analyze_surface(E)
                self.assertEqual(report.e % 12, 0)
                self.assertEqual(report.e, 12 * report.pa)
                self.assertEqual(report.b2, report.e - 2)
                self.assertEqual(
                    report.rank_T,
                    2 + sum(f.degree * (f.components - 1) for f in report.fibers),
                )
                checked += 1

        self.assertGreater(checked, 0)

    def test_constant_curve_flagged(self):
        """Test a curve without bad fibres is flagged."""
        base = FunctionField(make_field(7))
        report = analyze_surface(WeierstrassCurve(base, 0, 0, 0, 1, 1))

        self.assertEqual(report.e, 0)
        self.assertEqual(report.fibers, [])
        self.assertIn('no bad fibres', report.flags)

    @patch('tate.reports.local_fibers')
    def test_non_minimal_detected(self, patched_fibers):
        """Test an Euler number prime to 12 raises."""
        K = make_field(5)
        patched_fibers.return_value = [KodairaFiber(Place.infinity(K), KodairaType('I', 5), 5)]

        with self.assertRaises(NonMinimalModelError):
            analyze_surface(create_legendre())


class ReportSerializerTests(SimpleTestCase):
    """Test report.json."""

    def test_round_trip(self):
        """Test a report validates after serialization."""
        payload = report_to_dict(analyze_surface(create_legendre(), {'shape': 'legendre'}))

        data = load_report(payload)

        self.assertEqual(data['e'], 12)
        self.assertEqual(
            payload['closure_census'], [{'type': 'I_2*', 'count': 1}, {'type': 'I_2', 'count': 2}]
        )
        self.assertEqual(payload['fibers'][2], {
            'place': 'inf', 'degree': 1, 'type': 'I_2*', 'ordDelta': 8, 'mv': 7,
        })

    def test_inconsistent_rank(self):
        """Test a tampered rank_T is rejected."""
        payload = report_to_dict(analyze_surface(create_legendre()))
        payload['rank_T'] += 1

        with self.assertRaises(ValidationError):
            load_report(payload)

    def test_wrong_components(self):
        """Test a fibre with the wrong component count is rejected."""
        payload = report_to_dict(analyze_surface(create_legendre()))
        payload['fibers'][0]['mv'] = 3

        with self.assertRaises(ValidationError):
            load_report(payload)
