"""
Test the build, analyze and reproduce management commands.
"""
import json
import os
import tempfile
from io import StringIO
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.exceptions import DegenerateFibrationError
from core.fields import make_field
from fibration.function_field import FunctionField
from fibration.weierstrass import WeierstrassCurve
from reports.harness import FAIL, PASS, SKIPPED, RowResult


def create_legendre(p=5):
    """Create and return y^2 = x(x - 1)(x - w) over F_p(w)."""
    base = FunctionField(make_field(p))
    w = base.gen
    return WeierstrassCurve(base, 0, -(1 + w), 0, w, 0)


def create_result(status, q=2):
    """Create and return a row result with the given status."""
    expected = {'b2': 10, 'rank_T': 8, 'bad_fibers': 2, 'census': 'III, I_6'}
    return RowResult('1', f'q={q}', status, expected, computed=dict(expected))


class BuildCommandTests(SimpleTestCase):
    """Test the build command."""

    def test_build(self):
        """Test the multidegree and genus bound are echoed."""
        out = StringIO()

        call_command('build', shape='4(0)', q=3, P='1', Q='2', stdout=out)

        self.assertIn('4(0) q=3 over F_3: P=1 Q=2', out.getvalue())
        self.assertIn('multidegree (2, 2, 3)', out.getvalue())
        self.assertIn('pa <= 3', out.getvalue())

    def test_build_writes_surface(self):
        """Test --out writes a loadable surface.json."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'surface.json')

            call_command('build', shape='4(0)', q=3, P='1', Q='2', out=path, stdout=StringIO())

            with open(path, encoding='utf-8') as handle:
                payload = json.load(handle)
        self.assertEqual(payload['shape'], '4(0)')
        self.assertEqual(payload['multidegree'], [2, 2, 3])

    def test_build_json(self):
        """Test --format json prints the payload."""
        out = StringIO()

        call_command('build', shape='4(0)', q=3, P='1', Q='2', format='json', stdout=out)

        self.assertEqual(json.loads(out.getvalue())['P'], [1])

    def test_squarefree_q2(self):
        """Test the squarefree level at q = 2 is a usage error."""
        with self.assertRaises(CommandError) as raised:
            call_command('build', shape='sqfree', q=2, stdout=StringIO())

        self.assertIn('[build]', str(raised.exception))
        self.assertEqual(raised.exception.returncode, 2)

    def test_bad_element(self):
        """Test an unreadable element is a usage error."""
        with self.assertRaises(CommandError):
            call_command('build', shape='4(0)', q=3, P='one', Q='2', stdout=StringIO())


class AnalyzeCommandTests(SimpleTestCase):
    """Test the analyze command."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.surface = os.path.join(self.tmp.name, 'surface.json')
        call_command('build', shape='4(0)', q=5, P='1', Q='2', out=self.surface, stdout=StringIO())

    @patch('reports.pipeline.generic_fiber')
    def test_analyze(self, patched_fiber):
        """Test the table row and report.json."""
        patched_fiber.return_value = create_legendre()
        report = os.path.join(self.tmp.name, 'report.json')
        out = StringIO()

        call_command('analyze', self.surface, out=report, stdout=out)

        self.assertIn('b2=10 rkT=10 #BF=3 (I_2, 1), (I_2, 1), (I_2*, 1)', out.getvalue())
        self.assertIn('genus bound 5', out.getvalue())
        with open(report, encoding='utf-8') as handle:
            payload = json.load(handle)
        self.assertEqual(payload['e'], 12)
        self.assertEqual(payload['genus']['pa'], 1)
        self.assertEqual(payload['singular']['searched'], False)
        self.assertEqual(payload['meta']['shape'], '4(0)')

    @patch('reports.pipeline.generic_fiber')
    def test_degenerate_fibre(self, patched_fiber):
        """Test a vanishing discriminant is reported with its stage and a hint."""
        patched_fiber.side_effect = DegenerateFibrationError('Delta = 0')

        with self.assertRaises(CommandError) as raised:
            call_command('analyze', self.surface, stdout=StringIO())

        self.assertIn('[fibration] Delta = 0', str(raised.exception))
        self.assertIn('different (P, Q)', str(raised.exception))
        self.assertEqual(raised.exception.returncode, 2)

    def test_missing_file(self):
        """Test a missing surface file is a usage error."""
        with self.assertRaises(CommandError):
            call_command('analyze', os.path.join(self.tmp.name, 'none.json'), stdout=StringIO())

    def test_tampered_file(self):
        """Test an edited surface file is rejected."""
        with open(self.surface, encoding='utf-8') as handle:
            payload = json.load(handle)
        payload['q'] = 7
        with open(self.surface, 'w', encoding='utf-8') as handle:
            json.dump(payload, handle)

        with self.assertRaises(CommandError):
            call_command('analyze', self.surface, stdout=StringIO())


class ReproduceCommandTests(SimpleTestCase):
    """Test the reproduce command."""

    def test_skipped_by_estimate(self):
        """Test q = 16 of the first table is skipped under a 60 second budget."""
        out = StringIO()

        call_command('reproduce', table='1', rows='q=16', budget_seconds=60, stdout=out)

        self.assertIn('SKIPPED table 1 q=16', out.getvalue())
        self.assertIn('0 passed, 0 failed, 1 skipped', out.getvalue())

    @patch('reports.harness.run_row')
    def test_pass(self, patched_run):
        """Test passing rows exit normally in fixture order."""
        patched_run.side_effect = [create_result(PASS, 2), create_result(PASS, 3)]
        out = StringIO()

        call_command('reproduce', table='1', rows='q=3,q=2', workers=1, stdout=out)

        lines = out.getvalue().splitlines()
        self.assertIn('PASS    table 1 q=2', lines[0])
        self.assertIn('2 passed, 0 failed, 0 skipped', out.getvalue())
        self.assertEqual([c[0][2]['q'] for c in patched_run.call_args_list], [2, 3])

    @patch('reports.harness.run_row')
    def test_mismatch(self, patched_run):
        """Test a failed row gives exit status 1."""
        patched_run.return_value = create_result(FAIL)

        with self.assertRaises(CommandError) as raised:
            call_command('reproduce', table='1', rows='q=2', stdout=StringIO())

        self.assertEqual(raised.exception.returncode, 1)

    @patch('reports.harness.run_row')
    def test_json(self, patched_run):
        """Test --format json lists the results."""
        patched_run.return_value = create_result(SKIPPED)
        out = StringIO()

        call_command('reproduce', table='1', rows='q=2', format='json', stdout=out)

        payload = json.loads(out.getvalue())
        self.assertEqual(payload['version'], 1)
        self.assertEqual(payload['results'][0]['status'], SKIPPED)
        self.assertEqual(payload['results'][0]['expected']['census'], 'III, I_6')

    def test_unknown_row(self):
        """Test a row the table lacks is a usage error."""
        with self.assertRaises(CommandError) as raised:
            call_command('reproduce', table='1', rows='q=13', stdout=StringIO())

        self.assertEqual(raised.exception.returncode, 2)
