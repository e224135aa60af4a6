"""
End to end reproduction of the small table rows, without stand-ins.
"""
from django.test import SimpleTestCase

from moduli.geometry import known_singular_candidates, search_singular_points, verify_singular_points
from reports.harness import PASS, load_fixtures, row_specializations, run_row, select_rows
from reports.pipeline import build


class TableRowTests(SimpleTestCase):
    """Test rows with q <= 3 reproduce exactly."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixtures = load_fixtures()

    def assert_rows_pass(self, table_id, q, part=None):
        """Run every selected row and check it passes."""
        rows = [
            (table, row) for table, row in select_rows(self.fixtures, table_id, {q})
            if part is None or row.get('part') == part
        ]
        self.assertTrue(rows)
        for table, row in rows:
            result = run_row(self.fixtures, table, row, budget_seconds=600)

            self.assertEqual(result.status, PASS, result.to_text())
            self.assertEqual(result.computed, result.expected)
        return result

    def test_table1(self):
        """Test 4(0) at q = 2 and q = 3."""
        self.assert_rows_pass(1, 2)
        self.assert_rows_pass(1, 3)

    def test_table2(self):
        """Test 2(0)+2inf at q = 2 and q = 3."""
        self.assert_rows_pass(2, 2)
        self.assert_rows_pass(2, 3)

    def test_table3(self):
        """Test 3(0)+inf at q = 3 with (P, Q) = (1, 2)."""
        result = self.assert_rows_pass(3, 3, part=1)

        self.assertEqual(result.trials[0]['P'], '1')
        self.assertEqual(result.trials[0]['Q'], '2')

    def test_table4(self):
        """Test 2(0)+(1)+inf at q = 3 with (P, Q) = (2, alpha_9)."""
        self.assert_rows_pass(4, 3)

    def test_table5(self):
        """Test the squarefree level at q = 3 with (P, Q) = (alpha_9, alpha_9^2)."""
        self.assert_rows_pass(5, 3)


class SingularLocusTests(SimpleTestCase):
    """Test the singular points of the small surfaces."""

    def test_table2_q2_is_smooth(self):
        """Test the 2(0)+2inf surface at q = 2 has no singular point up to degree 3."""
        surface = build('2(0)+2inf', 2)

        result = search_singular_points(surface, max_ext=3)

        self.assertTrue(result.is_empty)
        self.assertEqual(set(result.counts.values()), {0})

    def test_table4_and_table5_listed_points(self):
        """Test the eight listed points of the q = 3 rows of tables 4 and 5 are all singular."""
        fixtures = load_fixtures()
        for table_id in (4, 5):
            table, row = select_rows(fixtures, table_id, {3})[0]
            (P, Q), = row_specializations(fixtures, table, row, None)
            surface = build(table['shape'], 3, P, Q)

            reports = verify_singular_points(surface, known_singular_candidates(surface))

            self.assertEqual(len(reports), 8)
            self.assertTrue(all(r.is_singular for r in reports), table_id)
