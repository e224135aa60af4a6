"""
Tests for compute budgets.
"""
from unittest.mock import patch

from django.test import SimpleTestCase

from core.budget import UNLIMITED, Budget
from core.exceptions import BudgetExceeded


class BudgetTests(SimpleTestCase):
    """Test cooperative deadlines."""

    def test_unlimited(self):
        """Test the unlimited budget never raises."""
        UNLIMITED.check('anything')

        self.assertEqual(UNLIMITED.remaining(), float('inf'))

    @patch('core.budget.time.monotonic')
    def test_deadline(self, patched_clock):
        """Test check raises once the clock passes the deadline."""
        patched_clock.return_value = 100.0
        budget = Budget(5)
        budget.check()

        patched_clock.return_value = 106.0

        with self.assertRaises(BudgetExceeded) as raised:
            budget.check('Tate loop')
        self.assertIn('Tate loop', str(raised.exception))
        self.assertLess(budget.remaining(), 0)
