"""
Cooperative deadlines for long computations.
"""
import time

from core.exceptions import BudgetExceeded


class Budget:
    """Deadline checked from inside long loops."""

    def __init__(self, seconds=None):
        self.seconds = seconds
        self._deadline = None if seconds is None else time.monotonic() + seconds

    def remaining(self):
        if self._deadline is None:
            return float('inf')
        return self._deadline - time.monotonic()

    def check(self, what=''):
        """Raise BudgetExceeded once the deadline has passed."""
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded(
                f'budget of {self.seconds}s exceeded{" during " + what if what else ""}'
            )


UNLIMITED = Budget()
