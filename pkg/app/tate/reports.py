"""
Global invariants of an elliptic surface from its local fibres.
"""
import logging
import re
from collections import Counter
from dataclasses import dataclass, field

from core.budget import UNLIMITED
from core.exceptions import NonMinimalModelError
from tate.algorithm import KodairaType, local_fibers

logger = logging.getLogger(__name__)

TOKEN = re.compile(
    r'^\(?\s*(?P<type>[IV_0-9*]+)\s*(?:,\s*(?P<degree>\d+)\s*)?\)?\s*(?:[×x]\s*(?P<times>\d+))?$'
)


def _census_key(symbol):
    kodaira = KodairaType.parse(symbol)
    # additive names first, then I_n* and I_n by n
    if kodaira.name != 'I':
        return (0, -kodaira.components)
    return (1 if kodaira.star else 2, kodaira.n)


def split_types(text):
    """Split a types cell at the commas outside parentheses."""
    tokens, depth, current = [], 0, ''
    for char in text:
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        if char == ',' and depth == 0:
            tokens.append(current.strip())
            current = ''
        else:
            current += char
    if current.strip():
        tokens.append(current.strip())
    return tokens


def parse_types(text):
    """Closure census of a types cell.

    Accepts '(III, 1), (I_6, 1)', '(I_1, 3) × 2' and 'II×2, I_6, I_10':
    a place of degree n counts n times, a repetition m times more.
    """
    census = Counter()
    for token in split_types(text):
        match = TOKEN.match(token)
        if match is None:
            raise ValueError(f'cannot read {token!r}')
        symbol = str(KodairaType.parse(match.group('type')))
        census[symbol] += int(match.group('degree') or 1) * int(match.group('times') or 1)
    return census


def census_items(census):
    """(symbol, count) pairs in census order."""
    return [(symbol, census[symbol]) for symbol in sorted(census, key=_census_key)]


def format_census(census):
    """'II×2, I_6, I_10' with the count omitted when it is one."""
    parts = []
    for symbol, count in census_items(census):
        parts.append(symbol if count == 1 else f'{symbol}×{count}')
    return ', '.join(parts)


def surface_kind(pa):
    if pa == 1:
        return 'rational'
    if pa == 2:
        return 'K3'
    return 'honestly elliptic'


@dataclass
class SurfaceReport:
    """Invariants of one analyzed surface."""

    e: int
    pa: int
    b2: int
    rank_T: int
    fibers: list
    meta: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def kind(self):
        return surface_kind(self.pa)

    @property
    def bad_fiber_count(self):
        """Singular fibres over the algebraic closure."""
        return sum(f.degree for f in self.fibers)

    @property
    def closure_census(self):
        census = Counter()
        for f in self.fibers:
            census[str(f.kodaira)] += f.degree
        return census

    def types_row(self):
        """Types column with place degrees, e.g. '(III, 1), (I_6, 1)'."""
        return ', '.join(f'({f.kodaira}, {f.degree})' for f in self.fibers)

    def table_row(self):
        return (
            f'b2={self.b2} rkT={self.rank_T} #BF={self.bad_fiber_count} '
            f'{self.types_row()}'
        )

    def signature(self):
        """The data compared against a table row."""
        return {
            'b2': self.b2,
            'rank_T': self.rank_T,
            'bad_fibers': self.bad_fiber_count,
            'census': format_census(self.closure_census),
        }


def analyze_surface(E, meta=None, budget=UNLIMITED, fibers=None):
    """SurfaceReport of the elliptic surface with generic fibre E.

    ``fibers`` may carry the output of local_fibers when it was computed
    separately.
    """
    if fibers is None:
        fibers = local_fibers(E, budget)
    e = sum(f.ord_delta * f.degree for f in fibers)
    if e % 12:
        raise NonMinimalModelError(f'Euler number {e} is not divisible by 12')
    rank_T = 2 + sum(f.degree * (f.components - 1) for f in fibers)
    flags = []
    if not fibers:
        flags.append('no bad fibres')
        logger.warning('%s has no singular fibre', E)
    report = SurfaceReport(e, e // 12, e - 2, rank_T, fibers, dict(meta or {}), flags)
    logger.info('analyzed %s: %s', report.meta.get('shape', E), report.table_row())
    return report
