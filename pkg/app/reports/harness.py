"""
Regression of the analysis against the transcribed invariant tables.

Each row is built and analyzed under its own Budget, in a thread pool;
results are collected in fixture order so the output of a run only depends
on the fixtures, the trial list and the budget.
"""
import difflib
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

from core.budget import Budget
from core.conf import shtuka_setting
from core.exceptions import BudgetExceeded, PipelineError
from core.fields import prime_power
from moduli.shapes import parse_shape
from reports.pipeline import (
    RETRYABLE,
    analyze,
    build,
    common_specialization,
    conway_element,
    parse_element,
    stage,
    trial_pairs,
)
from reports.serializers import load_fixtures
from tate.reports import format_census, parse_types

logger = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = 'PASS', 'FAIL', 'SKIPPED'

ROW_PATTERN = re.compile(r'^q\s*=\s*(\d+)$')


def estimate_cost(shape, q, s):
    """Rough running time in seconds of building and analyzing one surface
    at Frobenius q over F_s.

    Dominated by factoring the discriminant, of degree about twelve times
    the w-degree of the surface, over F_s.
    """
    degree = 12 * parse_shape(str(shape)).w_degree(q)
    return degree ** 3 * s * 1e-6


def parse_rows(text):
    """Set of q values from 'q=2,q=3', or None for every row."""
    if not text:
        return None
    wanted = set()
    for token in text.split(','):
        match = ROW_PATTERN.match(token.strip())
        if match is None:
            raise ValueError(f'cannot read the row selector {token!r}')
        wanted.add(int(match.group(1)))
    return wanted


def parse_trials(text, q, conway=None):
    """Trial pairs from 'P:Q P:Q ...' as ((code, field), (code, field)), or a count.

    alpha_r is read through the Conway generators ``conway`` (default: the
    bundled fixtures).
    """
    text = (text or '').strip()
    if not text:
        return None
    if text.isdigit():
        return int(text)
    pairs = []
    for token in re.split(r'[;\s]+', text):
        if ':' not in token:
            raise ValueError(f'trial {token!r} is not of the form P:Q')
        P, Q = token.split(':', 1)
        pairs.append((parse_element(P, q, conway), parse_element(Q, q, conway)))
    return pairs


def signature_lines(signature):
    return [
        f'b2={signature["b2"]}',
        f'rank_T={signature["rank_T"]}',
        f'#BF={signature["bad_fibers"]}',
        f'census={signature["census"]}',
    ]


def expected_signature(row):
    return {
        'b2': row['b2'],
        'rank_T': row['rank_T'],
        'bad_fibers': row['bad_fibers'],
        'census': format_census(parse_types(row['types'])),
    }


def conjecture_note(table, q, computed):
    """Agreement of the computed row with the table's closed formulas."""
    parity = 'even' if q % 2 == 0 else 'odd'
    for conjecture in table.get('conjectures', []):
        if conjecture['parity'] != parity or q < conjecture['min_q']:
            continue
        predicted = {
            key: conjecture[key][0] * q + conjecture[key][1]
            for key in ('b2', 'rank_T', 'bad_fibers')
            if key in conjecture
        }
        if computed is None:
            return f'conjecture ({parity} q) predicts {predicted}'
        agrees = all(computed[key] == value for key, value in predicted.items())
        return f'conjecture ({parity} q): {"agrees" if agrees else "differs"}'
    return ''


@dataclass
class RowResult:
    table: str
    row: str
    status: str
    expected: dict
    computed: dict = None
    trials: list = dataclass_field(default_factory=list)
    diff: str = ''
    reason: str = ''
    conjecture: str = ''

    def to_dict(self):
        return {
            'table': self.table,
            'row': self.row,
            'status': self.status,
            'expected': self.expected,
            'computed': self.computed,
            'trials': self.trials,
            'diff': self.diff,
            'reason': self.reason,
            'conjecture': self.conjecture,
        }

    def to_text(self):
        lines = [f'{self.status:<8}table {self.table} {self.row}']
        if self.computed is not None:
            lines.append('        ' + ' '.join(signature_lines(self.computed)))
        if self.reason:
            lines.append(f'        {self.reason}')
        if self.conjecture:
            lines.append(f'        {self.conjecture}')
        if self.diff:
            lines.extend('        ' + line for line in self.diff.splitlines())
        return '\n'.join(lines)


def row_specializations(fixtures, table, row, trials):
    """(P, Q) pairs of (code, field) to try for a row; None means enumeration."""
    if not row['generic']:
        p, _ = prime_power(row['q'])
        return [tuple(_fixture_element(fixtures, row[label], p) for label in ('P', 'Q'))]
    if isinstance(trials, list):
        return trials
    return None


def is_best_effort(table, row):
    """True for rows reported SKIPPED rather than FAIL when they do not match:
    q >= 7, and the characteristic 2 rows of table 3 part 1 whose P or Q lies
    in a proper extension of F_q."""
    if row['q'] >= 7:
        return True
    return (
        table['id'] == '3' and row.get('part') == 1 and row['q'] % 2 == 0
        and any(
            isinstance(row.get(label), dict) and row[label]['conway'] > row['q']
            for label in ('P', 'Q')
        )
    )


def _fixture_element(fixtures, value, p):
    if isinstance(value, dict):
        return conway_element(fixtures['conway'], value['conway'], value['power'], p)
    return parse_element(value, p, fixtures['conway'])


def _candidates(table, row, pairs, count):
    """(P, Q) to build, each a (code, field) pair."""
    if pairs is not None:
        return list(pairs)
    with stage('build', shape=table['shape'], q=row['q']):
        found = trial_pairs(table['shape'], row['q'], count)
    return [((P, F), (Q, F)) for P, Q, _, F in found]


def _compare(table, row, analysis, expected):
    computed = analysis.report.signature()
    if computed == expected:
        return PASS, computed, ''
    diff = difflib.unified_diff(
        signature_lines(expected),
        signature_lines(computed),
        fromfile=f'table {table["id"]} q={row["q"]}',
        tofile=f'computed {analysis.report.meta}',
        lineterm='',
    )
    return FAIL, computed, '\n'.join(diff)


def run_row(fixtures, table, row, trials=None, budget_seconds=None, deg_bound=None):
    """RowResult of one fixture row."""
    q = row['q']
    label = f'q={q}' + (f' (part {row["part"]})' if 'part' in row else '')
    expected = expected_signature(row)
    result = RowResult(table['id'], label, SKIPPED, expected)
    budget_seconds = budget_seconds or shtuka_setting('BUDGET_SECONDS')
    count = trials if isinstance(trials, int) else shtuka_setting('TRIALS')
    try:
        with stage('build', table=table['id'], q=q):
            pairs = row_specializations(fixtures, table, row, trials)
            s = q
            if pairs is not None:
                s = common_specialization(q, *(x for pair in pairs for x in pair))[0].q
        cost = estimate_cost(table['shape'], q, s)
        if cost > budget_seconds:
            result.reason = f'estimated {cost:.0f}s exceeds the budget of {budget_seconds:.0f}s'
            result.conjecture = conjecture_note(table, q, None)
            return result
        budget = Budget(budget_seconds)
        failed = None
        for P, Q in _candidates(table, row, pairs, count):
            trial = {'P': P[1].format(P[0]), 'Q': Q[1].format(Q[0]), 'field': f'F_{P[1].q}'}
            try:
                surface = build(table['shape'], q, P, Q)
                trial['field'] = f'F_{surface.field.q}'
                analysis = analyze(surface, deg_bound, budget=budget)
            except PipelineError as exc:
                if not row['generic'] or not isinstance(exc.error, RETRYABLE):
                    raise
                trial['outcome'] = str(exc)
                result.trials.append(trial)
                continue
            status, computed, diff = _compare(table, row, analysis, expected)
            trial['outcome'] = status
            result.trials.append(trial)
            if status == PASS:
                result.status, result.computed, result.diff = PASS, computed, ''
                break
            if failed is None:
                failed = (computed, diff)
        else:
            result.status = FAIL
            if failed is None:
                result.reason = 'every trial specialization degenerated'
            else:
                result.computed, result.diff = failed
    except BudgetExceeded as exc:
        result.status = SKIPPED
        result.reason = str(exc)
    except PipelineError as exc:
        result.status = FAIL
        result.reason = str(exc)
    if result.status == FAIL and is_best_effort(table, row):
        logger.warning('table %s %s: best-effort row did not match', table['id'], label)
        result.status = SKIPPED
        result.reason = f'best-effort row: {result.reason or "computed signature differs"}'
    result.conjecture = conjecture_note(table, q, result.computed)
    logger.info('table %s %s: %s', table['id'], label, result.status)
    return result


def select_rows(fixtures, table_id, wanted=None):
    """(table, row) pairs of a table in fixture order."""
    tables = [t for t in fixtures['tables'] if t['id'] == str(table_id)]
    if not tables:
        raise ValueError(f'unknown table {table_id!r}')
    table = tables[0]
    rows = [(table, row) for row in table['rows'] if wanted is None or row['q'] in wanted]
    if wanted is not None:
        missing = wanted - {row['q'] for _, row in rows}
        if missing:
            raise ValueError(f'table {table_id} has no rows q={sorted(missing)}')
    return rows


def reproduce(table_id, rows=None, trials=None, budget_seconds=None, deg_bound=None,
              workers=None, fixtures=None):
    """RowResults of the selected rows of one table, in fixture order."""
    fixtures = fixtures or load_fixtures()
    selected = select_rows(fixtures, table_id, parse_rows(rows) if isinstance(rows, str) else rows)
    workers = workers or shtuka_setting('WORKERS')
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(
                run_row, fixtures, table, row,
                parse_trials(trials, row['q'], fixtures['conway'])
                if isinstance(trials, str) else trials,
                budget_seconds, deg_bound,
            )
            for table, row in selected
        ]
        return [future.result() for future in futures]


def exit_status(results):
    """0 when nothing failed, 1 on any mismatch."""
    return 1 if any(r.status == FAIL for r in results) else 0
