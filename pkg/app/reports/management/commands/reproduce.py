"""
Django command to check the analysis against the invariant tables.
"""
import json

from django.core.management.base import BaseCommand, CommandError
from rest_framework.serializers import ValidationError

from moduli.serializers import VERSION
from reports.harness import FAIL, PASS, SKIPPED, exit_status, load_fixtures, reproduce
from reports.serializers import RowResultSerializer


class Command(BaseCommand):
    """Django command to reproduce the rows of one table."""

    help = 'Build and analyze the rows of a table and diff them against the fixtures.'

    def add_arguments(self, parser):
        parser.add_argument('--table', required=True, choices=['1', '2', '3', '4', '5'])
        parser.add_argument('--rows', help="comma separated, e.g. 'q=2,q=3'")
        parser.add_argument('--trials', help="a count, or pairs 'P:Q P:Q'")
        parser.add_argument('--budget-seconds', type=float)
        parser.add_argument('--deg-bound', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--fixtures')
        parser.add_argument('--out')
        parser.add_argument('--format', choices=['json', 'text'], default='text')

    def handle(self, *args, **options):
        """Entrypoint for command."""
        try:
            fixtures = load_fixtures(options['fixtures'])
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f'cannot read the fixtures: {exc}', returncode=2)
        except ValidationError as exc:
            raise CommandError(f'invalid fixtures: {exc.detail}', returncode=2)
        try:
            results = reproduce(
                options['table'],
                rows=options['rows'],
                trials=options['trials'],
                budget_seconds=options['budget_seconds'],
                deg_bound=options['deg_bound'],
                workers=options['workers'],
                fixtures=fixtures,
            )
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2)

        payload = {
            'version': VERSION,
            'table': options['table'],
            'results': [RowResultSerializer(r.to_dict()).data for r in results],
        }
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as handle:
                json.dump(payload, handle, indent=2)
        if options['format'] == 'json':
            self.stdout.write(json.dumps(payload, indent=2))
        else:
            styles = {PASS: self.style.SUCCESS, FAIL: self.style.ERROR, SKIPPED: self.style.WARNING}
            for result in results:
                self.stdout.write(styles[result.status](result.to_text()))
            counts = {status: sum(r.status == status for r in results) for status in styles}
            self.stdout.write(
                f'{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped'
            )
        if exit_status(results):
            raise CommandError(f'table {options["table"]}: mismatch', returncode=1)
