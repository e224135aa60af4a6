"""
Django command to analyze a surface written by ``build``.
"""
import json

from django.core.management.base import BaseCommand, CommandError
from rest_framework.serializers import ValidationError

from core.budget import Budget
from core.conf import shtuka_setting
from core.exceptions import BudgetExceeded, PipelineError
from fibration.serializers import curve_to_dict
from moduli.serializers import VERSION, load_surface
from reports.pipeline import advice, analyze
from tate.serializers import report_to_dict


def analysis_to_dict(analysis):
    """report.json for a degree four surface, or the smoothness verdict of a level."""
    if analysis.report is None:
        surface = analysis.surface
        return {
            'version': VERSION,
            'shape': surface.shape.name,
            'q': surface.q,
            'smooth': analysis.smooth,
        }
    payload = report_to_dict(analysis.report)
    payload['genus'] = analysis.genus
    payload['singular'] = analysis.singular.to_dict()
    payload['curve'] = curve_to_dict(analysis.curve)
    return payload


class Command(BaseCommand):
    """Django command to compute the invariants of a surface."""

    help = 'Run the singular, fibration, tate and report stages on surface.json.'

    def add_arguments(self, parser):
        parser.add_argument('surface')
        parser.add_argument('--deg-bound', type=int)
        parser.add_argument('--sing-ext', type=int)
        parser.add_argument('--budget-seconds', type=float)
        parser.add_argument('--out')
        parser.add_argument('--format', choices=['json', 'text'], default='text')

    def handle(self, *args, **options):
        """Entrypoint for command."""
        try:
            with open(options['surface'], encoding='utf-8') as handle:
                surface = load_surface(json.load(handle))
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f'cannot read {options["surface"]}: {exc}', returncode=2)
        except ValidationError as exc:
            raise CommandError(f'invalid surface file: {exc.detail}', returncode=2)

        budget = Budget(options['budget_seconds'] or shtuka_setting('BUDGET_SECONDS'))
        try:
            analysis = analyze(surface, options['deg_bound'], options['sing_ext'], budget)
        except PipelineError as exc:
            hint = advice(exc)
            raise CommandError(f'{exc}{"; " + hint if hint else ""}', returncode=2)
        except BudgetExceeded as exc:
            raise CommandError(str(exc), returncode=2)

        payload = analysis_to_dict(analysis)
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as handle:
                json.dump(payload, handle, indent=2)
        if options['format'] == 'json':
            self.stdout.write(json.dumps(payload, indent=2))
            return
        if analysis.report is None:
            verdict = 'smooth' if analysis.smooth else 'singular'
            self.stdout.write(f'{surface.shape.name} q={surface.q}: projective closure is {verdict}')
            return
        report = analysis.report
        self.stdout.write(report.table_row())
        self.stdout.write(f'e={report.e} pa={report.pa} ({report.kind})')
        genus = analysis.genus
        self.stdout.write(
            f'genus bound {genus["genus_bound"]}'
            + (' (attained)' if genus['genus_bound_exact'] else '')
        )
        for flag in report.flags:
            self.stdout.write(self.style.WARNING(flag))
        if options['out']:
            self.stdout.write(self.style.SUCCESS(f'Wrote {options["out"]}'))
