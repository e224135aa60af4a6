"""
Django command to build the equations of a moduli surface.
"""
import json

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import PipelineError
from moduli.geometry import genus_upper_bound
from moduli.serializers import surface_to_dict
from reports.pipeline import advice, build, parse_element


class Command(BaseCommand):
    """Django command to write surface.json for a level and a specialization."""

    help = 'Build the equations of Sht(N) at Frobenius q.'

    def add_arguments(self, parser):
        parser.add_argument('--shape', required=True)
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--P')
        parser.add_argument('--Q')
        parser.add_argument('--R')
        parser.add_argument('--out')
        parser.add_argument('--format', choices=['json', 'text'], default='text')

    def handle(self, *args, **options):
        """Entrypoint for command."""
        q = options['q']
        try:
            P, Q, R = (
                None if options[label] is None else parse_element(options[label], q)
                for label in ('P', 'Q', 'R')
            )
            surface = build(options['shape'], q, P, Q, R)
        except PipelineError as exc:
            hint = advice(exc)
            raise CommandError(f'{exc}{"; " + hint if hint else ""}', returncode=2)
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2)

        payload = surface_to_dict(surface)
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as handle:
                json.dump(payload, handle, indent=2)
        if options['format'] == 'json':
            self.stdout.write(json.dumps(payload, indent=2))
            return
        K = surface.field
        self.stdout.write(
            f'{surface.shape.name} q={q} over F_{K.q}: '
            f'P={K.format(surface.P)} Q={K.format(surface.Q)}'
            + (f' R={K.format(surface.R)}' if surface.R is not None else '')
        )
        if surface.multidegree:
            self.stdout.write(f'multidegree {tuple(surface.multidegree)}')
            self.stdout.write(f'pa <= {genus_upper_bound(*surface.multidegree)}')
        else:
            self.stdout.write(f'{len(surface.equations)} equation(s) in {", ".join(surface.variables)}')
        if options['out']:
            self.stdout.write(self.style.SUCCESS(f'Wrote {options["out"]}'))
