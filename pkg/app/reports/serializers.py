"""
Serializers for the table fixtures and reproduce results.
"""
import json

from rest_framework import serializers

from core.conf import shtuka_setting
from moduli.serializers import VERSION
from moduli.shapes import parse_shape
from tate.algorithm import KodairaType
from tate.reports import parse_types


class ElementField(serializers.Field):
    """A table entry for P or Q: an integer or {"conway": r, "power": e}."""

    def to_internal_value(self, data):
        if isinstance(data, bool):
            raise serializers.ValidationError('expected an integer or a Conway power')
        if isinstance(data, int):
            return data
        if isinstance(data, dict) and set(data) == {'conway', 'power'}:
            if not all(isinstance(v, int) and v > 0 for v in data.values()):
                raise serializers.ValidationError('conway and power must be positive integers')
            return dict(data)
        raise serializers.ValidationError('expected an integer or a Conway power')

    def to_representation(self, value):
        return value


class RowSerializer(serializers.Serializer):
    """One transcribed table row."""
    q = serializers.IntegerField(min_value=2)
    part = serializers.IntegerField(min_value=1, required=False)
    generic = serializers.BooleanField(default=False)
    P = ElementField(required=False)
    Q = ElementField(required=False)
    b2 = serializers.IntegerField()
    rank_T = serializers.IntegerField(min_value=2)
    bad_fibers = serializers.IntegerField(min_value=0)
    types = serializers.CharField()

    def validate(self, data):
        """Validate the types cell against #BF and rank_T."""
        if data['generic'] == ('P' in data):
            raise serializers.ValidationError('a row lists (P, Q) exactly when it is not generic')
        if ('P' in data) != ('Q' in data):
            raise serializers.ValidationError('P and Q must be given together')
        try:
            census = parse_types(data['types'])
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))
        if sum(census.values()) != data['bad_fibers']:
            raise serializers.ValidationError(f'q={data["q"]}: types do not add up to #BF')
        rank = 2 + sum(n * (KodairaType.parse(t).components - 1) for t, n in census.items())
        if rank != data['rank_T']:
            raise serializers.ValidationError(f'q={data["q"]}: types give rank_T = {rank}')
        return data


class ConjectureSerializer(serializers.Serializer):
    """Closed formulas a q + b for one parity of q."""
    parity = serializers.ChoiceField(choices=['even', 'odd'])
    min_q = serializers.IntegerField(min_value=2)
    b2 = serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2)
    rank_T = serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2)
    bad_fibers = serializers.ListField(
        child=serializers.IntegerField(), min_length=2, max_length=2, required=False
    )


class TableSerializer(serializers.Serializer):
    id = serializers.CharField()
    shape = serializers.CharField()
    caption = serializers.CharField()
    rows = RowSerializer(many=True)
    conjectures = ConjectureSerializer(many=True, required=False)

    def validate_shape(self, value):
        shape = parse_shape(value)
        if not shape.is_surface_of_fibration:
            raise serializers.ValidationError(f'{value} is not a degree four level')
        return shape.name


class FixtureSerializer(serializers.Serializer):
    """Serializer for tables.json."""
    version = serializers.IntegerField()
    conway = serializers.DictField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)
    )
    tables = TableSerializer(many=True)

    def validate_version(self, value):
        if value != VERSION:
            raise serializers.ValidationError(f'unsupported version {value}')
        return value

    def validate(self, data):
        """Validate that every Conway power refers to a listed field."""
        for table in data['tables']:
            for row in table['rows']:
                for label in ('P', 'Q'):
                    value = row.get(label)
                    if isinstance(value, dict) and str(value['conway']) not in data['conway']:
                        raise serializers.ValidationError(
                            f'table {table["id"]}: no Conway generator for F_{value["conway"]}'
                        )
        return data


def load_fixtures(path=None):
    """Validated tables.json; raises ValidationError."""
    path = path or shtuka_setting('FIXTURES')
    with open(path, encoding='utf-8') as handle:
        payload = json.load(handle)
    serializer = FixtureSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


class TrialSerializer(serializers.Serializer):
    P = serializers.CharField()
    Q = serializers.CharField()
    field = serializers.CharField()
    outcome = serializers.CharField()


class RowResultSerializer(serializers.Serializer):
    """One row of a reproduce run."""
    table = serializers.CharField()
    row = serializers.CharField()
    status = serializers.ChoiceField(choices=['PASS', 'FAIL', 'SKIPPED'])
    expected = serializers.DictField()
    computed = serializers.DictField(allow_null=True)
    trials = TrialSerializer(many=True)
    diff = serializers.CharField(allow_blank=True)
    reason = serializers.CharField(allow_blank=True)
    conjecture = serializers.CharField(allow_blank=True)
