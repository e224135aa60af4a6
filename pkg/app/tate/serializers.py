"""
Serializers for report.json.
"""
from rest_framework import serializers

from moduli.serializers import VERSION
from tate.algorithm import KodairaType
from tate.reports import census_items


class KodairaTypeField(serializers.CharField):
    """A Kodaira symbol such as 'I_6', 'I_0*' or 'III*'."""

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            return str(KodairaType.parse(text))
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))


class FiberSerializer(serializers.Serializer):
    """One place of bad reduction."""
    place = serializers.CharField()
    degree = serializers.IntegerField(min_value=1)
    type = KodairaTypeField()
    ordDelta = serializers.IntegerField(min_value=1)
    mv = serializers.IntegerField(min_value=1)

    def validate(self, data):
        """Validate the component count and the multiplicative ord Delta."""
        kodaira = KodairaType.parse(data['type'])
        if data['mv'] != kodaira.components:
            raise serializers.ValidationError(f'{kodaira} has {kodaira.components} components')
        if kodaira.is_multiplicative and data['ordDelta'] != kodaira.n:
            raise serializers.ValidationError(f'{kodaira} needs ord Delta = {kodaira.n}')
        return data


class CensusEntrySerializer(serializers.Serializer):
    type = KodairaTypeField()
    count = serializers.IntegerField(min_value=1)


class ReportSerializer(serializers.Serializer):
    """Serializer for report.json."""
    version = serializers.IntegerField()
    e = serializers.IntegerField(min_value=0)
    pa = serializers.IntegerField(min_value=0)
    b2 = serializers.IntegerField()
    rank_T = serializers.IntegerField(min_value=2)
    kind = serializers.CharField()
    fibers = FiberSerializer(many=True)
    closure_census = CensusEntrySerializer(many=True)
    row = serializers.CharField()
    flags = serializers.ListField(child=serializers.CharField(), required=False)
    meta = serializers.DictField(required=False)

    def validate_version(self, value):
        if value != VERSION:
            raise serializers.ValidationError(f'unsupported version {value}')
        return value

    def validate(self, data):
        """Validate the global invariants against the fibre list."""
        fibers = data['fibers']
        e = sum(f['ordDelta'] * f['degree'] for f in fibers)
        if e != data['e'] or e != 12 * data['pa']:
            raise serializers.ValidationError('e does not match the fibres')
        if data['b2'] != e - 2:
            raise serializers.ValidationError('b2 must be e - 2')
        if data['rank_T'] != 2 + sum(f['degree'] * (f['mv'] - 1) for f in fibers):
            raise serializers.ValidationError('rank_T does not match the fibres')
        return data


def report_to_dict(report):
    return {
        'version': VERSION,
        'e': report.e,
        'pa': report.pa,
        'b2': report.b2,
        'rank_T': report.rank_T,
        'kind': report.kind,
        'fibers': [f.to_dict() for f in report.fibers],
        'closure_census': [
            {'type': symbol, 'count': count}
            for symbol, count in census_items(report.closure_census)
        ],
        'row': report.table_row(),
        'flags': list(report.flags),
        'meta': dict(report.meta),
    }


def load_report(payload):
    """Validated report.json data; raises ValidationError."""
    serializer = ReportSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data
