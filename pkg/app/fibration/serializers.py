"""
Serializers for curve.json.
"""
from rest_framework import serializers

from core.fields import make_field
from fibration.function_field import FunctionField
from fibration.weierstrass import A_INVARIANTS, WeierstrassCurve
from moduli.serializers import VERSION, FieldSerializer, field_payload


class RationalFunctionSerializer(serializers.Serializer):
    """num/den as big-endian lists of coefficient vectors."""
    num = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0)))
    den = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)), min_length=1
    )


class BaseSerializer(FieldSerializer):
    """The base F_s(w)."""
    q_s = serializers.IntegerField(min_value=2)
    variable = serializers.CharField()


class CurveSerializer(serializers.Serializer):
    """Serializer for curve.json."""
    version = serializers.IntegerField()
    base = BaseSerializer()
    a_invariants = serializers.DictField(child=serializers.CharField())
    coefficients = serializers.DictField(child=RationalFunctionSerializer())
    provenance = serializers.DictField(required=False)

    def validate_version(self, value):
        if value != VERSION:
            raise serializers.ValidationError(f'unsupported version {value}')
        return value

    def validate(self, data):
        """Rebuild the curve and check it against the printed invariants."""
        K = make_field(data['base']['p'], data['base']['k'])
        if data['base']['q_s'] != K.q:
            raise serializers.ValidationError('q_s does not match the field')
        missing = set(A_INVARIANTS) - set(data['coefficients'])
        if missing:
            raise serializers.ValidationError(f'missing coefficients {sorted(missing)}')
        base = FunctionField(K, data['base']['variable'])
        ainvs = []
        for name in A_INVARIANTS:
            raw = data['coefficients'][name]
            try:
                num = [K.from_vector(v) for v in raw['num']]
                den = [K.from_vector(v) for v in raw['den']]
                ainvs.append(base(num, den))
            except (ValueError, ZeroDivisionError) as exc:
                raise serializers.ValidationError(f'{name}: {exc}')
        curve = WeierstrassCurve(base, *ainvs, provenance=data.get('provenance', {}))
        if curve.to_dict() != data['a_invariants']:
            raise serializers.ValidationError('a_invariants do not match the coefficients')
        if curve.is_singular():
            raise serializers.ValidationError('the stored curve is singular')
        data['curve'] = curve
        return data


def curve_to_dict(curve):
    K = curve.field
    return {
        'version': VERSION,
        'base': {**field_payload(K), 'q_s': K.q, 'variable': curve.base.var},
        'a_invariants': curve.to_dict(),
        'coefficients': {
            name: {'num': [K.vector(c) for c in a.num], 'den': [K.vector(c) for c in a.den]}
            for name, a in zip(A_INVARIANTS, curve.ainvs)
        },
        'provenance': curve.provenance,
    }


def load_curve(payload):
    """WeierstrassCurve described by a curve.json payload; raises ValidationError."""
    serializer = CurveSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data['curve']
