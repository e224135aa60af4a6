"""
Serializers for surface.json and singular-report.json.
"""
from rest_framework import serializers

from core.exceptions import FieldError, ShapeError
from core.fields import make_field
from moduli.builder import build_surface
from moduli.shapes import parse_shape

VERSION = 1


def field_payload(K):
    return {'p': K.p, 'k': K.k}


def element_payload(x, K):
    return None if x is None else K.vector(x)


class FieldSerializer(serializers.Serializer):
    """A finite field F_{p^k} of the toolkit's tower."""
    p = serializers.IntegerField(min_value=2)
    k = serializers.IntegerField(min_value=1)

    def validate(self, data):
        """Validate that the field can be built."""
        try:
            make_field(data['p'], data['k'])
        except FieldError as exc:
            raise serializers.ValidationError(str(exc))
        return data


class TermSerializer(serializers.Serializer):
    """One term: exponent vector and coefficient vector."""
    e = serializers.ListField(child=serializers.IntegerField(min_value=0))
    c = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)


def _element(vector, K, label):
    if vector is None:
        return None
    if len(vector) > K.k or any(c >= K.p for c in vector):
        raise serializers.ValidationError(f'{label} = {vector} is not an element of {K!r}')
    return K.from_vector(vector)


class SurfaceSerializer(serializers.Serializer):
    """Serializer for surface.json."""
    version = serializers.IntegerField()
    shape = serializers.CharField()
    q = serializers.IntegerField(min_value=2)
    field = FieldSerializer()
    P = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_null=True)
    Q = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_null=True)
    R = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_null=True, required=False)
    multidegree = serializers.ListField(child=serializers.IntegerField(), allow_null=True, required=False)
    variables = serializers.ListField(child=serializers.CharField())
    equations = serializers.ListField(child=serializers.ListField(child=TermSerializer()))
    provenance = serializers.DictField(required=False)

    def validate_version(self, value):
        if value != VERSION:
            raise serializers.ValidationError(f'unsupported version {value}')
        return value

    def validate_shape(self, value):
        try:
            return parse_shape(value).name
        except ShapeError as exc:
            raise serializers.ValidationError(str(exc))

    def validate(self, data):
        """Rebuild the surface and check the stored equations against it."""
        K = make_field(data['field']['p'], data['field']['k'])
        P = _element(data['P'], K, 'P')
        Q = _element(data['Q'], K, 'Q')
        R = _element(data.get('R'), K, 'R')
        if P is None or Q is None:
            raise serializers.ValidationError('only specialized surfaces can be stored')
        try:
            surface = build_surface(data['shape'], data['q'], P, Q, R, K)
        except (ValueError, ArithmeticError) as exc:
            raise serializers.ValidationError(str(exc))
        if len(surface.equations) != len(data['equations']):
            raise serializers.ValidationError('wrong number of equations')
        for f, terms in zip(surface.equations, data['equations']):
            if f.ring.from_json(terms) != f:
                raise serializers.ValidationError('stored equation differs from the rebuilt surface')
        data['surface'] = surface
        return data


def surface_to_dict(surface):
    K = surface.field
    return {
        'version': VERSION,
        'shape': surface.shape.name,
        'q': surface.q,
        'field': field_payload(K),
        'P': element_payload(surface.P, K),
        'Q': element_payload(surface.Q, K),
        'R': element_payload(surface.R, K),
        'multidegree': list(surface.multidegree) if surface.multidegree else None,
        'variables': list(surface.variables),
        'equations': [f.to_json() for f in surface.equations],
        'provenance': surface.provenance,
    }


def load_surface(payload):
    """Surface described by a surface.json payload; raises ValidationError."""
    serializer = SurfaceSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data['surface']


class PointSerializer(serializers.Serializer):
    """A singular point found by the search."""
    point = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    degree = serializers.IntegerField(min_value=1)
    field = FieldSerializer()


class CandidateSerializer(serializers.Serializer):
    """Verification of one listed candidate."""
    point = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    on_surface = serializers.BooleanField()
    singular = serializers.BooleanField()
    a1 = serializers.CharField()


class SingularReportSerializer(serializers.Serializer):
    """Serializer for singular-report.json."""
    version = serializers.IntegerField()
    shape = serializers.CharField()
    q = serializers.IntegerField(min_value=2)
    field = FieldSerializer()
    max_ext = serializers.IntegerField(min_value=0)
    non_isolated = serializers.BooleanField()
    counts = serializers.DictField(child=serializers.IntegerField())
    points = PointSerializer(many=True)
    candidates = CandidateSerializer(many=True)


def singular_report_to_dict(form, result, reports):
    K = form.field
    return {
        'version': VERSION,
        'shape': form.shape.name,
        'q': form.q,
        'field': field_payload(K),
        'max_ext': result.max_ext,
        'non_isolated': result.non_isolated,
        'counts': {str(j): n for j, n in result.counts.items()},
        'points': [
            {'point': [L.vector(x) for x in point], 'degree': degree, 'field': field_payload(L)}
            for point, degree, L in result.points
        ],
        'candidates': [
            {
                'point': [K.vector(x) for x in report.point],
                'on_surface': report.is_on_surface,
                'singular': report.is_singular,
                'a1': report.a1.value,
            }
            for report in reports
        ],
    }
