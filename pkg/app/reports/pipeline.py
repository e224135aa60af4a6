"""
The build and analyze stages behind the management commands.

Every stage runs inside ``stage()``, which logs its start and end and wraps
domain errors into a PipelineError carrying the stage name.
"""
import functools
import json
import logging
import re
from contextlib import contextmanager
from dataclasses import dataclass, field as dataclass_field

from core.budget import UNLIMITED
from core.conf import shtuka_setting
from core.exceptions import (
    BudgetExceeded,
    DegenerateFibrationError,
    DegenerateSpecializationError,
    FieldError,
    NoPointFound,
    PipelineError,
    ShapeError,
)
from core.fields import embed, make_field, prime_power
from fibration.weierstrass import generic_fiber
from moduli.builder import TriForm, build_surface, specialization_field
from moduli.geometry import (
    affordable_extension,
    genus_upper_bound,
    known_singular_candidates,
    normalize_point,
    search_singular_points,
    verify_singular_points,
    verify_smooth_projective_closure,
)
from moduli.shapes import admissible_pairs, default_R, parse_shape
from reports.serializers import load_fixtures
from tate.algorithm import local_fibers
from tate.reports import analyze_surface

logger = logging.getLogger(__name__)

STAGES = ('build', 'singular', 'fibration', 'tate', 'report')

ALPHA = re.compile(r'^alpha_?(?P<r>\d+)(?:\^(?P<e>-?\d+))?$')

# errors after which another (P, Q) may succeed
RETRYABLE = (DegenerateSpecializationError, DegenerateFibrationError, NoPointFound)


@contextmanager
def stage(name, **context):
    """Run one pipeline stage, labelling its errors."""
    logger.info('%s: start %s', name, context)
    try:
        yield
    except (BudgetExceeded, PipelineError):
        raise
    except (ValueError, ArithmeticError, LookupError) as exc:
        logger.warning('%s failed: %s', name, exc)
        raise PipelineError(name, exc) from exc
    logger.info('%s: done', name)


def advice(error):
    """A hint for a PipelineError, or ''."""
    if isinstance(error.error, RETRYABLE):
        return 'this specialization degenerates; try a different (P, Q)'
    return ''


# elements

def parse_element(text, q, conway=None):
    """(code, field) for an element written as an integer, a coefficient
    vector '[c0,c1,...]' or 'alpha_r^e'.

    alpha_r is the Conway generator of F_r, looked up in ``conway`` (default:
    the generators of the bundled fixtures).
    """
    p, _ = prime_power(q)
    text = str(text).strip()
    match = ALPHA.match(text)
    if match:
        r = int(match.group('r'))
        if prime_power(r)[0] != p:
            raise FieldError(f'F_{r} does not have characteristic {p}')
        if conway is None:
            conway = conway_generators()
        if str(r) not in conway:
            raise FieldError(f'no Conway generator for F_{r}')
        return conway_element(conway, r, int(match.group('e') or 1), p)
    if text.startswith('['):
        try:
            vector = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FieldError(f'cannot read {text!r}: {exc}') from exc
        if not vector or any(not isinstance(c, int) or not 0 <= c < p for c in vector):
            raise FieldError(f'{text} is not a coefficient vector over F_{p}')
        K = make_field(p, len(vector))
        return K.from_vector(vector), K
    try:
        n = int(text)
    except ValueError:
        raise FieldError(f'cannot read the field element {text!r}') from None
    K = make_field(p)
    return K.from_int(n), K


@functools.lru_cache(maxsize=None)
def _fixture_generators(path):
    return load_fixtures(path)['conway']


def conway_generators():
    """Conway generators of the configured fixtures, by field order."""
    return _fixture_generators(str(shtuka_setting('FIXTURES')))


def conway_element(conway, r, power, p):
    """alpha_r^power, alpha_r given by its coefficient vector in ``conway``."""
    rp, a = prime_power(r)
    if rp != p:
        raise FieldError(f'F_{r} does not have characteristic {p}')
    K = make_field(p, a)
    return K.pow(K.from_vector(conway[str(r)]), power), K


def common_specialization(q, *elements):
    """(F_s, codes) with every (code, field) pair embedded into F_s; None stays None."""
    fields = [item[1] for item in elements if item is not None]
    F = specialization_field(q, *fields)
    codes = [None if item is None else embed(item[0], item[1], F) for item in elements]
    return F, codes


# building

def _in_subfield(x, F, E):
    """True when the code x of F lies in the subfield E."""
    return F.k % E.k == 0 and E.k % F.subfield_degree(x) == 0


def trial_pairs(shape, q, count, R=None, max_degree=3):
    """Up to ``count`` buildable specializations (P, Q, R, field) in
    enumeration order, over F_q first and then over its extensions.

    A pair already enumerated over a subfield is not repeated. ``R`` is a
    (code, field) pair or None.
    """
    shape = parse_shape(str(shape))
    p, a = prime_power(q)
    found, degenerate, seen = [], [], []
    for degree in range(1, max_degree + 1):
        try:
            F = make_field(p, a * degree)
            if R is not None:
                F = specialization_field(q, F, R[1])
        except FieldError:
            break
        if F in seen:
            continue
        if R is not None:
            R_code = embed(R[0], R[1], F)
        elif shape.needs_R:
            R_code = default_R(q, F)
        else:
            R_code = None
        for P, Q in admissible_pairs(shape, F, R_code):
            if any(_in_subfield(P, F, E) and _in_subfield(Q, F, E) for E in seen):
                continue
            try:
                build_surface(shape, q, P, Q, R_code, F)
            except DegenerateSpecializationError as exc:
                degenerate.append((F.format(P), F.format(Q)))
                logger.debug('skipping P=%s Q=%s: %s', F.format(P), F.format(Q), exc)
                continue
            found.append((P, Q, R_code, F))
            if len(found) == count:
                return found
        seen.append(F)
    if not found:
        raise ShapeError(f'no admissible (P, Q) for {shape.name} at q={q} up to degree {max_degree}')
    if degenerate:
        logger.info('%d degenerate pairs skipped for %s q=%d', len(degenerate), shape.name, q)
    return found


def build(shape, q, P=None, Q=None, R=None):
    """The surface for the given elements ((code, field) pairs) or for the
    first admissible pair when P and Q are omitted."""
    with stage('build', shape=str(shape), q=q):
        shape = parse_shape(str(shape))
        if (P is None) != (Q is None):
            raise ShapeError('P and Q must be given together')
        if P is None:
            P, Q, R, F = trial_pairs(shape, q, 1, R)[0]
        else:
            F, (P, Q, R) = common_specialization(q, P, Q, R)
        return build_surface(shape, q, P, Q, R, F)


def surface_meta(surface):
    K = surface.field
    meta = {'shape': surface.shape.name, 'q': surface.q, 'field': f'F_{K.q}'}
    for label in ('P', 'Q', 'R'):
        value = getattr(surface, label)
        if value is not None:
            meta[label] = K.format(value)
    return meta


# analysis

@dataclass
class SingularCheck:
    """Known candidates and the optional exhaustive search."""

    candidates: list = dataclass_field(default_factory=list)
    search: object = None
    skipped: bool = False

    @property
    def confirmed(self):
        return [r for r in self.candidates if r.is_singular]

    def to_dict(self):
        out = {
            'candidates': len(self.candidates),
            'confirmed': len(self.confirmed),
            'searched': self.search is not None,
        }
        if self.search is not None:
            out.update({
                'max_ext': self.search.max_ext,
                'points': self.search.geometric_count(),
                'non_isolated': self.search.non_isolated,
            })
        return out


@dataclass
class Analysis:
    surface: object
    singular: SingularCheck
    curve: object = None
    report: object = None
    genus: dict = dataclass_field(default_factory=dict)
    smooth: bool = None


def check_singular(form, sing_ext=None, budget=UNLIMITED):
    """Verify the known candidates and, when ``sing_ext`` is given, search."""
    check = SingularCheck()
    candidates = known_singular_candidates(form)
    if candidates:
        check.candidates = verify_singular_points(form, candidates)
        missed = len(candidates) - len(check.confirmed)
        if missed:
            logger.warning('%d of %d listed points are not singular on %s', missed, len(candidates), form.shape)
    if sing_ext:
        j = affordable_extension(form.field, sing_ext)
        if j:
            check.search = search_singular_points(form, j, budget)
        else:
            check.skipped = True
            logger.warning('singular search over F_%d skipped: over the point budget', form.field.q)
    return check


def _found_points_are_candidates(form, check):
    """Every point of the search is one of the confirmed candidates."""
    K = form.field
    known = {}
    for found, _, L in check.search.points:
        if L not in known:
            known[L] = {
                normalize_point(tuple(embed(x, K, L) for x in r.point), L) for r in check.confirmed
            }
        if normalize_point(found, L) not in known[L]:
            return False
    return True


def genus_report(form, check, pa=None):
    bound = genus_upper_bound(*form.multidegree)
    exact = (
        check.search is not None
        and not check.search.non_isolated
        and _found_points_are_candidates(form, check)
    )
    report = {'genus_bound': bound, 'genus_bound_exact': exact, 'pa': pa}
    if pa is not None and pa > bound:
        logger.warning('pa = %d exceeds the genus bound %d', pa, bound)
    return report


def analyze_level(surface, sing_ext=None, budget=UNLIMITED):
    """Smoothness of a level given by one affine equation."""
    with stage('singular', shape=surface.shape.name, q=surface.q):
        if len(surface.equations) != 1:
            raise ShapeError(f'{surface.shape.name} has no single equation to analyze')
        j = affordable_extension(surface.field, sing_ext)
        if not j:
            raise BudgetExceeded(f'no affordable extension of F_{surface.field.q} for the smoothness check')
        smooth = verify_smooth_projective_closure(surface.equations[0], 'P3', j, budget)
    return Analysis(surface, SingularCheck(), smooth=smooth)


def analyze(surface, deg_bound=None, sing_ext=None, budget=UNLIMITED):
    """Run the singular, fibration, tate and report stages on a surface."""
    if not isinstance(surface, TriForm):
        return analyze_level(surface, sing_ext, budget)
    meta = surface_meta(surface)
    with stage('singular', **meta):
        check = check_singular(surface, sing_ext, budget)
    with stage('fibration', **meta):
        curve = generic_fiber(surface, deg_bound, budget)
    with stage('tate', **meta):
        fibers = local_fibers(curve, budget)
    with stage('report', **meta):
        report = analyze_surface(curve, meta, budget, fibers)
        genus = genus_report(surface, check, report.pa)
        if check.skipped:
            report.flags.append('singular search skipped')
    return Analysis(surface, check, curve, report, genus)
