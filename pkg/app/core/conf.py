"""
Access to the SHTUKA settings block.
"""
from django.conf import settings

DEFAULTS = {
    'FIELD_CARDINALITY_LIMIT': 2 ** 20,
    'BUDGET_SECONDS': 60.0,
    'SINGULAR_BUDGET': 2_000_000,
    'SING_EXT': 4,
    'DEG_BOUND': 2,
    'TRIALS': 4,
    'WORKERS': 2,
    'SEED': 0,
    'FIXTURES': None,
}


def shtuka_setting(name):
    """Return a toolkit setting, falling back to the built-in default."""
    if name not in DEFAULTS:
        raise KeyError(name)
    configured = getattr(settings, 'SHTUKA', {})
    return configured.get(name, DEFAULTS[name])
