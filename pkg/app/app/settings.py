"""
Django settings for the shtuka surfaces project.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'changeme')

DEBUG = int(os.getenv("DEBUG", default=0))

ALLOWED_HOSTS = os.getenv('DJANGO_ALLOWED_HOSTS', 'localhost').split(',')

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'moduli',
    'fibration',
    'tate',
    'reports',
]

# Everything is computed in memory; nothing is persisted.
DATABASES = {}

# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

# Toolkit configuration, read through core.conf.shtuka_setting.

SHTUKA = {
    'FIELD_CARDINALITY_LIMIT': int(os.getenv('SHTUKA_FIELD_LIMIT', 2 ** 20)),
    'BUDGET_SECONDS': float(os.getenv('SHTUKA_BUDGET', 60)),
    'SINGULAR_BUDGET': int(os.getenv('SHTUKA_SINGULAR_BUDGET', 2_000_000)),
    'SING_EXT': int(os.getenv('SHTUKA_SING_EXT', 4)),
    'DEG_BOUND': int(os.getenv('SHTUKA_DEG_BOUND', 2)),
    'TRIALS': int(os.getenv('SHTUKA_TRIALS', 4)),
    'WORKERS': int(os.getenv('SHTUKA_WORKERS', 2)),
    'SEED': int(os.getenv('SHTUKA_SEED', 0)),
    'FIXTURES': BASE_DIR / 'reports' / 'fixtures' / 'tables.json',
}

LOG_LEVEL = os.getenv('SHTUKA_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s %(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'moduli', 'fibration', 'tate', 'reports')
    },
}
