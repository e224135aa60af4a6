import os
import sys
from pathlib import Path

# The Django project lives in app/; configure it as manage.py does.
sys.path.insert(0, str(Path(__file__).resolve().parent / 'app'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'app.settings')

import django  # noqa: E402

django.setup()
