import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "irsproject.settings")
django.setup()
