import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tailindex.settings')
django.setup()
