"""
WSGI entry point for the transferlab admin (fixtures and comparison runs).
"""
import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'transferlab.settings')

application = get_wsgi_application()
