"""
Celery configuration
"""
import os
from celery import Celery

# Set the default Django settings module for the 'celery' program.
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tropeig.settings')

app = Celery('tropeig')

# Using a string here means the worker doesn't have to serialize
# the configuration object to child processes.
# - namespace='CELERY' means all celery-related configuration keys
#   should have a `CELERY_` prefix.
app.config_from_object('django.conf:settings', namespace='CELERY')

# Load task modules from all registered Django apps.
app.autodiscover_tasks()

# Trim the stored analysis history once a day.
app.conf.beat_schedule = {
    'cleanup-old-analyses': {
        'task': 'eigencone.cleanup_old_analyses',
        'schedule': 60 * 60 * 24,
    },
}
