"""
Django settings for the tropeig project.

Generated by 'django-admin startproject' using Django 6.0.

For more information on this file, see
https://docs.djangoproject.com/en/6.0/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='tropeig-local-only')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='').split(',')


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'eigencone',
]

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Database
# https://docs.djangoproject.com/en/6.0/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': config('DB_ENGINE', default='django.db.backends.sqlite3'),
        'NAME': config('DB_NAME', default=str(BASE_DIR / 'tropeig.sqlite3')),
        'USER': config('DB_USER', default=''),
        'PASSWORD': config('DB_PASSWORD', default=''),
        'HOST': config('DB_HOST', default=''),
        'PORT': config('DB_PORT', default=''),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/6.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Tropical services configuration (see eigencone.services.config)
TROPEIG = {
    'EPS_REL': config('TROPEIG_EPS_REL', default=1e-9, cast=float),
    'PROJECTION_EPS': config('TROPEIG_PROJECTION_EPS', default=1e-7, cast=float),
    'PROJECTION_MAX_CYCLES': config('TROPEIG_PROJECTION_MAX_CYCLES', default=10000, cast=int),
    'PROJECTION_ZERO_FLOOR': config('TROPEIG_PROJECTION_ZERO_FLOOR', default=1e-12, cast=float),
    'MAX_COVERINGS': config('TROPEIG_MAX_COVERINGS', default=1000000, cast=int),
    'MAX_DIMENSION': config('TROPEIG_MAX_DIMENSION', default=500, cast=int),
    'ORBIT_STEPS': config('TROPEIG_ORBIT_STEPS', default=200, cast=int),
    'SEED': config('TROPEIG_SEED', default=42, cast=int),
    'ORACLE_RESOLUTION': config('TROPEIG_ORACLE_RESOLUTION', default=25, cast=int),
    'ORACLE_SAMPLES': config('TROPEIG_ORACLE_SAMPLES', default=1000, cast=int),
    'ORACLE_MAX_DIMENSION': config('TROPEIG_ORACLE_MAX_DIMENSION', default=6, cast=int),
    'SURROGATE_FACTOR': config('TROPEIG_SURROGATE_FACTOR', default=1e6, cast=float),
    'MATMUL_CHUNK': config('TROPEIG_MATMUL_CHUNK', default=64, cast=int),
}


# Logging: plain console output, JSON lines with LOG_FORMAT=json
LOG_LEVEL = config('LOG_LEVEL', default='WARNING')
LOG_FORMAT = config('LOG_FORMAT', default='text')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'text': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
        'json': {
            '()': 'pythonjsonlogger.json.JsonFormatter',
            'fmt': '%(asctime)s %(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'json' if LOG_FORMAT == 'json' else 'text',
        },
    },
    'loggers': {
        'eigencone': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Celery Configuration
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='memory://')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='cache+memory://')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60  # 30 minutes
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)


# Cache: Redis when REDIS_URL is set, process memory otherwise
REDIS_URL = config('REDIS_URL', default='')

if REDIS_URL:
    CACHES = {
        'default': {
            'BACKEND': 'django_redis.cache.RedisCache',
            'LOCATION': REDIS_URL,
            'OPTIONS': {
                'CLIENT_CLASS': 'django_redis.client.DefaultClient',
            },
            'KEY_PREFIX': 'tropeig',
            'TIMEOUT': 60 * 60 * 24,  # 24 hours default
        }
    }
else:
    CACHES = {
        'default': {
            'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
            'LOCATION': 'tropeig',
            'TIMEOUT': 60 * 60 * 24,
        }
    }

# Cache time-to-live for reports (in seconds)
CACHE_TTL = 60 * 60 * 24
