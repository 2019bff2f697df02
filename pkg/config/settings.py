"""
Django settings for the uncertainty-aware cross-modal retrieval project.

The project has no web surface and no database: Django provides the settings
layer, the management-command CLI and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

import os
from environ import Env
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
env = Env()
Env.read_env(os.path.join(BASE_DIR, '.env'))

# Unused by the pipeline, but Django refuses to run some checks without it.
SECRET_KEY = env('SECRET_KEY', default='uncertainty-app-local-key')

DEBUG = env.bool('DEBUG', default=False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # local
    'uncertainty_app.apps.UncertaintyAppConfig',

    # 3rd-party
    "rest_framework",
]

# The pipeline is file based: no DATABASES entry.

# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Logging goes to stderr so that command stdout and artifact files stay clean.

LOG_LEVEL = env('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'uncertainty_app': {
            'level': LOG_LEVEL,
            'propagate': True,
        },
    },
}


# Pipeline defaults

UNCERTAINTY = {
    'DEFAULT_SEED': env.int('UNCERTAINTY_SEED', default=0),
    'GRADCHECK_STEP': env.float('UNCERTAINTY_GRADCHECK_STEP', default=1e-6),
    'GRADCHECK_TOLERANCE': env.float('UNCERTAINTY_GRADCHECK_TOLERANCE', default=1e-4),
    'GRADCHECK_FLOOR': env.float('UNCERTAINTY_GRADCHECK_FLOOR', default=1e-4),
}
