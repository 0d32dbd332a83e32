"""
Django settings for the qr-obstructions project.

There is no web front end and no database traffic; Django provides configuration, logging, management commands and
the test runner.
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.environ.get("DEPLOYMENT_SECRET", "qrob-local-only-not-a-secret")

if "UNSAFE_DEBUG" in os.environ:
    DEBUG = True
else:
    DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'cohomology',
    'ellipticity',
    'rest_framework',
]

TEST_RUNNER = 'django.test.runner.DiscoverRunner'

MIDDLEWARE = []

# Nothing is stored; SQLite only lets django boot and run its test runner
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get("DB_NAME", os.path.join(BASE_DIR, "qrob.sqlite3")),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

### Search configuration. Values are kept as strings here and parsed when a search first needs them, so a malformed
### environment value is reported as a ConfigurationError rather than failing at startup.
QROB_JOBS = os.environ.get("QROB_JOBS", "1")
QROB_COEFF_SET = os.environ.get("QROB_COEFF_SET", "0,1,-1")
QROB_ENUM_BUDGET = os.environ.get("QROB_ENUM_BUDGET", "4000")
### Wall-clock limit for one enumeration, in seconds; 0 turns it off. Running out is reported like an exhausted budget
QROB_ENUM_DEADLINE = os.environ.get("QROB_ENUM_DEADLINE", "20")

### Run every GradedRing invariant after building or loading a ring
QROB_VALIDATE_RINGS = os.environ.get("QROB_VALIDATE_RINGS", "true").lower() not in ("0", "false", "no", "off")

### Indentation of emitted JSON files; 0 gives one line
QROB_OUTPUT_INDENT = int(os.environ.get("QROB_OUTPUT_INDENT", "2"))

QROB_LOG_LEVEL = os.environ.get("QROB_LOG_LEVEL", "INFO").upper()

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': True,
    'formatters': {
        'normal': {
            'format': "{asctime} {name}|{funcName} [{levelname}] {message}",
            'style': "{"
        }
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'normal',
        },
    },
    'loggers': {
        'cohomology': {
            'level': QROB_LOG_LEVEL,
        },
        'ellipticity': {
            'level': QROB_LOG_LEVEL,
        },
    },
    'root': {
        'handlers': ['console'],  #the above loggers all take this
        'level': 'INFO',
    },
}
