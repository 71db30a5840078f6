"""
Django settings for the smale-lab project.

Every value that may differ between machines is read from the environment
(or a `.env` file next to `manage.py`) with django-environ.
"""
import environ
from pathlib import Path

# set env variables
env = environ.Env(
    DEBUG=(bool, False),
    SMALE_LAB_THREADS=(int, 1),
    SMALE_LAB_ENUMERATION_CAP=(int, 16),
    LOG_LEVEL=(str, 'INFO'),
)

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# read .env file
environ.Env.read_env(BASE_DIR / '.env')

# the lab keeps no secrets, the key only satisfies Django
SECRET_KEY = env('SECRET_KEY', default='smale-lab-development-key')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = env.list('ALLOWED_HOSTS', default=['localhost', '127.0.0.1', 'testserver'])


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # 3rd party
    'rest_framework',

    # own
    'games',
    'strategies',
    'engine',
    'approachability',
    'dynamics',
    'lab',
    'api',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'core.urls'

# Database
# nothing is persisted, Django only needs a connection to exist
DATABASES = {
    'default': env.db('DATABASE_URL', default=f'sqlite:///{BASE_DIR / "db.sqlite3"}')
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True


# REST FRAMEWORK SETTINGS
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': ('rest_framework.permissions.AllowAny', ),
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': ('rest_framework.renderers.JSONRenderer', ),
}


# LAB SETTINGS
# worker processes used for replications
SMALE_LAB_THREADS = env('SMALE_LAB_THREADS')
# largest player count for which profiles {C,D}^M are enumerated exactly
SMALE_LAB_ENUMERATION_CAP = env('SMALE_LAB_ENUMERATION_CAP')


# LOGGING
LOG_LEVEL = env('LOG_LEVEL')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'terse': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'terse',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('games', 'strategies', 'engine', 'approachability', 'dynamics', 'lab', 'api')
    },
}
