"""
Settings for genusforge.

Everything lives under one ``GENUSFORGE`` dict in the Django settings::

    GENUSFORGE = {
        'NAIVE_BUDGET': 2 ** 24,
        'FAST_BUDGET': 2 ** 28,
        'THREADS': 4,
    }

The ``GENUSFORGE_BUDGET`` environment variable overrides both enumeration
budgets, either with a single integer or with ``naive=N,fast=M``.
"""
import os

import django
from django.apps import apps
from django.conf import ENVIRONMENT_VARIABLE, settings
from django.core.exceptions import ImproperlyConfigured

BUDGET_VARIABLE = 'GENUSFORGE_BUDGET'

DEFAULTS = {
    'NAIVE_BUDGET': 2 ** 24,
    'FAST_BUDGET': 2 ** 28,
    'THREADS': 1,
    'CHUNK_SIZE': 2 ** 16,
    'AGPROP_DEGREE': 6,
    'PRIME_TABLE_BOUND': 10 ** 6,
    'DEPTH': 2,
    'TAME_RECORD_MAX_E': 12,
}

POSITIVE = ('NAIVE_BUDGET', 'FAST_BUDGET', 'THREADS', 'CHUNK_SIZE', 'AGPROP_DEGREE', 'PRIME_TABLE_BOUND',
            'TAME_RECORD_MAX_E')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'genusforge': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}


def setup(**overrides):
    """
    Make sure Django is configured. Without a settings module a minimal
    standalone configuration is installed, with ``overrides`` as the
    GENUSFORGE dict.
    """
    if not settings.configured and not os.environ.get(ENVIRONMENT_VARIABLE):
        settings.configure(
            INSTALLED_APPS=['genusforge'],
            GENUSFORGE=dict(overrides),
            LOGGING=LOGGING,
        )
    if not apps.ready:
        django.setup()


def _configured():
    if settings.configured or os.environ.get(ENVIRONMENT_VARIABLE):
        return getattr(settings, 'GENUSFORGE', {})
    return {}


def _positive_int(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        number = None
    if number is None or number < 1 or (isinstance(value, float) and value != number):
        raise ImproperlyConfigured(
            'settings.GENUSFORGE is improperly configured. '
            '%s must be a positive integer, got %r.' % (name, value)
        )
    return number


def budget_from_environment():
    """Parse GENUSFORGE_BUDGET into a dict of budget overrides."""
    raw = os.environ.get(BUDGET_VARIABLE, '').strip()
    if not raw:
        return {}
    if '=' not in raw:
        value = _positive_int(BUDGET_VARIABLE, raw)
        return {'NAIVE_BUDGET': value, 'FAST_BUDGET': value}
    budgets = {}
    for part in raw.split(','):
        key, _, value = part.partition('=')
        key = key.strip().lower()
        if key not in ('naive', 'fast'):
            raise ImproperlyConfigured(
                '%s is improperly configured. Unknown budget %r, expected naive or fast.' % (BUDGET_VARIABLE, key)
            )
        budgets['%s_BUDGET' % key.upper()] = _positive_int(BUDGET_VARIABLE, value.strip())
    return budgets


def option(name, override=None):
    """Effective value of a GENUSFORGE option."""
    if name not in DEFAULTS:
        raise ImproperlyConfigured('Unknown GENUSFORGE option %r.' % name)
    if override is not None:
        value = override
    else:
        value = budget_from_environment().get(name)
        if value is None:
            value = _configured().get(name, DEFAULTS[name])
    if name in POSITIVE:
        return _positive_int(name, value)
    return value
