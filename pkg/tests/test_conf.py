import os
import unittest

import mock
from django.core.exceptions import ImproperlyConfigured

from genusforge import conf


@mock.patch.dict(os.environ, {conf.BUDGET_VARIABLE: ''})
class TestOption(unittest.TestCase):
    def test_settings_value(self):
        self.assertEqual(conf.option('THREADS'), 1)
        self.assertEqual(conf.option('NAIVE_BUDGET'), 2 ** 20)

    def test_override(self):
        self.assertEqual(conf.option('THREADS', 3), 3)

    @mock.patch('genusforge.conf._configured', return_value={})
    def test_defaults(self, mock_configured):
        self.assertEqual(conf.option('NAIVE_BUDGET'), conf.DEFAULTS['NAIVE_BUDGET'])
        self.assertEqual(conf.option('AGPROP_DEGREE'), 6)
        self.assertTrue(mock_configured.called)

    def test_unknown_option(self):
        with self.assertRaises(ImproperlyConfigured):
            conf.option('COLOR')

    def test_rejects_non_positive(self):
        for value in (0, -3, 2.5, 'many'):
            with self.subTest(value=value):
                with self.assertRaises(ImproperlyConfigured):
                    conf.option('THREADS', value)

    @mock.patch('genusforge.conf._configured', return_value={'DEPTH': 0, 'CHUNK_SIZE': '64'})
    def test_settings_coercion(self, mock_configured):
        self.assertEqual(conf.option('DEPTH'), 0)
        self.assertEqual(conf.option('CHUNK_SIZE'), 64)


class TestBudgetEnvironment(unittest.TestCase):
    def test_single_value(self):
        with mock.patch.dict(os.environ, {conf.BUDGET_VARIABLE: '100'}):
            self.assertEqual(conf.budget_from_environment(), {'NAIVE_BUDGET': 100, 'FAST_BUDGET': 100})
            self.assertEqual(conf.option('FAST_BUDGET'), 100)
            self.assertEqual(conf.option('FAST_BUDGET', 7), 7)

    def test_named_values(self):
        with mock.patch.dict(os.environ, {conf.BUDGET_VARIABLE: 'naive=5, fast=7'}):
            self.assertEqual(conf.option('NAIVE_BUDGET'), 5)
            self.assertEqual(conf.option('FAST_BUDGET'), 7)
        with mock.patch.dict(os.environ, {conf.BUDGET_VARIABLE: 'fast=9'}):
            self.assertEqual(conf.option('NAIVE_BUDGET'), 2 ** 20)
            self.assertEqual(conf.option('FAST_BUDGET'), 9)

    def test_malformed(self):
        for raw in ('slow=3', 'naive=0', '-1', 'lots'):
            with self.subTest(raw=raw):
                with mock.patch.dict(os.environ, {conf.BUDGET_VARIABLE: raw}):
                    with self.assertRaises(ImproperlyConfigured):
                        conf.budget_from_environment()


class TestSetup(unittest.TestCase):
    @mock.patch('genusforge.conf.django.setup')
    @mock.patch('genusforge.conf.settings')
    def test_standalone_configuration(self, mock_settings, mock_setup):
        mock_settings.configured = False
        with mock.patch.dict(os.environ, {'DJANGO_SETTINGS_MODULE': ''}), \
                mock.patch('genusforge.conf.apps') as mock_apps:
            mock_apps.ready = False
            conf.setup(THREADS=2)
        mock_settings.configure.assert_called_once_with(
            INSTALLED_APPS=['genusforge'],
            GENUSFORGE={'THREADS': 2},
            LOGGING=conf.LOGGING,
        )
        mock_setup.assert_called_once_with()

    @mock.patch('genusforge.conf.settings')
    def test_configured_is_left_alone(self, mock_settings):
        mock_settings.configured = True
        conf.setup()
        self.assertFalse(mock_settings.configure.called)
