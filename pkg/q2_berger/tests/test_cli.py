# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import json
import os
import unittest
from unittest import mock

import pandas as pd
from qiime2.plugin.testing import TestPluginBase

from q2_berger._cli import COMMANDS, EXIT_CONFIG, EXIT_OK, build_parser, run
from q2_berger._format import REPORT_HEADER, POINTS_HEADER


class TestCommandLine(TestPluginBase):
    package = 'q2_berger.tests'

    def setUp(self):
        super().setUp()
        self.json_path = os.path.join(self.temp_dir.name, 'report.json')
        self.csv_path = os.path.join(self.temp_dir.name, 'report.csv')

    def test_verify(self):
        obs = run(['verify', 'structure', '--threads', '1', '--no-timing',
                   '--json', self.json_path, '--csv', self.csv_path])
        self.assertEqual(obs, EXIT_OK)

        with open(self.json_path, encoding='utf-8') as fh:
            payload = json.load(fh)
        self.assertEqual(sorted(payload), ['config', 'entries', 'version'])
        self.assertNotIn('threads', payload['config'])
        self.assertEqual(payload['config']['mode'], 'exact')
        self.assertTrue(payload['entries'])
        self.assertEqual({e['runtime_ms'] for e in payload['entries']},
                         {0.0})

        df = pd.read_csv(self.csv_path, index_col='check-id')
        self.assertEqual(list(df.columns), REPORT_HEADER[1:])
        self.assertEqual(len(df), len(payload['entries']))

    def test_entry_schema(self):
        run(['verify', 'structure', '--threads', '1', '--json',
             self.json_path])
        with open(self.json_path, encoding='utf-8') as fh:
            payload = json.load(fh)
        for item in payload['entries']:
            self.assertEqual(set(item), {'check_id', 'paper_anchor',
                                         'status', 'residual',
                                         'runtime_ms', 'details'})

    def _verify_all(self, mode, path):
        return run(['verify', 'all', '--mode', mode, '--threads', '1',
                    '--no-timing', '--family-samples', '5',
                    '--grid-side', '8', '--t-samples', '6',
                    '--orbit-samples', '3', '--json', path])

    def test_verify_all_modes_agree(self):
        float_path = os.path.join(self.temp_dir.name, 'float.json')
        self.assertEqual(self._verify_all('exact', self.json_path), EXIT_OK)
        self.assertEqual(self._verify_all('float', float_path), EXIT_OK)
        with open(self.json_path, encoding='utf-8') as a, \
                open(float_path, encoding='utf-8') as b:
            exact = json.load(a)['entries']
            inexact = json.load(b)['entries']
        self.assertEqual(len(exact), len(inexact))
        for e, f in zip(exact, inexact):
            self.assertEqual(e['status'], f['status'],
                             (e['check_id'], f['check_id']))

    def test_repeated_runs_are_identical(self):
        other = os.path.join(self.temp_dir.name, 'again.json')
        for path in (self.json_path, other):
            run(['verify', 'structure', '--threads', '1', '--no-timing',
                 '--json', path])
        with open(self.json_path, encoding='utf-8') as a, \
                open(other, encoding='utf-8') as b:
            self.assertEqual(a.read(), b.read())

    def test_configuration_errors(self):
        self.assertEqual(run(['verify', 'structure', '--tol', '0']),
                         EXIT_CONFIG)
        self.assertEqual(run(['classify', '--group', 'X5']), EXIT_CONFIG)
        self.assertEqual(run(['scan-grassmannian', '--samples', '0']),
                         EXIT_CONFIG)
        self.assertEqual(run(['verify', '--dodeca-grid', '1', '1']),
                         EXIT_CONFIG)
        self.assertEqual(run(['classify', '--group', 'Z0']), EXIT_CONFIG)

    def test_suite_errors_are_not_configuration_errors(self):
        def broken(args, config):
            raise ValueError('inside a suite')

        with mock.patch.dict(COMMANDS, {'verify': broken}):
            with self.assertRaisesRegex(ValueError, 'inside a suite'):
                run(['verify', 'structure', '--threads', '1'])

    def test_parser(self):
        args = build_parser().parse_args(['verify'])
        self.assertEqual(args.suite, 'all')
        self.assertTrue(args.timing)
        self.assertEqual(args.sweep, 50)
        with self.assertRaises(SystemExit):
            build_parser().parse_args(['verify', 'everything'])
        with self.assertRaises(SystemExit):
            build_parser().parse_args(['orbit'])

    def test_orbit(self):
        obs = run(['orbit', '--case', 'ico', '--orbit-samples', '2',
                   '--threads', '1', '--csv', self.csv_path])
        self.assertEqual(obs, EXIT_OK)
        df = pd.read_csv(self.csv_path, index_col='point-id')
        self.assertEqual(list(df.columns), POINTS_HEADER[1:])
        self.assertEqual(len(df), 2)
        self.assertEqual(set(df['label']), {'ico'})

    def test_classify(self):
        obs = run(['classify', '--group', 'Oct', '--threads', '1',
                   '--csv', self.csv_path])
        self.assertEqual(obs, EXIT_OK)
        df = pd.read_csv(self.csv_path, index_col='row-id')
        self.assertEqual(set(df['plane']), {'A_Oct', 'W'})


if __name__ == '__main__':
    unittest.main()
