# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import json
import unittest

import pandas as pd
from qiime2.plugin.testing import TestPluginBase

from q2_berger._format import REPORT_HEADER
from q2_berger._report import (
    FAIL, MEASURED, PASS, Timer, VerificationReport, assertion,
    contradiction, entry)


class ReportTests(TestPluginBase):
    package = 'q2_berger.tests'

    def setUp(self):
        super().setUp()
        self.report = VerificationReport([
            entry('a.exact', 'an exact identity', 0.0, 0.0),
            entry('a.float', 'a float identity', 1e-3, 1e-9,
                  details='off by a lot'),
            entry('a.constant', 'a measured constant', -2.0, 0.0,
                  status=MEASURED),
        ])

    def test_status(self):
        self.assertEqual(self.report['a.exact'].status, PASS)
        self.assertEqual(self.report['a.float'].status, FAIL)
        self.assertEqual(self.report['a.constant'].status, MEASURED)
        self.assertEqual(self.report['a.constant'].residual, -2.0)

    def test_passed(self):
        self.assertFalse(self.report.passed)
        self.assertEqual([e.check_id for e in self.report.failures],
                         ['a.float'])
        ok = VerificationReport([assertion('b', 'holds', True)])
        self.assertTrue(ok.passed)

    def test_measured_never_fails(self):
        report = VerificationReport([entry('m', 'm', 1e6, 0.0,
                                           status=MEASURED)])
        self.assertTrue(report.passed)

    def test_duplicate_ids(self):
        with self.assertRaisesRegex(ValueError, 'Duplicate.*a.exact'):
            self.report.add(entry('a.exact', 'again', 0.0, 0.0))

    def test_missing_id(self):
        with self.assertRaises(KeyError):
            self.report['nope']

    def test_dataframe(self):
        df = self.report.to_dataframe(timing=False)
        self.assertEqual(df.index.name, 'check-id')
        self.assertEqual(list(df.columns), REPORT_HEADER[1:])
        self.assertEqual(list(df.index),
                         ['a.exact', 'a.float', 'a.constant'])
        pd.testing.assert_series_equal(
            df['runtime-ms'],
            pd.Series([0.0, 0.0, 0.0], index=df.index, name='runtime-ms'))

    def test_json_dict(self):
        entries = self.report.to_json_dict(timing=False)
        self.assertEqual(entries[1], {'check_id': 'a.float',
                                      'paper_anchor': 'a float identity',
                                      'status': FAIL,
                                      'residual': 1e-3,
                                      'runtime_ms': 0.0,
                                      'details': 'off by a lot'})

    def test_undefined_residual_is_null(self):
        report = VerificationReport([entry('u', 'u', float('nan'), 0.0,
                                           status=MEASURED)])
        (item,) = report.to_json_dict()
        self.assertIsNone(item['residual'])
        json.dumps(report.to_json_dict(), allow_nan=False)

    def test_timer(self):
        timed = entry('t', 't', 0.0, 0.0, timer=Timer())
        self.assertGreaterEqual(timed.runtime_ms, 0.0)

    def test_contradiction_warns(self):
        with self.assertWarnsRegex(RuntimeWarning, 'x.y: impossible'):
            contradiction('x.y', 'impossible')


if __name__ == '__main__':
    unittest.main()
