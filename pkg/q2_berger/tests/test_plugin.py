# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import os
import unittest

import pandas as pd
import pandas.testing as pdt
from qiime2 import Artifact
from qiime2.plugin.testing import TestPluginBase

from q2_berger import verify, classify, orbit, visualize_report
from q2_berger._format import (
    REPORT_HEADER, CLASSIFICATION_HEADER, POINTS_HEADER,
    VerificationResultsFmt, VerificationResultsDirFmt,
    PlaneClassificationFmt, PlaneClassificationDirFmt, BergerPointsFmt,
    BergerPointsDirFmt)
from q2_berger._type import (VerificationResults, PlaneClassification,
                             BergerPoints)
from q2_berger._report import FAIL


class TestPluginSetup(TestPluginBase):
    package = 'q2_berger.tests'

    def test_semantic_types(self):
        for semantic_type, dir_fmt in (
                (VerificationResults, VerificationResultsDirFmt),
                (PlaneClassification, PlaneClassificationDirFmt),
                (BergerPoints, BergerPointsDirFmt)):
            self.assertRegisteredSemanticType(semantic_type)
            self.assertSemanticTypeRegisteredToFormat(semantic_type,
                                                      dir_fmt)

    def test_actions(self):
        self.assertEqual(
            sorted(self.plugin.methods),
            ['classify', 'intersect_veronese', 'orbit', 'verify'])
        self.assertEqual(list(self.plugin.visualizers), ['visualize_report'])


class TestFormats(TestPluginBase):
    package = 'q2_berger.tests'

    def test_sniff(self):
        for fmt, name in ((VerificationResultsFmt, 'report.csv'),
                          (PlaneClassificationFmt, 'planes.csv'),
                          (BergerPointsFmt, 'points.csv')):
            fmt(self.get_data_path(name), mode='r').validate()

    def test_sniff_wrong_header(self):
        with self.assertRaisesRegex(Exception, 'VerificationResultsFmt'):
            VerificationResultsFmt(self.get_data_path('planes.csv'),
                                   mode='r').validate()


class TestTransformers(TestPluginBase):
    package = 'q2_berger.tests'

    def test_report_from_file(self):
        transformer = self.get_transformer(VerificationResultsFmt,
                                           pd.DataFrame)
        obs = transformer(VerificationResultsFmt(
            self.get_data_path('report.csv'), mode='r'))
        self.assertEqual(obs.index.name, 'check-id')
        self.assertEqual(list(obs.columns), REPORT_HEADER[1:])
        self.assertEqual(obs.loc['g2.d-phi', 'details'], '')
        self.assertEqual(obs.loc['flag.nk.constant.d-omega', 'residual'],
                         -3.0)

    def test_planes_from_file(self):
        transformer = self.get_transformer(PlaneClassificationFmt,
                                           pd.DataFrame)
        obs = transformer(PlaneClassificationFmt(
            self.get_data_path('planes.csv'), mode='r'))
        self.assertEqual(list(obs.columns), CLASSIFICATION_HEADER[1:])
        self.assertEqual(list(obs['parameters']), ['', ''])
        self.assertEqual(list(obs['stabilizer-verified']), [True, True])

    def test_points_from_file(self):
        transformer = self.get_transformer(BergerPointsFmt, pd.DataFrame)
        obs = transformer(BergerPointsFmt(self.get_data_path('points.csv'),
                                          mode='r'))
        self.assertEqual(list(obs.columns), POINTS_HEADER[1:])
        self.assertEqual(obs.loc['ico-0', 'x1'], 1.0)

    def test_report_artifact_round_trip(self):
        exp = verify('structure')
        obs = Artifact.import_data('VerificationResults', exp).view(
            pd.DataFrame)
        pdt.assert_frame_equal(obs, exp)

    def test_planes_artifact_round_trip(self):
        exp = classify('Oct')
        obs = Artifact.import_data('PlaneClassification', exp).view(
            pd.DataFrame)
        pdt.assert_frame_equal(obs, exp)

    def test_points_artifact_round_trip(self):
        exp = orbit('ico', samples=2)
        obs = Artifact.import_data('BergerPoints', exp).view(pd.DataFrame)
        pdt.assert_frame_equal(obs, exp)


class TestMethods(TestPluginBase):
    package = 'q2_berger.tests'

    def test_verify(self):
        obs = verify('structure')
        self.assertEqual(list(obs.columns), REPORT_HEADER[1:])
        self.assertNotIn(FAIL, set(obs['status']))
        self.assertTrue(all(i.startswith('structure.') for i in obs.index))

    def test_verify_float(self):
        obs = verify('structure', mode='float', tol=1e-8)
        self.assertNotIn(FAIL, set(obs['status']))

    def test_bad_values_fail(self):
        with self.assertRaisesRegex(ValueError, "'suite'"):
            verify('everything')
        with self.assertRaisesRegex(ValueError, "'tol'"):
            verify('structure', tol=-1.0)
        with self.assertRaisesRegex(ValueError, "'case'"):
            orbit('nowhere')
        with self.assertRaisesRegex(ValueError, "'samples'"):
            orbit('ico', samples=0)

    def test_classify(self):
        obs = classify('Oct')
        self.assertEqual(obs.index.name, 'row-id')
        self.assertEqual(dict(zip(obs['plane'], obs['associative'])),
                         {'A_Oct': 'yes', 'W': 'no'})

    def test_orbit(self):
        obs = orbit('ico', samples=3, seed=2)
        self.assertEqual(obs.shape, (3, len(POINTS_HEADER) - 1))
        self.assertEqual(list(obs.index), ['ico-0', 'ico-1', 'ico-2'])


class TestVisualizer(TestPluginBase):
    package = 'q2_berger.tests'

    def setUp(self):
        super().setUp()
        transformer = self.get_transformer(VerificationResultsFmt,
                                           pd.DataFrame)
        self.report = transformer(VerificationResultsFmt(
            self.get_data_path('report.csv'), mode='r'))

    def test_visualize_report(self):
        output_dir = self.temp_dir.name
        visualize_report(output_dir, self.report)

        index_fp = os.path.join(output_dir, 'index.html')
        self.assertTrue(os.path.exists(index_fp))
        with open(index_fp, encoding='utf-8') as fh:
            html = fh.read()
        self.assertIn('2 passed, 1 failed, 1 measured.', html)
        self.assertIn('Failed checks: g2.d-star-phi', html)
        self.assertIn('id="report"', html)
        self.assertIn('data-toggle="tooltip"', html)

    def test_failures_listed_first(self):
        output_dir = self.temp_dir.name
        visualize_report(output_dir, self.report)
        with open(os.path.join(output_dir, 'index.html'),
                  encoding='utf-8') as fh:
            html = fh.read()
        table = html[html.index('id="report"'):]
        self.assertLess(table.index('g2.d-star-phi'),
                        table.index('flag.nk.constant.d-omega'))
        self.assertLess(table.index('flag.nk.constant.d-omega'),
                        table.index('structure.jacobi'))

    def test_input_not_modified(self):
        exp = self.report.copy()
        visualize_report(self.temp_dir.name, self.report)
        pdt.assert_frame_equal(self.report, exp)


if __name__ == '__main__':
    unittest.main()
