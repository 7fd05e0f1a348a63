# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import unittest

from qiime2.plugin.testing import TestPluginBase

from q2_berger._config import Config, SUITES, _check_inputs


class TestConfig(TestPluginBase):
    package = 'q2_berger.tests'

    def test_defaults(self):
        config = Config(threads=2)
        self.assertEqual(config.mode, 'exact')
        self.assertEqual(config.tol, 1e-9)
        self.assertEqual(config.dodeca_grid, (256, 512))
        self.assertTrue(config.scalar_mode.exact)
        self.assertFalse(Config(mode='float').scalar_mode.exact)
        self.assertTrue(repr(config).startswith("Config(mode='exact'"))

    def test_threads_default_to_cpus(self):
        self.assertGreaterEqual(Config().threads, 1)

    def test_to_dict(self):
        config = Config(threads=3, dodeca_grid=[16, 32])
        obs = config.to_dict()
        self.assertEqual(obs['threads'], 3)
        self.assertEqual(obs['dodeca_grid'], [16, 32])
        obs = config.to_dict(threads=False)
        self.assertNotIn('threads', obs)
        self.assertEqual(sorted(obs),
                         sorted(f for f in Config.FIELDS if f != 'threads'))

    def test_bad_values_fail(self):
        # the messages come from _valid_inputs; only the parameter name is
        # checked here
        with self.assertRaisesRegex(ValueError, "'mode'"):
            Config(mode='fast')
        with self.assertRaisesRegex(ValueError, "'tol'"):
            Config(tol=0)
        with self.assertRaisesRegex(ValueError, "'threads'"):
            Config(threads=0)
        with self.assertRaisesRegex(ValueError, "'seed'"):
            Config(seed=-1)
        with self.assertRaisesRegex(ValueError, "'sweep'.*greater than one"):
            Config(sweep=1)
        with self.assertRaisesRegex(ValueError, "'dodeca_grid'"):
            Config(dodeca_grid=(1, 8))
        with self.assertRaisesRegex(ValueError, "'dodeca_grid'"):
            Config(dodeca_grid=(8,))

    def test_check_inputs(self):
        _check_inputs(suite='all', case='ico', samples=1)
        self.assertIn('cohom1', SUITES)
        with self.assertRaisesRegex(ValueError, "'suite'.*one of all"):
            _check_inputs(suite='everything')
        with self.assertRaisesRegex(ValueError, "'case'"):
            _check_inputs(case='o999')


if __name__ == '__main__':
    unittest.main()
