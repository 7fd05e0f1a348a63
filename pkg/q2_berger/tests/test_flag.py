# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import math
import unittest

import numpy as np
import numpy.testing as npt
from qiime2.plugin.testing import TestPluginBase

from q2_berger._config import Config
from q2_berger._report import FAIL, PASS
from q2_berger._scalar import EXACT, FLOAT, ComplexScalar
from q2_berger._liealg import MU, InvariantForm
from q2_berger._flag import (
    RuledPointData, flag_coframe, flag_report, format_constant,
    ideal_residual, immersion_criterion, lift_matrix, lift_omega, nk_forms,
    nk_constants, proportionality, real_constant, verify_coframe,
    verify_jstruct, verify_omegazeta, verify_structflag)


class CoframeTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_coframe(self):
        f = flag_coframe()
        self.assertEqual(f.rank, MU.dim)
        self.assertEqual(verify_coframe().status, PASS)
        self.assertIs(flag_coframe(), f)

    def test_zeta_is_a_coframe_direction(self):
        f = flag_coframe()
        for k, z in enumerate(f.zeta):
            self.assertEqual([key for key, _ in f.to_flag(z).items()],
                             [(k,)])

    def test_zeta_in_ideal(self):
        f = flag_coframe()
        self.assertFalse(ideal_residual(f.zeta[2]))
        self.assertTrue(ideal_residual(f.rho[0]))


class StructureTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_structure_equations(self):
        for mode in (EXACT, FLOAT):
            for e in verify_structflag(mode):
                self.assertEqual(e.status, PASS, e.check_id)

    def test_almost_complex_structure(self):
        for e in verify_jstruct(EXACT):
            self.assertEqual(e.status, PASS, e.check_id)

    def test_omega_in_terms_of_zeta(self):
        for e in verify_omegazeta(EXACT):
            self.assertEqual(e.status, PASS, e.check_id)


class NearlyKahlerTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_constants(self):
        (c1, r1), (c2, r2), cross = nk_constants(EXACT)
        self.assertEqual(r1, 0.0)
        self.assertEqual(r2, 0.0)
        self.assertEqual(cross, 0.0)
        self.assertEqual(real_constant(c1), -3.0)
        self.assertEqual(real_constant(c2), 2.0)
        self.assertEqual(format_constant(c1), '-3')

    def test_unrotated_phase(self):
        (c1, r1), (c2, r2), _ = nk_constants(EXACT, rotated=False)
        self.assertEqual((r1, r2), (0.0, 0.0))
        self.assertEqual(real_constant(c1), 3.0)
        self.assertEqual(real_constant(c2), 2.0)

    def test_float_constants(self):
        (c1, r1), (c2, r2), _ = nk_constants(FLOAT)
        self.assertAlmostEqual(real_constant(c1), -3.0)
        self.assertAlmostEqual(real_constant(c2), 2.0)
        self.assertLess(max(r1, r2), 1e-12)

    def test_forms(self):
        omega, psi = nk_forms()
        self.assertEqual(omega.degree, 2)
        self.assertEqual(psi.degree, 3)
        self.assertFalse(omega.wedge(psi))


class HelperTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_proportionality(self):
        a = InvariantForm.basis(3, 0) + InvariantForm.basis(3, 1) * 2
        c, r = proportionality(a * 3, a)
        self.assertEqual(c, 3)
        self.assertEqual(r, 0.0)
        c, r = proportionality(a, InvariantForm(3))
        self.assertIsNone(c)
        self.assertEqual(r, 2.0)

    def test_format_constant(self):
        self.assertEqual(format_constant(None), 'undefined')
        self.assertEqual(format_constant(ComplexScalar(1, 2)), '1+2i')
        self.assertEqual(format_constant(0.5), '0.5')
        self.assertTrue(math.isnan(real_constant(None)))


class RuledTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_unit_norm(self):
        with self.assertRaisesRegex(ValueError, 'unit norm'):
            RuledPointData(1, 1, 0, 0)

    def test_immersion(self):
        self.assertFalse(immersion_criterion(
            RuledPointData.veronese_gauss_lift()))
        self.assertTrue(immersion_criterion((1, 0, 0, 0)))
        for theta in np.linspace(0, math.pi, 7):
            self.assertTrue(immersion_criterion(
                RuledPointData.normal_lift(theta)))

    def test_degenerate_lift(self):
        omega = lift_omega(RuledPointData.veronese_gauss_lift())
        npt.assert_allclose(omega[:3], 0.0, atol=1e-12)
        self.assertEqual(lift_matrix().shape, (4, 4))


class FlagReportTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_report(self):
        entries = flag_report(Config(threads=1))
        self.assertEqual([e.check_id for e in entries if e.status == FAIL],
                         [])
        ids = [e.check_id for e in entries]
        self.assertIn('flag.nk.constant.d-omega', ids)
        self.assertEqual(len(ids), len(set(ids)))


if __name__ == '__main__':
    unittest.main()
