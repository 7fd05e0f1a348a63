# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import math
import unittest
from fractions import Fraction

import numpy as np
from qiime2.plugin.testing import TestPluginBase

from q2_berger._config import Config
from q2_berger._report import FAIL
from q2_berger._scalar import FLOAT, FieldScalar
from q2_berger._liealg import OMEGA, SO4
from q2_berger._flag import real_constant
from q2_berger._cohom1 import (
    ARC_SCALE, DT, NEARLY_HALF_FLAT_CONSTANT, ORBIT_LABELS, coframe_rank,
    cohom1_report, d_commutation_defect, expected_omegas, geodesic,
    nearly_half_flat_constant, nk_defect, omega_cubed,
    orbit_phi_restriction, orbit_stabilizer_order, orbit_su3,
    principal_period, pullback_coframe, pullback_mismatch,
    singular_parameters, slag_implies_assoc, slag_sweep)


class PullbackTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_geodesic(self):
        u = geodesic(Fraction(1, 2))
        self.assertEqual(u[0, 3], -1)
        self.assertEqual(u[3, 0], 1)
        self.assertEqual(u[0, 0], 0)
        v = geodesic(0.3, FLOAT)
        self.assertAlmostEqual(v[0, 0], math.cos(0.3))

    def test_exact_pullback_matches_closed_form(self):
        for k in (1, 2, 3, 6, 9, 10):
            self.assertEqual(pullback_mismatch(Fraction(k, 12)), 0.0)

    def test_float_pullback(self):
        for t in (0.1, 1.3, 2.9, 4.4):
            self.assertLess(pullback_mismatch(t, FLOAT), 1e-12)

    def test_printed_omega5_differs(self):
        self.assertGreater(
            pullback_mismatch(Fraction(1, 4), printed=True), 0.1)

    def test_dt_component(self):
        forms = pullback_coframe(Fraction(1, 4))
        for k, form in enumerate(forms):
            expected = ARC_SCALE if k == OMEGA[3] else 0
            self.assertEqual(form.coefficient((DT,)), expected)

    def test_closed_form_values(self):
        omegas = expected_omegas(Fraction(1, 2))
        mu1 = (ORBIT_LABELS.index('μ1'),)
        self.assertEqual(omegas[0].coefficient(mu1),
                         FieldScalar(Fraction(3, 10)))
        self.assertFalse(expected_omegas(Fraction(0))[4])

    def test_d_commutes(self):
        self.assertEqual(d_commutation_defect(Fraction(1, 4)), 0.0)
        self.assertLess(d_commutation_defect(0.7, FLOAT), 1e-12)


class OrbitTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_ranks(self):
        self.assertEqual(coframe_rank(Fraction(1, 4)), SO4.dim)
        for k in range(4):
            self.assertEqual(coframe_rank(Fraction(k, 3)), SO4.dim - 1)

    def test_principal_period(self):
        self.assertAlmostEqual(principal_period(), math.pi / 3, places=7)
        roots = singular_parameters()
        np.testing.assert_allclose(
            roots, [0, math.pi / 3, 2 * math.pi / 3, math.pi], atol=1e-8)

    def test_singular_parameters_error(self):
        with self.assertRaisesRegex(ValueError, 'greater than zero'):
            singular_parameters(t_max=0)

    def test_stabilizer_orders(self):
        self.assertEqual(orbit_stabilizer_order(Fraction(0)), math.inf)
        self.assertEqual(orbit_stabilizer_order(Fraction(1, 4)), 4)
        self.assertEqual(orbit_stabilizer_order(0.5, FLOAT), 4)

    def test_su3_on_singular_orbit(self):
        with self.assertRaisesRegex(ValueError, 'principal orbit'):
            orbit_su3(Fraction(1, 3))

    def test_su3_structure(self):
        su3 = orbit_su3(Fraction(1, 4))
        self.assertNotEqual(omega_cubed(su3), 0)
        self.assertFalse(su3.omega.wedge(su3.re_upsilon))
        self.assertFalse(su3.omega.wedge(su3.im_upsilon))

    def test_phi_restriction(self):
        self.assertEqual(orbit_phi_restriction(Fraction(1, 4)), 0.0)
        self.assertLess(orbit_phi_restriction(0.4, FLOAT), 1e-12)


class TorsionTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_nearly_half_flat(self):
        c, res = nearly_half_flat_constant(Fraction(1, 4))
        self.assertEqual(res, 0.0)
        self.assertEqual(real_constant(c), NEARLY_HALF_FLAT_CONSTANT)
        c, res = nearly_half_flat_constant(0.3, FLOAT)
        self.assertAlmostEqual(real_constant(c), NEARLY_HALF_FLAT_CONSTANT)
        self.assertLess(res, 1e-12)

    def test_not_nearly_kahler(self):
        for t in (0.2, 0.5, 0.9):
            matched, free = nk_defect(t, FLOAT)
            self.assertGreater(matched, 1e-9)
            self.assertGreater(free, 1e-9)
            self.assertGreaterEqual(matched, free - 1e-12)


class SpecialLagrangianTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_sweep(self):
        bad, calibrated = slag_sweep(0.3, samples=20, seed=3)
        self.assertEqual(bad, 0)
        self.assertGreater(calibrated, 0)

    def test_plane_off_the_orbit(self):
        plane = np.eye(7)[[0, 1, 3]]
        with self.assertRaisesRegex(ValueError, 'tangent to the orbit'):
            slag_implies_assoc(0.3, plane)

    def test_associative_plane(self):
        slag, assoc = slag_implies_assoc(0.3, np.eye(7)[[0, 1, 2]])
        self.assertTrue(slag)
        self.assertTrue(assoc)


class Cohom1ReportTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_report(self):
        entries = cohom1_report(Config(threads=1, sweep=10))
        self.assertEqual([e.check_id for e in entries if e.status == FAIL],
                         [])
        ids = [e.check_id for e in entries]
        self.assertIn('cohom1.half-flat.constant', ids)
        self.assertEqual(len(ids), len(set(ids)))


if __name__ == '__main__':
    unittest.main()
