# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import unittest
from fractions import Fraction

import numpy as np
from qiime2.plugin.testing import TestPluginBase

from q2_berger._report import PASS
from q2_berger._scalar import EXACT, FLOAT, ONE, SQRT2, FieldScalar
from q2_berger._liealg import (
    BERGER, BERGER_EXPECTED, COFRAME_LABELS, OMEGA, SO4, SUBALGEBRAS,
    InvariantForm, So5Element, closure_defect, mu_index, residual,
    rotation_generator, span_rank, structure_report, subalgebra,
    verify_berger_structure, verify_d_squared, verify_jacobi,
    verify_splitting)


class InvariantFormTests(TestPluginBase):
    package = 'q2_berger.tests'

    def setUp(self):
        super().setUp()
        self.a = InvariantForm.basis(3, 0)
        self.b = InvariantForm.basis(3, 1)
        self.c = InvariantForm.basis(3, 2)

    def test_wedge_anticommutes(self):
        self.assertEqual(self.a ^ self.b, -(self.b ^ self.a))
        self.assertFalse(self.a ^ self.a)
        self.assertEqual((self.a ^ self.b).coefficient((1, 0)), -1)

    def test_degree(self):
        self.assertEqual((self.a ^ self.b ^ self.c).degree, 3)
        with self.assertRaisesRegex(ValueError, 'mixed degree'):
            (self.a + (self.b ^ self.c)).degree

    def test_interior(self):
        self.assertEqual((self.a ^ self.b).interior(1), -self.a)
        self.assertEqual((self.a ^ self.b).interior(0), self.b)
        self.assertFalse(self.c.interior(0))

    def test_hodge(self):
        order = (0, 1, 2)
        self.assertEqual(self.a.hodge(order), self.b ^ self.c)
        self.assertEqual(self.b.hodge(order), -(self.a ^ self.c))
        with self.assertRaisesRegex(ValueError, 'leaves the span'):
            self.c.hodge((0, 1))

    def test_substitute(self):
        images = [self.a + self.b, self.b, self.c]
        self.assertEqual((self.a ^ self.b).substitute(images),
                         self.a ^ self.b)
        self.assertEqual(self.a.substitute(images), self.a + self.b)

    def test_dimension_checks(self):
        with self.assertRaisesRegex(ValueError, 'outside a coframe'):
            InvariantForm.basis(3, 3)
        with self.assertRaisesRegex(ValueError, 'cannot be combined'):
            self.a + InvariantForm.basis(4, 0)

    def test_scale_and_residual(self):
        two_a = self.a * 2
        self.assertEqual(two_a.coefficient((0,)), 2)
        self.assertEqual(residual(two_a, self.a), 1.0)
        self.assertEqual(residual(self.a, self.a.to_float()), 0.0)
        self.assertAlmostEqual((self.a * SQRT2).norm(), np.sqrt(2))

    def test_format(self):
        form = InvariantForm.monomial(3, (0, 1))
        self.assertEqual(form.format(('a', 'b', 'c')), '(1)a∧b')
        self.assertEqual(InvariantForm(3).format(), '0')


class So5Tests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_coordinates_round_trip(self):
        coords = [1, 0, 0, 0, 0, 0, 0, 0, 0, SQRT2]
        x = So5Element.from_coords(coords)
        self.assertEqual(x.coords.tolist(), coords)
        self.assertEqual(x.gamma.tolist(), [1, 0, 0])

    def test_rejects_bad_matrices(self):
        with self.assertRaisesRegex(ValueError, 'antisymmetric'):
            So5Element(np.ones((5, 5)))
        with self.assertRaisesRegex(ValueError, '5x5'):
            So5Element(np.zeros((4, 4)))

    def test_rotation_bracket(self):
        L = So5Element.rotation
        self.assertEqual(L(1, 2).bracket(L(2, 3)), L(1, 3))
        self.assertEqual(L(1, 2) * 2 - L(1, 2), L(1, 2))

    def test_contains(self):
        self.assertTrue(BERGER.contains(rotation_generator(1, 2)))
        self.assertTrue(SO4.contains(rotation_generator(2, 3)))
        self.assertFalse(SO4.contains(rotation_generator(1, 2)))

    def test_mu_index(self):
        self.assertEqual(mu_index(1, 2), 0)
        self.assertEqual(mu_index(4, 5), 9)


class SubalgebraTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_dimensions(self):
        expected = {'so3_irr': 3, 'so4': 6, 'u2': 4, 'su2': 3,
                    'so3_std': 3, 'so2xso3_std': 4, 't2': 2}
        for name, dim in expected.items():
            self.assertEqual(span_rank(subalgebra(name)), dim, name)

    def test_closed(self):
        for name in SUBALGEBRAS:
            self.assertEqual(closure_defect(subalgebra(name, p=1, q=3)), 0,
                             name)

    def test_not_closed(self):
        L = So5Element.rotation
        self.assertEqual(closure_defect([L(1, 2), L(2, 3)]), 1)

    def test_circle_weights(self):
        (gen,) = subalgebra('s1(-2, 1)')
        L = So5Element.rotation
        self.assertEqual(gen, L(2, 3) * 2 - L(4, 5))

    def test_bad_names(self):
        with self.assertRaisesRegex(ValueError, 'integer weights'):
            subalgebra('s1')
        with self.assertRaisesRegex(ValueError, "'name'"):
            subalgebra('g2')


class StructureEquationTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_berger_structure_exact(self):
        result = verify_berger_structure(EXACT)
        self.assertEqual(result.status, PASS, result.details)
        self.assertEqual(result.residual, 0.0)

    def test_berger_structure_float(self):
        self.assertEqual(verify_berger_structure(FLOAT).status, PASS)

    def test_d_gamma1(self):
        self.assertEqual(BERGER.ce_d(BERGER.coframe(0)), BERGER_EXPECTED[0])

    def test_every_coframe_row(self):
        for k in range(BERGER.dim):
            self.assertEqual(BERGER.ce_d(BERGER.coframe(k)),
                             BERGER_EXPECTED[k], COFRAME_LABELS[k])

    def test_d_omega5_sign(self):
        d_omega5 = BERGER.ce_d(BERGER.coframe(OMEGA[4]))
        self.assertEqual(d_omega5.coefficient((OMEGA[2], OMEGA[5])),
                         FieldScalar(Fraction(-2, 3)))
        self.assertEqual(d_omega5.coefficient((OMEGA[0], OMEGA[3])),
                         FieldScalar(Fraction(-2, 3)))

    def test_jacobi_and_d_squared(self):
        for algebra in (BERGER, SO4):
            self.assertEqual(verify_jacobi(algebra, EXACT).status, PASS)
            self.assertEqual(verify_d_squared(algebra, EXACT).status, PASS)

    def test_reductive(self):
        self.assertEqual(verify_splitting(EXACT).residual, 0.0)

    def test_structure_constants_antisymmetric(self):
        c = BERGER.structure_constants()
        self.assertEqual(c[3, 4, 2], -c[4, 3, 2])
        self.assertIsInstance(c[3, 4, 2], FieldScalar)

    def test_report(self):
        report = structure_report(EXACT)
        self.assertEqual(len(report), 6 + len(SUBALGEBRAS))
        self.assertTrue(all(e.status == PASS for e in report))
        self.assertEqual(len({e.check_id for e in report}), len(report))
        self.assertEqual(ONE, BERGER.coordinates(BERGER.basis[4])[4])


if __name__ == '__main__':
    unittest.main()
