# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import unittest

import numpy as np
from qiime2.plugin.testing import TestPluginBase

from q2_berger._config import Config
from q2_berger._format import CLASSIFICATION_HEADER
from q2_berger._report import FAIL
from q2_berger._scalar import FLOAT, exact_identity, exact_zeros, is_zero
from q2_berger._rep import rotation_x
from q2_berger._g2 import ThreePlane, plane_families
from q2_berger._stab import (
    CYCLE, QUARTER, PlaneFamily, catalogue_group, character_norm, classify,
    conjugate, cyclic_orders, exact_images, group_closure,
    invariance_residual, invariant_subspaces, invariant_three_planes,
    lie_stabilizer_dim, measure_excluded_parameters, stab_report,
    stabilizer_contains, verify_family_stabilizer)


class GroupTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_orders(self):
        for name, order in (('trivial', 1), ('Tet', 12), ('Oct', 24),
                            ('Ico', 60), ('Ico_dodeca', 60), ('Z8', 8),
                            ('D6', 12)):
            group = catalogue_group(name)
            self.assertEqual(group.order, order, name)
            self.assertTrue(group.exact, name)

    def test_inexact_cyclic(self):
        group = catalogue_group('Z5')
        self.assertEqual(group.order, 5)
        self.assertFalse(group.exact)

    def test_contains(self):
        tet = catalogue_group('Tet')
        self.assertTrue(tet.contains(CYCLE))
        self.assertFalse(tet.contains(QUARTER))
        self.assertTrue(catalogue_group('Oct').contains(QUARTER))

    def test_bad_names(self):
        with self.assertRaisesRegex(ValueError, "'group'"):
            catalogue_group('X5')
        with self.assertRaisesRegex(ValueError, "'group'"):
            catalogue_group('Z0')

    def test_rejects_reflections(self):
        with self.assertRaisesRegex(ValueError, 'determinant 1'):
            group_closure([-exact_identity(3)])

    def test_infinite_closure(self):
        with self.assertRaisesRegex(RuntimeError, 'finite group'):
            group_closure([rotation_x(1.0)], cap=50)

    def test_conjugate_by_identity(self):
        oct_group = catalogue_group('Oct')
        moved = conjugate(oct_group, exact_identity(3))
        self.assertEqual(moved.order, 24)
        self.assertTrue(all(oct_group.contains(g) for g in moved))


class DecompositionTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_trivial(self):
        deco = invariant_subspaces(catalogue_group('trivial'))
        self.assertEqual(deco.dims, [7])

    def test_icosahedral(self):
        deco = invariant_subspaces(catalogue_group('Ico'))
        self.assertEqual(sorted(deco.dims), [3, 4])
        self.assertLess(deco.invariance_residual(), 1e-12)

    def test_octahedral(self):
        deco = invariant_subspaces(catalogue_group('Oct'))
        self.assertEqual(sorted(deco.dims), [1, 3, 3])

    def _assert_zero(self, matrix):
        self.assertTrue(all(is_zero(x) for x in matrix.ravel()))

    def test_exact_blocks(self):
        group = catalogue_group('Ico')
        deco = invariant_subspaces(group)
        self.assertTrue(deco.exact)
        images = group.generator_images(exact=True)
        all_images = exact_images(group)
        total = exact_zeros((7, 7))
        for i, block in enumerate(deco.blocks):
            p = deco.exact_projector(i)
            total = total + p
            for r in images:
                self._assert_zero(r.dot(p) - p.dot(r))
            self.assertEqual(character_norm(block.kernel, all_images), 1)
        self._assert_zero(total - exact_identity(7))

    def test_repeated_sign_block(self):
        deco = invariant_subspaces(catalogue_group('Z6'))
        self.assertTrue(deco.exact)
        self.assertEqual(sorted(deco.dims), [1, 2, 2, 2])
        self.assertEqual(sorted(b.multiplicity for b in deco.blocks),
                         [1, 1, 1, 2])
        self.assertLess(deco.invariance_residual(), 1e-12)

    def test_float_group(self):
        deco = invariant_subspaces(catalogue_group('Z5'))
        self.assertFalse(deco.exact)
        self.assertEqual(sorted(deco.dims), [1, 2, 4])
        with self.assertRaisesRegex(ValueError, 'no exact basis'):
            deco.exact_projector(0)

    def test_no_separating_sample(self):
        with self.assertRaisesRegex(RuntimeError, 'No sample separated'):
            invariant_subspaces(catalogue_group('Oct'), attempts=0)


class InvariantPlaneTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_z8(self):
        names = sorted(p.name for p in
                       invariant_three_planes(catalogue_group('Z8')))
        self.assertEqual(names, ['A123', 'A145', 'A167'])

    def test_octahedral(self):
        names = sorted(p.name for p in
                       invariant_three_planes(catalogue_group('Oct')))
        self.assertEqual(names, ['A_Oct', 'W'])

    def test_z5_family(self):
        items = invariant_three_planes(catalogue_group('Z5'))
        families = [p for p in items if isinstance(p, PlaneFamily)]
        self.assertEqual([f.name for f in families], ['Q5'])
        self.assertTrue(families[0].registered)
        member = families[0].member(0.4, mode=FLOAT)
        self.assertTrue(stabilizer_contains(member,
                                            catalogue_group('Z5')))

    def test_exact_invariance(self):
        self.assertEqual(invariance_residual(plane_families('A_Oct'),
                                             catalogue_group('Oct')), 0.0)
        self.assertEqual(invariance_residual(plane_families('A_Ico'),
                                             catalogue_group('Ico')), 0.0)
        self.assertGreater(invariance_residual(plane_families('A_Oct'),
                                               catalogue_group('Ico')), 0.0)

    def test_stabilizers(self):
        self.assertTrue(stabilizer_contains(plane_families('A_Oct'),
                                            catalogue_group('Oct')))
        self.assertFalse(stabilizer_contains(plane_families('A_Oct'),
                                             catalogue_group('Ico')))
        self.assertEqual(lie_stabilizer_dim(plane_families('A123')), 1)
        self.assertEqual(lie_stabilizer_dim(plane_families('A_Ico')), 0)
        self.assertEqual(cyclic_orders(plane_families('A123'), 4),
                         [2, 3, 4])

    def test_generic_family_member(self):
        self.assertTrue(verify_family_stabilizer('Q5', 0.3))

    def test_unregistered_family(self):
        family = PlaneFamily('invariant-family', 'trivial',
                             representative=ThreePlane(np.eye(7)[:3]))
        with self.assertRaisesRegex(ValueError, 'no parametrization'):
            family.member(0.1)

    def test_excluded_parameters(self):
        table = measure_excluded_parameters('Q5')
        self.assertEqual(len(table), 2)
        with self.assertRaisesRegex(ValueError, "'name'"):
            measure_excluded_parameters('Q4b')


class ClassifyTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_z7(self):
        table = classify('Z7')
        self.assertEqual(list(table.columns), CLASSIFICATION_HEADER[1:])
        self.assertEqual(table.index.name, 'row-id')
        self.assertEqual(list(table.index), ['Z7-1', 'Z7-2', 'Z7-3'])
        self.assertEqual(sorted(table['plane']), ['A123', 'A145', 'A167'])
        self.assertTrue((table['associative'] == 'yes').all())
        self.assertTrue(table['stabilizer-verified'].all())

    def test_z6(self):
        table = classify('Z6')
        self.assertEqual(len(table), 7)
        self.assertEqual((table['associative'] == 'yes').sum(), 3)

    def test_unknown_group(self):
        with self.assertRaisesRegex(ValueError, "'group'"):
            classify('Q7')


class StabReportTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_report(self):
        entries = stab_report(Config(threads=1))
        failed = [e.check_id for e in entries if e.status == FAIL]
        self.assertEqual(failed, [])


if __name__ == '__main__':
    unittest.main()
