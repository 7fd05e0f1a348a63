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
import numpy.testing as npt
from qiime2.plugin.testing import TestPluginBase

from q2_berger._format import POINTS_HEADER
from q2_berger._report import PASS
from q2_berger._scalar import (
    EXACT, FLOAT, exact_array, exact_identity, float_array)
from q2_berger._rep import random_rotation, rho_2, rotation_x, veronese
from q2_berger._berger import (
    CASES, H_ICO, IDENTITY_POINT, BergerPoint, VeroneseSurface,
    adapted_frame, c_curve, check_frame, coset_rotation, dodeca_intersection,
    dodeca_membership, dodeca_orbit_check, dodecahedron_vertices,
    group_intersection_order, homogeneous_case, intersection_elements,
    match_vertices, nu, orbit_points, orbit_stabilizer_dim,
    orbit_tangent_plane, point_from, points_dataframe, torus_element,
    vectors_dataframe, verify_homogeneous_case)


def _frame(seed):
    q, r = np.linalg.qr(np.random.default_rng(seed).normal(size=(5, 5)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


class PointTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_identity_is_fixed_by_so3(self):
        for k in (1, 2, 5):
            g = rho_2(rotation_x(Fraction(k, 12)))
            self.assertEqual(point_from(g), IDENTITY_POINT)
        g = rho_2(random_rotation(7))
        self.assertLess(point_from(g).distance(IDENTITY_POINT), 1e-12)

    def test_h_ico_moves_identity(self):
        self.assertGreater(point_from(H_ICO).distance(IDENTITY_POINT), 0.1)

    def test_coset_rotation(self):
        g = _frame(1)
        r = random_rotation(2)
        back = coset_rotation(g, g.dot(rho_2(r)))
        npt.assert_allclose(back, r, atol=1e-9)
        self.assertIsNone(coset_rotation(g, _frame(3)))

    def test_check_frame(self):
        with self.assertRaisesRegex(ValueError, '5x5'):
            check_frame(np.eye(3))
        flip = np.diag([-1.0, 1, 1, 1, 1])
        with self.assertRaisesRegex(ValueError, 'determinant 1'):
            check_frame(flip)
        with self.assertRaisesRegex(ValueError, 'orthogonal'):
            check_frame(2 * np.eye(5))

    def test_bad_points(self):
        with self.assertRaisesRegex(ValueError, '35 coefficients'):
            BergerPoint(np.zeros(10))
        with self.assertRaisesRegex(ValueError, 'no frame'):
            BergerPoint(np.zeros(35)).surface()

    def test_torus_element(self):
        t = torus_element(Fraction(1, 2), Fraction(1, 3), EXACT)
        self.assertEqual(t.dtype, object)
        self.assertEqual(t.dot(t.T).tolist(), exact_identity(5).tolist())
        self.assertEqual(torus_element(0.3, 0.1).dtype, float)


class CurveTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_closed(self):
        curve = c_curve(_frame(4), 11)
        self.assertLess(curve[0].distance(curve[-1]), 1e-12)
        self.assertGreater(max(curve[0].distance(p) for p in curve), 0.1)

    def test_too_short(self):
        with self.assertRaisesRegex(ValueError, 'at least 2'):
            c_curve(np.eye(5), 1)


class VeroneseSurfaceTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_nu(self):
        npt.assert_allclose(nu([1.0, 0.0, 0.0]), [1, 0, 0, 0, 0])
        u = np.array([0.0, 0.6, 0.8])
        npt.assert_allclose(nu(u), veronese(u), atol=1e-15)

    def test_contains(self):
        surface = VeroneseSurface(exact_identity(5))
        self.assertTrue(surface.contains(veronese(exact_array([0, 0, 1]))))
        self.assertFalse(surface.contains(exact_array([0, 1, 0, 0, 0])))

    def test_moved_surface(self):
        g = _frame(5)
        surface = VeroneseSurface(g)
        u = np.array([0.6, 0.0, 0.8])
        self.assertTrue(surface.contains(surface.point(u)))
        basis = surface.tangent_plane(u)
        self.assertEqual(basis.shape, (5, 2))
        npt.assert_allclose(basis.T.dot(surface.point(u)), 0.0, atol=1e-8)

    def test_adapted_frame(self):
        e = np.eye(5)
        frame = adapted_frame(e[0], e[1:3])
        npt.assert_allclose(frame[:, :3], e[:, :3], atol=1e-12)
        self.assertAlmostEqual(np.linalg.det(frame), 1.0)
        with self.assertRaisesRegex(ValueError, 'unit vector'):
            adapted_frame(2 * e[0], e[1:3])
        with self.assertRaisesRegex(ValueError, 'orthogonal to p'):
            adapted_frame(e[0], e[0:2])
        with self.assertRaisesRegex(ValueError, 'rank 2'):
            adapted_frame(e[0], np.vstack([e[1], e[1]]))


class HomogeneousOrbitTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_catalogue(self):
        self.assertEqual(list(CASES), ['o123a', 'o123b', 'o145', 'o167',
                                       'ico', 'oct1', 'oct2'])
        with self.assertRaisesRegex(ValueError, "'case'"):
            homogeneous_case('tet')

    def test_base_tangent_planes(self):
        plane = orbit_tangent_plane('so3_irr', H_ICO)
        self.assertAlmostEqual(float(plane.calibration_value()), 1.0)
        self.assertEqual(orbit_stabilizer_dim('so3_irr', H_ICO), 0)
        self.assertEqual(orbit_stabilizer_dim('u2', exact_identity(5)), 1)

    def test_cases(self):
        for name in ('ico', 'oct1', 'o145'):
            result = verify_homogeneous_case(name, EXACT, samples=3)
            self.assertEqual(result.status, PASS, result.details)
        result = verify_homogeneous_case('oct2', FLOAT, samples=3)
        self.assertEqual(result.status, PASS, result.details)

    def test_orbit_points(self):
        points = orbit_points(CASES['ico'], n=4, seed=1)
        self.assertEqual(len(points), 4)
        df = points_dataframe(points, 'ico')
        self.assertEqual(df.index.name, 'point-id')
        self.assertEqual(list(df.columns), POINTS_HEADER[1:])
        self.assertEqual(list(df.index), ['ico-0', 'ico-1', 'ico-2', 'ico-3'])


class DodecahedronTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_vertices(self):
        vertices = dodecahedron_vertices()
        self.assertEqual(vertices.shape, (20, 3))
        for v in vertices:
            self.assertEqual(v.dot(v), 1)

    def test_membership(self):
        results = dodeca_membership()
        self.assertEqual(len(results), 20)
        for inside, value in results:
            self.assertTrue(inside)
            self.assertEqual(value, 1)

    def test_orbit(self):
        self.assertEqual(dodeca_orbit_check(), (20, True))

    def test_intersection_search(self):
        found = dodeca_intersection()
        self.assertEqual(len(found.points), 20)
        self.assertEqual(len(found.images), 10)
        self.assertLess(match_vertices(found.points), 1e-8)

    def test_vectors_dataframe(self):
        df = vectors_dataframe(dodecahedron_vertices(False), 'dodecahedron')
        self.assertEqual(df.shape, (20, 36))
        self.assertTrue((df['x4'] == 0.0).all())
        self.assertEqual(df.loc['dodecahedron-0', 'label'], 'dodecahedron')


class GroupIntersectionTests(TestPluginBase):
    package = 'q2_berger.tests'

    def test_orders(self):
        self.assertEqual(group_intersection_order(
            'Ico_dodeca', exact_identity(5), 'so3', EXACT), 60)
        self.assertEqual(group_intersection_order(
            'Ico_dodeca', H_ICO, 'so3', EXACT), 60)
        self.assertEqual(group_intersection_order(
            'Oct', CASES['oct2'].h, 'so3_std', FLOAT), 4)

    def test_elements(self):
        pairs = intersection_elements('Tet', np.eye(5))
        self.assertEqual(len(pairs), 12)
        g, back = pairs[1]
        npt.assert_allclose(back, float_array(g), atol=1e-9)

    def test_bad_target(self):
        with self.assertRaisesRegex(ValueError, "'target'"):
            group_intersection_order('Tet', np.eye(5), 'so4')


if __name__ == '__main__':
    unittest.main()
