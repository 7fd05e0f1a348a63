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
import numpy.testing as npt
from qiime2.plugin.testing import TestPluginBase

from q2_berger._scalar import (
    EXACT, FLOAT, ZERO, ONE, HALF, SQRT2, SQRT3, SQRT5, SQRT6, SQRT15, TAU,
    I, ComplexScalar, FieldScalar, ScalarMode, angle_cos_sin, exact_array,
    exact_cos_sin, exact_identity, exact_inverse, exact_rank, exact_solve,
    field_sqrt, float_array, is_exact, magnitude, to_float)


class TestFieldScalar(TestPluginBase):
    package = 'q2_berger.tests'

    def test_radical_products(self):
        self.assertEqual(SQRT2 * SQRT2, 2)
        self.assertEqual(SQRT2 * SQRT3, SQRT6)
        self.assertEqual(SQRT3 * SQRT5, SQRT15)
        self.assertEqual(SQRT6 * SQRT6, 6)

    def test_golden_ratio(self):
        self.assertEqual(TAU * TAU, TAU + 1)
        self.assertEqual(TAU.inverse(), TAU - 1)

    def test_inverse(self):
        x = ONE + SQRT2
        self.assertEqual(x.inverse(), SQRT2 - 1)
        y = SQRT2 + SQRT3 + SQRT5
        self.assertEqual(y * y.inverse(), ONE)
        with self.assertRaises(ZeroDivisionError):
            ZERO.inverse()

    def test_division_by_rationals(self):
        self.assertEqual(SQRT2 / 2, HALF * SQRT2)
        self.assertEqual(1 / SQRT2, HALF * SQRT2)

    def test_galois_and_norm(self):
        self.assertEqual(SQRT2.galois(1), -SQRT2)
        self.assertEqual(SQRT3.galois(1), SQRT3)
        self.assertEqual(SQRT6.galois(1), -SQRT6)
        self.assertEqual((ONE + SQRT2).norm(), 1)
        self.assertEqual(SQRT2.norm(), 16)

    def test_float_embedding(self):
        self.assertAlmostEqual(float(SQRT2), math.sqrt(2), places=15)
        self.assertAlmostEqual(float(TAU), (1 + math.sqrt(5)) / 2, places=15)
        self.assertAlmostEqual(to_float(HALF * SQRT3),
                               math.cos(math.pi / 6))

    def test_never_mixes_with_floats(self):
        with self.assertRaises(TypeError):
            SQRT2 * 0.5
        with self.assertRaises(TypeError):
            SQRT2 + 0.5

    def test_string_round_trip(self):
        x = FieldScalar(Fraction(3, 7)) + SQRT15 * 2
        self.assertEqual(FieldScalar.from_strings(x.to_strings()), x)
        self.assertEqual(x.to_strings()[0], '3/7')

    def test_hash_agrees_on_rationals(self):
        self.assertEqual(hash(FieldScalar(3)), hash(3))
        self.assertEqual(len({SQRT2, SQRT2 * 1, SQRT3}), 2)

    def test_wrong_length(self):
        with self.assertRaisesRegex(ValueError, '8 rational'):
            FieldScalar([1, 2, 3])

    def test_field_sqrt(self):
        self.assertEqual(field_sqrt(Fraction(3, 4)), HALF * SQRT3)
        self.assertEqual(field_sqrt(8), 2 * SQRT2)
        self.assertEqual(field_sqrt(0), ZERO)
        with self.assertRaisesRegex(ValueError, 'Q\\(√2, √3, √5\\)'):
            field_sqrt(7)
        with self.assertRaisesRegex(ValueError, 'negative'):
            field_sqrt(-1)
        with self.assertRaisesRegex(ValueError, 'rationals'):
            field_sqrt(SQRT2)


def random_scalars(rng, n, low=-20, high=20, max_den=6):
    nums = rng.integers(low, high + 1, size=(n, 8))
    dens = rng.integers(1, max_den + 1, size=(n, 8))
    return [FieldScalar([Fraction(int(a), int(b)) for a, b in zip(na, da)])
            for na, da in zip(nums, dens)]


class TestFieldAxioms(TestPluginBase):
    package = 'q2_berger.tests'

    def setUp(self):
        super().setUp()
        self.rng = np.random.default_rng(1234)

    def test_distributive_and_associative(self):
        a, b, c = (random_scalars(self.rng, 1000) for _ in range(3))
        for x, y, z in zip(a, b, c):
            self.assertEqual((x + y) * z, x * z + y * z)
            self.assertEqual(x * (y * z), (x * y) * z)

    def test_double_inverse(self):
        values = [x for x in random_scalars(self.rng, 1000) if x]
        self.assertGreater(len(values), 990)
        for x in values:
            self.assertEqual(x.inverse().inverse(), x)
            self.assertEqual(x * x.inverse(), 1)

    def test_float_embedding_is_a_homomorphism(self):
        a = random_scalars(self.rng, 1000, 0, 10 ** 6, 1)
        b = random_scalars(self.rng, 1000, 0, 10 ** 6, 1)
        products = [float(x * y) for x, y in zip(a, b)]
        sums = [float(x + y) for x, y in zip(a, b)]
        npt.assert_allclose(products,
                            [float(x) * float(y) for x, y in zip(a, b)],
                            rtol=1e-13)
        npt.assert_allclose(sums, [float(x) + float(y) for x, y in zip(a, b)],
                            rtol=1e-13)


class TestComplexScalar(TestPluginBase):
    package = 'q2_berger.tests'

    def test_degrades_to_complex_with_floats(self):
        z = I * 2.0
        self.assertIsInstance(z, complex)
        self.assertEqual(z, 2j)
        self.assertEqual(1.5 * I, 1.5j)
        self.assertEqual(I + 0.5, complex(0.5, 1))
        self.assertEqual(0.5 - I, complex(0.5, -1))
        self.assertEqual(I / 2.0, 0.5j)
        self.assertEqual(1j * ComplexScalar(SQRT2, 0), 1j * math.sqrt(2))
        self.assertIsInstance(ComplexScalar(2.0, 0) * I, complex)
        self.assertFalse(is_exact(ComplexScalar(2.0, 0)))

    def test_unit(self):
        self.assertEqual(I * I, -1)
        self.assertEqual(I.conjugate(), -I)
        self.assertEqual((I * SQRT2).inverse(), -I * HALF * SQRT2)

    def test_modulus(self):
        z = ComplexScalar(3, 4)
        self.assertEqual(z.abs_squared(), 25)
        self.assertEqual(z * z.conjugate(), 25)
        self.assertAlmostEqual(magnitude(z), 5.0)
        self.assertEqual(to_float(z), complex(3, 4))

    def test_is_exact(self):
        self.assertTrue(is_exact(I))
        self.assertTrue(is_exact(Fraction(1, 3)))
        self.assertFalse(is_exact(0.5))


class TestScalarMode(TestPluginBase):
    package = 'q2_berger.tests'

    def test_exact_zero(self):
        self.assertTrue(EXACT.is_zero(SQRT2 - SQRT2))
        self.assertFalse(EXACT.is_zero(SQRT2 - 1))

    def test_float_tolerance(self):
        self.assertTrue(FLOAT.is_zero(1e-12))
        self.assertFalse(FLOAT.is_zero(1e-6))
        self.assertTrue(ScalarMode('float', 1e-3).equal(1.0, 1.0005))

    def test_bad_values(self):
        with self.assertRaisesRegex(ValueError, "'mode'"):
            ScalarMode('symbolic')
        with self.assertRaisesRegex(ValueError, "'tol'"):
            ScalarMode('float', 0)


class TestTrigonometry(TestPluginBase):
    package = 'q2_berger.tests'

    def test_exact_angles(self):
        self.assertEqual(exact_cos_sin(1, 6), (HALF * SQRT3, HALF))
        self.assertEqual(exact_cos_sin(1, 4), (HALF * SQRT2, HALF * SQRT2))
        self.assertEqual(exact_cos_sin(2, 3), (-HALF, HALF * SQRT3))
        self.assertEqual(exact_cos_sin(1, 1), (-ONE, ZERO))

    def test_twelfths(self):
        quarter = FieldScalar(Fraction(1, 4))
        c, s = angle_cos_sin(Fraction(1, 12))
        self.assertEqual(c, (SQRT6 + SQRT2) * quarter)
        self.assertEqual(s, (SQRT6 - SQRT2) * quarter)

    def test_float_fallback(self):
        c, s = angle_cos_sin(Fraction(1, 5))
        self.assertAlmostEqual(c, math.cos(math.pi / 5))
        self.assertIsInstance(c, float)
        c, s = angle_cos_sin(Fraction(1, 6), FLOAT)
        self.assertIsInstance(s, float)
        self.assertAlmostEqual(s, 0.5)
        c, s = angle_cos_sin(1.0)
        self.assertAlmostEqual(c, math.cos(1.0))

    def test_bad_denominator(self):
        with self.assertRaisesRegex(ValueError, 'divisor of 12'):
            exact_cos_sin(1, 5)


class TestExactLinearAlgebra(TestPluginBase):
    package = 'q2_berger.tests'

    def test_inverse(self):
        m = exact_array([[1, SQRT2], [0, 1]])
        inv = exact_inverse(m)
        self.assertEqual(inv.tolist(), [[1, -SQRT2], [0, 1]])
        self.assertEqual(m.dot(inv).tolist(), exact_identity(2).tolist())

    def test_singular(self):
        with self.assertRaises(ZeroDivisionError):
            exact_inverse(exact_array([[1, 2], [2, 4]]))

    def test_rank(self):
        self.assertEqual(exact_rank(exact_array([[1, 2], [2, 4]])), 1)
        self.assertEqual(exact_rank(exact_array([[SQRT2, 1], [2, SQRT2]])),
                         1)
        self.assertEqual(exact_rank(exact_identity(4)), 4)

    def test_complex_inverse(self):
        m = np.array([[I, ONE], [ZERO, I]], dtype=object)
        inv = exact_inverse(m)
        prod = m.dot(inv)
        self.assertEqual(prod[0, 0], 1)
        self.assertEqual(prod[0, 1], 0)
        self.assertEqual(prod[1, 1], 1)

    def test_solve(self):
        m = exact_array([[1, 1], [1, -1], [2, 0]])
        x = exact_solve(m, exact_array([SQRT2 + 1, SQRT2 - 1, 2 * SQRT2]))
        self.assertEqual(x.tolist(), [SQRT2, 1])
        with self.assertRaisesRegex(ValueError, 'inconsistent'):
            exact_solve(m, exact_array([1, 1, 0]))

    def test_float_array(self):
        arr = float_array(exact_array([[HALF, SQRT2]]))
        self.assertEqual(arr.dtype, float)
        npt.assert_allclose(arr, [[0.5, math.sqrt(2)]])


if __name__ == '__main__':
    unittest.main()
