# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""Coefficient domains.

Exact arithmetic in Q(sqrt2, sqrt3, sqrt5), its complexification, and the
float fallback used by trigonometric scans. Exact matrices are numpy arrays
with ``dtype=object`` holding ``FieldScalar`` entries, so the same matrix code
runs in both modes.
"""

import math
from fractions import Fraction
from functools import reduce

import numpy as np


# basis order {1, √2, √3, √5, √6, √10, √15, √30}; bit k of a mask marks the
# k-th prime of (2, 3, 5) under the radical
RADICANDS = (1, 2, 3, 5, 6, 10, 15, 30)
BASIS_LABELS = ('1', '√2', '√3', '√5', '√6', '√10', '√15', '√30')
_MASKS = (0, 1, 2, 4, 3, 5, 6, 7)
_PRIMES = (2, 3, 5)
_INDEX_OF_MASK = {m: i for i, m in enumerate(_MASKS)}
_ROOTS = tuple(math.sqrt(r) for r in RADICANDS)


def _build_product_table():
    table = []
    for mi in _MASKS:
        row = []
        for mj in _MASKS:
            factor = 1
            for bit, p in enumerate(_PRIMES):
                if mi & mj & (1 << bit):
                    factor *= p
            row.append((_INDEX_OF_MASK[mi ^ mj], factor))
        table.append(tuple(row))
    return tuple(table)


_PRODUCT = _build_product_table()


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _normalized(num, den):
    if den == 0:
        raise ZeroDivisionError('FieldScalar with zero denominator')
    if den < 0:
        num = [-n for n in num]
        den = -den
    g = reduce(math.gcd, num, den)
    if g > 1:
        num = [n // g for n in num]
        den //= g
    return tuple(num), den


class FieldScalar:
    """An exact element of Q(√2, √3, √5).

    Stored as eight integer numerators over one positive common denominator,
    in the basis order of ``BASIS_LABELS``.
    """

    __slots__ = ('_num', '_den')

    def __init__(self, coeffs=0):
        if isinstance(coeffs, FieldScalar):
            num, den = coeffs._num, coeffs._den
        elif isinstance(coeffs, (int, Fraction, str, np.integer)):
            fr = Fraction(int(coeffs)) if isinstance(coeffs, np.integer) \
                else Fraction(coeffs)
            num = (fr.numerator,) + (0,) * 7
            den = fr.denominator
        else:
            fracs = [Fraction(c) for c in coeffs]
            if len(fracs) != 8:
                raise ValueError('A FieldScalar needs 8 rational coordinates, '
                                 'got %d.' % len(fracs))
            den = reduce(_lcm, (f.denominator for f in fracs), 1)
            num = [f.numerator * (den // f.denominator) for f in fracs]
        self._num, self._den = _normalized(list(num), den)

    @classmethod
    def _from_parts(cls, num, den):
        obj = cls.__new__(cls)
        obj._num, obj._den = _normalized(list(num), den)
        return obj

    @classmethod
    def radical(cls, n):
        """The basis radical √n for n in ``RADICANDS``."""
        if n not in RADICANDS:
            raise ValueError('√%r is not a basis radical of the field.' % n)
        num = [0] * 8
        num[RADICANDS.index(n)] = 1
        return cls._from_parts(num, 1)

    @classmethod
    def from_strings(cls, strings):
        return cls(Fraction(s) for s in strings)

    @property
    def coeffs(self):
        return tuple(Fraction(n, self._den) for n in self._num)

    def to_strings(self):
        return tuple(str(c) for c in self.coeffs)

    def is_zero(self):
        return not any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def rational_part(self):
        return Fraction(self._num[0], self._den)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldScalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = _lcm(self._den, other._den)
        a, b = den // self._den, den // other._den
        return FieldScalar._from_parts(
            [x * a + y * b for x, y in zip(self._num, other._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._from_parts([-x for x in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = [0] * 8
        for i, x in enumerate(self._num):
            if not x:
                continue
            row = _PRODUCT[i]
            for j, y in enumerate(other._num):
                if y:
                    k, factor = row[j]
                    out[k] += factor * x * y
        return FieldScalar._from_parts(out, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = FieldScalar(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, flip):
        """Apply the automorphism negating the primes marked in ``flip``."""
        num = [x if bin(_MASKS[i] & flip).count('1') % 2 == 0 else -x
               for i, x in enumerate(self._num)]
        return FieldScalar._from_parts(num, self._den)

    def norm(self):
        """The field norm down to Q, a Fraction."""
        total = self
        for flip in range(1, 8):
            total = total * self.galois(flip)
        if not total.is_rational():
            raise ArithmeticError('norm %r is not rational' % (total,))
        return total.rational_part()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError('inverse of the zero FieldScalar')
        partial = FieldScalar(1)
        for flip in range(1, 8):
            partial = partial * self.galois(flip)
        n = self * partial
        return partial * FieldScalar(1 / n.rational_part())

    def conjugate(self):
        return self

    # -- comparison and embedding ---------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self._num, self._den))

    def __float__(self):
        return math.fsum(n * r for n, r in zip(self._num, _ROOTS)) / self._den

    def __abs__(self):
        return self if float(self) >= 0 else -self

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return 'FieldScalar(%s)' % (self.to_strings(),)

    def __str__(self):
        terms = []
        for c, label in zip(self.coeffs, BASIS_LABELS):
            if c:
                terms.append(str(c) if label == '1' else '%s%s' % (c, label))
        return ' + '.join(terms) if terms else '0'


class ComplexScalar:
    """re + i·im with FieldScalar (exact) or float parts."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        self.re = _as_real(re)
        self.im = _as_real(im)

    @property
    def exact(self):
        return isinstance(self.re, FieldScalar) and \
            isinstance(self.im, FieldScalar)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (int, Fraction, FieldScalar, float)):
            return ComplexScalar(other, 0)
        if isinstance(other, complex):
            return ComplexScalar(other.real, other.imag)
        return None

    def _operands(self, other):
        """(self, other) as ComplexScalars, or as complex when either side
        carries a float."""
        if isinstance(other, (np.floating, np.complexfloating)):
            other = complex(other)
        coerced = self._coerce(other)
        if coerced is None:
            return None
        if self.exact and coerced.exact:
            return self, coerced
        return complex(self), complex(coerced)

    def __add__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return a + b
        return ComplexScalar(a.re + b.re, a.im + b.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return a - b
        return ComplexScalar(a.re - b.re, a.im - b.im)

    def __rsub__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __mul__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return a * b
        return ComplexScalar(a.re * b.re - a.im * b.im,
                             a.re * b.im + a.im * b.re)

    __rmul__ = __mul__

    def conjugate(self):
        return ComplexScalar(self.re, -self.im)

    def abs_squared(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        if not self.exact:
            return 1 / complex(self)
        n = self.abs_squared()
        if _is_exact_zero(n):
            raise ZeroDivisionError('inverse of the zero ComplexScalar')
        inv = 1 / n
        return ComplexScalar(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return a / b
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return b / a
        return b * a.inverse()

    def is_zero(self):
        return _is_exact_zero(self.re) and _is_exact_zero(self.im)

    def __eq__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not isinstance(a, ComplexScalar):
            return a == b
        return a.re == b.re and a.im == b.im

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if _is_exact_zero(self.im):
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return 'ComplexScalar(%r, %r)' % (self.re, self.im)


def _as_real(x):
    if isinstance(x, (FieldScalar, float)):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldScalar(x)
    if isinstance(x, np.floating):
        return float(x)
    raise TypeError('%r is not a real scalar' % (x,))


def _is_exact_zero(x):
    if isinstance(x, (FieldScalar, ComplexScalar)):
        return x.is_zero()
    return x == 0


ZERO = FieldScalar(0)
ONE = FieldScalar(1)
SQRT2 = FieldScalar.radical(2)
SQRT3 = FieldScalar.radical(3)
SQRT5 = FieldScalar.radical(5)
SQRT6 = FieldScalar.radical(6)
SQRT10 = FieldScalar.radical(10)
SQRT15 = FieldScalar.radical(15)
SQRT30 = FieldScalar.radical(30)
HALF = FieldScalar(Fraction(1, 2))
TAU = (ONE + SQRT5) * HALF
I = ComplexScalar(0, 1)


class ScalarMode:
    """exact | float, with the float equality tolerance."""

    EXACT = 'exact'
    FLOAT = 'float'

    def __init__(self, tag='exact', tol=1e-9):
        if tag not in (self.EXACT, self.FLOAT):
            raise ValueError('Argument to %r was %r, should be %s.'
                             % ('mode', tag, "'exact' or 'float'"))
        if not tol > 0:
            raise ValueError('Argument to %r was %r, should be %s.'
                             % ('tol', tol, 'greater than zero'))
        self.tag = tag
        self.tol = tol

    @property
    def exact(self):
        return self.tag == self.EXACT

    def coerce(self, x):
        """Map an exact value into this mode's domain."""
        return x if self.exact else to_float(x)

    def array(self, rows):
        return exact_array(rows) if self.exact else float_array(rows)

    def is_zero(self, x):
        if self.exact and isinstance(x, (FieldScalar, ComplexScalar, int,
                                          Fraction)):
            return _is_exact_zero(x)
        return magnitude(x) <= self.tol

    def equal(self, a, b):
        return self.is_zero(a - b)

    def __repr__(self):
        return 'ScalarMode(%r, tol=%r)' % (self.tag, self.tol)


EXACT = ScalarMode('exact')
FLOAT = ScalarMode('float')


# -- named operations ---------------------------------------------------------
def field_mul(a, b):
    return FieldScalar(a) * FieldScalar(b)


def field_inv(a):
    return FieldScalar(a).inverse()


def embed_float(a):
    return float(a)


def embed_complex(z):
    return complex(z)


def field_sqrt(x):
    """√x for a non-negative rational x, when it lies in the field."""
    x = FieldScalar(x)
    if not x.is_rational():
        raise ValueError('field_sqrt only accepts rationals, got %s' % x)
    q = x.rational_part()
    if q < 0:
        raise ValueError('field_sqrt of a negative rational %s' % q)
    if q == 0:
        return FieldScalar(0)
    for r in RADICANDS:
        scaled = q / r
        n, d = scaled.numerator, scaled.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return FieldScalar(Fraction(rn, rd)) * FieldScalar.radical(r)
    raise ValueError('√%s does not lie in Q(√2, √3, √5)' % q)


def to_float(x):
    if isinstance(x, ComplexScalar):
        return complex(x)
    if isinstance(x, complex):
        return x
    return float(x)


def magnitude(x):
    return abs(to_float(x))


def is_exact(x):
    if isinstance(x, ComplexScalar):
        return x.exact
    return isinstance(x, (FieldScalar, ComplexScalar, int, Fraction))


def exact_array(rows):
    """Nested rationals/FieldScalars as an object array of FieldScalars."""
    arr = np.array(rows, dtype=object)
    flat = [v if isinstance(v, (FieldScalar, ComplexScalar))
            else FieldScalar(v) for v in arr.ravel()]
    out = np.empty(arr.shape, dtype=object)
    out.ravel()[:] = flat
    return out


def float_array(rows):
    arr = np.asarray(rows)
    if arr.dtype == object:
        flat = [to_float(v) for v in arr.ravel()]
        kind = complex if any(isinstance(v, complex) for v in flat) else float
        return np.array(flat, dtype=kind).reshape(arr.shape)
    return arr.astype(complex if np.iscomplexobj(arr) else float)


def is_exact_array(arr):
    return isinstance(arr, np.ndarray) and arr.dtype == object


def exact_identity(n):
    return exact_array(np.eye(n, dtype=int).tolist())


def exact_zeros(shape):
    out = np.empty(shape, dtype=object)
    out.ravel()[:] = [ZERO] * out.size
    return out


# -- exact trigonometry -------------------------------------------------------
_COS_TWELFTHS = (
    ONE,
    (SQRT6 + SQRT2) * FieldScalar(Fraction(1, 4)),
    SQRT3 * HALF,
    SQRT2 * HALF,
    HALF,
    (SQRT6 - SQRT2) * FieldScalar(Fraction(1, 4)),
    ZERO,
)


def _cos_twelfth(m):
    m %= 24
    if m > 12:
        m = 24 - m
    if m > 6:
        return -_COS_TWELFTHS[12 - m]
    return _COS_TWELFTHS[m]


def exact_cos_sin(k, d):
    """(cos, sin) of the angle kπ/d, exactly, for d dividing 12."""
    if d <= 0 or 12 % d:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('d', d, 'a divisor of 12'))
    m = k * (12 // d)
    return _cos_twelfth(m), _cos_twelfth(6 - m)


def angle_cos_sin(angle, mode=EXACT):
    """cos/sin of an angle given in radians (float) or as a Fraction of π.

    Fractions with denominator dividing 12 stay exact in exact mode;
    everything else is evaluated in floating point.
    """
    if isinstance(angle, Fraction):
        if mode.exact and 12 % angle.denominator == 0:
            return exact_cos_sin(angle.numerator, angle.denominator)
        angle = float(angle) * math.pi
    return math.cos(angle), math.sin(angle)


# -- exact linear algebra -----------------------------------------------------
def _copy_rows(matrix):
    return [list(row) for row in np.asarray(matrix, dtype=object).tolist()]


def row_reduce(matrix):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = _copy_rows(matrix)
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows)
                      if not _is_exact_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n_rows):
            if i != r and not _is_exact_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def exact_rank(matrix):
    return len(row_reduce(matrix)[1])


def exact_kernel(matrix):
    """Columns spanning the null space, one per free column of the RREF."""
    rows, pivots = row_reduce(matrix)
    n = np.asarray(matrix, dtype=object).shape[1]
    free = [c for c in range(n) if c not in pivots]
    out = exact_zeros((n, len(free)))
    for j, f in enumerate(free):
        out[f, j] = ONE
        for i, p in enumerate(pivots):
            out[p, j] = -rows[i][f]
    return out


def exact_inverse(matrix):
    rows = _copy_rows(matrix)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError('exact_inverse needs a square matrix')
    augmented = [row + [ONE if i == j else ZERO for j in range(n)]
                 for i, row in enumerate(rows)]
    reduced, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError('matrix is singular')
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = reduced[i][n + j]
    return out


def exact_solve(matrix, rhs):
    """Solve M x = b exactly; M may be tall if the system is consistent."""
    rows = _copy_rows(matrix)
    b = list(np.asarray(rhs, dtype=object).ravel())
    n_cols = len(rows[0])
    augmented = [row + [v] for row, v in zip(rows, b)]
    reduced, pivots = row_reduce(augmented)
    if n_cols in pivots:
        raise ValueError('inconsistent linear system')
    if len(pivots) < n_cols:
        raise ValueError('underdetermined linear system')
    out = np.empty(n_cols, dtype=object)
    for i, c in enumerate(pivots):
        out[c] = reduced[i][n_cols]
    return out


def exact_left_inverse(matrix):
    """(MᵀM)⁻¹Mᵀ for a full-column-rank M."""
    m = np.asarray(matrix, dtype=object)
    gram = m.T.dot(m)
    return exact_inverse(gram).dot(m.T)


def is_zero(x):
    """Exact zero test for any scalar; floats compare against 0 exactly."""
    return _is_exact_zero(x)


def conjugate(x):
    if isinstance(x, (FieldScalar, ComplexScalar, complex, float)):
        return x.conjugate()
    return x
