# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""so(5) in adapted coordinates and left-invariant exterior calculus.

The Berger coframe is ordered (γ1, γ2, γ3, ω1, ..., ω7). A left-invariant
1-form θ^k is dual to the basis matrix X_k, and the exterior derivative is
the Chevalley-Eilenberg differential

    dθ^k = -Σ_{i<j} c_ij^k θ^i ∧ θ^j,    [X_i, X_j] = Σ_k c_ij^k X_k,

extended to higher degrees as an antiderivation.
"""

import itertools
import logging
import re
from fractions import Fraction

import numpy as np

from q2_berger._scalar import (
    EXACT, ZERO, ONE, HALF, SQRT2, SQRT3, SQRT5, SQRT6, SQRT10,
    FieldScalar, ComplexScalar, exact_array, float_array, is_exact_array,
    exact_rank, exact_inverse, exact_left_inverse, is_zero, is_exact,
    to_float, magnitude, conjugate)
from q2_berger._report import Timer, entry


logger = logging.getLogger(__name__)

GAMMA_LABELS = ('γ1', 'γ2', 'γ3')
OMEGA_LABELS = tuple('ω%d' % i for i in range(1, 8))
COFRAME_LABELS = GAMMA_LABELS + OMEGA_LABELS
GAMMA = (0, 1, 2)
OMEGA = tuple(range(3, 10))


def _sort_with_sign(indices):
    """Sort a monomial; None when an index repeats."""
    if len(set(indices)) != len(indices):
        return None
    inversions = sum(1 for a, b in itertools.combinations(indices, 2)
                     if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


def _scalar_repr(c):
    if isinstance(c, FieldScalar):
        return str(c)
    if isinstance(c, ComplexScalar):
        return '(%s) + i(%s)' % (c.re, c.im)
    return '%.12g' % c if isinstance(c, float) else str(c)


def serialize_scalar(c):
    if isinstance(c, FieldScalar):
        return list(c.to_strings())
    if isinstance(c, ComplexScalar):
        return {'re': serialize_scalar(c.re), 'im': serialize_scalar(c.im)}
    if isinstance(c, complex):
        return {'re': c.real, 'im': c.imag}
    if isinstance(c, Fraction):
        return str(c)
    return c


class InvariantForm:
    """A sparse exterior form over an ordered coframe of ``dim`` 1-forms.

    Monomials are strictly increasing index tuples; zero coefficients are
    never stored. Coefficients may be FieldScalar, ComplexScalar, float or
    complex, but one form never mixes exact and float coefficients.
    """

    __slots__ = ('dim', '_terms')

    def __init__(self, dim, terms=()):
        self.dim = dim
        self._terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for indices, coeff in items:
            self._accumulate(tuple(indices), coeff)

    def _accumulate(self, indices, coeff):
        if any(not 0 <= i < self.dim for i in indices):
            raise ValueError('Monomial %r is outside a coframe of size %d.'
                             % (indices, self.dim))
        normal = _sort_with_sign(indices)
        if normal is None:
            return
        sign, key = normal
        if isinstance(coeff, (int, Fraction)):
            coeff = FieldScalar(coeff)
        value = self._terms.get(key, 0) + (coeff if sign > 0 else -coeff)
        if is_zero(value):
            self._terms.pop(key, None)
        else:
            self._terms[key] = value

    @classmethod
    def basis(cls, dim, k, coeff=ONE):
        return cls(dim, [((k,), coeff)])

    @classmethod
    def monomial(cls, dim, indices, coeff=ONE):
        return cls(dim, [(indices, coeff)])

    @classmethod
    def constant(cls, dim, coeff):
        return cls(dim, [((), coeff)])

    @classmethod
    def linear(cls, dim, coeffs):
        """The 1-form Σ coeffs[k] θ^k."""
        return cls(dim, [((k,), c) for k, c in enumerate(coeffs)
                         if not is_zero(c)])

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    @property
    def degree(self):
        degrees = {len(k) for k in self._terms}
        if len(degrees) > 1:
            raise ValueError('Form of mixed degree %s.' % sorted(degrees))
        return degrees.pop() if degrees else 0

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, indices):
        normal = _sort_with_sign(tuple(indices))
        if normal is None:
            return ZERO
        sign, key = normal
        c = self._terms.get(key, ZERO)
        return c if sign > 0 else -c

    def is_exact(self):
        return all(is_exact(c) for c in self._terms.values())

    # -- linear structure -----------------------------------------------------
    def _check_dim(self, other):
        if not isinstance(other, InvariantForm):
            return False
        if other.dim != self.dim:
            raise ValueError('Forms over coframes of size %d and %d cannot '
                             'be combined.' % (self.dim, other.dim))
        return True

    def __add__(self, other):
        if not self._check_dim(other):
            return NotImplemented
        out = InvariantForm(self.dim, self._terms)
        for k, c in other._terms.items():
            out._accumulate(k, c)
        return out

    def __neg__(self):
        return InvariantForm(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not self._check_dim(other):
            return NotImplemented
        return self + (-other)

    def scale(self, factor):
        if isinstance(factor, (int, Fraction)):
            factor = FieldScalar(factor) if self.is_exact() else float(factor)
        return InvariantForm(self.dim, [(k, factor * c)
                                        for k, c in self._terms.items()])

    def __mul__(self, factor):
        if isinstance(factor, InvariantForm):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.dim == other.dim and not (self - other)._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    # -- exterior algebra -----------------------------------------------------
    def wedge(self, other):
        self._check_dim(other)
        out = InvariantForm(self.dim)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                normal = _sort_with_sign(a + b)
                if normal is None:
                    continue
                sign, key = normal
                value = ca * cb
                out._accumulate(key, value if sign > 0 else -value)
        return out

    __xor__ = wedge

    def interior(self, k):
        """Contraction with the k-th dual basis vector."""
        out = InvariantForm(self.dim)
        for key, c in self._terms.items():
            if k in key:
                r = key.index(k)
                rest = key[:r] + key[r + 1:]
                out._accumulate(rest, c if r % 2 == 0 else -c)
        return out

    def drop(self, indices):
        """Remove every monomial containing one of ``indices``."""
        indices = set(indices)
        return InvariantForm(self.dim, [(k, c) for k, c in self._terms.items()
                                        if not indices.intersection(k)])

    def only(self, indices):
        """Keep the monomials built from ``indices`` alone."""
        indices = set(indices)
        return InvariantForm(self.dim, [(k, c) for k, c in self._terms.items()
                                        if indices.issuperset(k)])

    def substitute(self, images, dim=None):
        """Pull back along a linear change of coframe.

        ``images[k]`` is the 1-form that θ^k becomes, over a coframe of size
        ``dim``.
        """
        if len(images) != self.dim:
            raise ValueError('Need %d images, got %d.'
                             % (self.dim, len(images)))
        dim = images[0].dim if dim is None else dim
        out = InvariantForm(dim)
        for key, c in self._terms.items():
            product = InvariantForm.constant(dim, c)
            for k in key:
                product = product.wedge(images[k])
                if not product:
                    break
            out = out + product
        return out

    def hodge(self, indices):
        """Hodge star in the orthonormal coframe spanned by ``indices``.

        Orientation is θ^indices[0] ∧ ... ∧ θ^indices[-1]; monomials outside
        the span are rejected.
        """
        order = tuple(indices)
        position = {k: i for i, k in enumerate(order)}
        out = InvariantForm(self.dim)
        for key, c in self._terms.items():
            if not set(key).issubset(position):
                raise ValueError('Monomial %r leaves the span of %r.'
                                 % (key, order))
            complement = tuple(k for k in order if k not in key)
            sign, _ = _sort_with_sign(tuple(position[k] for k in key) +
                                      tuple(position[k] for k in complement))
            out._accumulate(complement, c if sign > 0 else -c)
        return out

    def conjugate(self):
        return self.map_coefficients(conjugate)

    def real_part(self):
        def re(c):
            if isinstance(c, ComplexScalar):
                return c.re
            return c.real if isinstance(c, complex) else c
        return self.map_coefficients(re)

    def imag_part(self):
        def im(c):
            if isinstance(c, ComplexScalar):
                return c.im
            if isinstance(c, complex):
                return c.imag
            return ZERO if is_exact(c) else 0.0
        return self.map_coefficients(im)

    def map_coefficients(self, fn):
        return InvariantForm(self.dim, [(k, fn(c))
                                        for k, c in self._terms.items()])

    def to_float(self):
        return self.map_coefficients(to_float)

    def max_coefficient(self):
        return max((magnitude(c) for c in self._terms.values()), default=0.0)

    def norm(self):
        return float(np.sqrt(sum(magnitude(c) ** 2
                                 for c in self._terms.values())))

    def to_list(self):
        return [[list(k), serialize_scalar(c)] for k, c in self.items()]

    def format(self, labels=None):
        if not self._terms:
            return '0'
        parts = []
        for key, c in self.items():
            if labels is None:
                name = ''.join(str(k + 1) for k in key)
            else:
                name = '∧'.join(labels[k] for k in key)
            parts.append('(%s)%s' % (_scalar_repr(c), name))
        return ' + '.join(parts)

    def __repr__(self):
        return 'InvariantForm(%d, %s)' % (self.dim, self.format())


def residual(a, b):
    """Largest coefficient of a - b."""
    if a.dim != b.dim:
        raise ValueError('Forms over coframes of size %d and %d.'
                         % (a.dim, b.dim))
    if a.is_exact() != b.is_exact():
        a, b = a.to_float(), b.to_float()
    return (a - b).max_coefficient()


# -- matrices -----------------------------------------------------------------
def upper_entries(matrix):
    m = np.asarray(matrix)
    n = m.shape[0]
    return [m[i, j] for i in range(n) for j in range(i + 1, n)]


def antisymmetric(n, upper):
    """An n×n exact antisymmetric matrix from {(i, j): value} for i < j."""
    out = exact_array(np.zeros((n, n), dtype=int).tolist())
    for (i, j), value in upper.items():
        out[i, j] = value
        out[j, i] = -value
    return out


def rotation_generator(i, j, n=5):
    """L_ij = E_ij - E_ji with 1-based indices."""
    return antisymmetric(n, {(i - 1, j - 1): ONE})


def bracket(a, b):
    return a.dot(b) - b.dot(a)


def gamma_matrix(g1, g2, g3):
    """The so(3)_irr part of the Maurer-Cartan form of SO(5)."""
    g1, g2, g3 = (FieldScalar(x) if isinstance(x, (int, Fraction)) else x
                  for x in (g1, g2, g3))
    return antisymmetric(5, {
        (0, 1): -SQRT3 * g3, (0, 2): SQRT3 * g2,
        (1, 2): -g1, (1, 3): -g3, (1, 4): g2,
        (2, 3): -g2, (2, 4): -g3, (3, 4): -2 * g1})


def omega_matrix(w):
    """The H3 part of the Maurer-Cartan form of SO(5)."""
    w1, w2, w3, w4, w5, w6, w7 = (
        FieldScalar(x) if isinstance(x, (int, Fraction)) else x for x in w)
    s = SQRT2 * FieldScalar(Fraction(1, 3))
    upper = {
        (0, 1): -2 * w2, (0, 2): 2 * w3,
        (0, 3): -SQRT10 * w4, (0, 4): SQRT10 * w5,
        (1, 2): -2 * SQRT2 * w1,
        (1, 3): SQRT3 * w2 - SQRT5 * w6, (1, 4): -SQRT3 * w3 + SQRT5 * w7,
        (2, 3): SQRT3 * w3 + SQRT5 * w7, (2, 4): SQRT3 * w2 + SQRT5 * w6,
        (3, 4): SQRT2 * w1}
    return antisymmetric(5, {k: s * v for k, v in upper.items()})


class LieAlgebra:
    """A matrix Lie algebra of antisymmetric matrices with an exact coframe.

    Coordinates of a matrix are read off its upper-triangular entries
    through the inverse (or left inverse) of the pairing system, solved once
    at construction.
    """

    def __init__(self, name, basis, labels):
        if len(basis) != len(labels):
            raise ValueError('%s: %d basis matrices but %d labels.'
                             % (name, len(basis), len(labels)))
        self.name = name
        self.labels = tuple(labels)
        self.basis = [exact_array(b) for b in basis]
        self.dim = len(self.basis)
        self.size = self.basis[0].shape[0]
        pairing = np.array([upper_entries(b) for b in self.basis],
                           dtype=object).T
        if exact_rank(pairing) != self.dim:
            raise ValueError('%s: basis matrices are linearly dependent.'
                             % name)
        if pairing.shape[0] == self.dim:
            self._dual = exact_inverse(pairing)
        else:
            self._dual = exact_left_inverse(pairing)
        self._dual_float = float_array(self._dual)
        self._constants = {}
        self._differentials = {}

    def __repr__(self):
        return 'LieAlgebra(%r, dim=%d)' % (self.name, self.dim)

    def element(self, coords):
        """Σ coords[k] X_k."""
        coords = list(coords)
        exact = all(is_exact(c) for c in coords)
        basis = self.basis if exact else [float_array(b) for b in self.basis]
        out = None
        for c, b in zip(coords, basis):
            if isinstance(c, (int, Fraction)):
                c = FieldScalar(c)
            term = b * c
            out = term if out is None else out + term
        return out

    def coordinates(self, matrix):
        v = upper_entries(matrix)
        if is_exact_array(np.asarray(matrix)):
            return self._dual.dot(np.array(v, dtype=object))
        return self._dual_float.dot(np.array(v))

    def contains(self, matrix, tol=None):
        back = self.element(self.coordinates(matrix))
        diff = np.asarray(back) - np.asarray(matrix)
        if tol is None and is_exact_array(diff):
            return all(is_zero(x) for x in diff.ravel())
        tol = 1e-9 if tol is None else tol
        return float(np.max(np.abs(float_array(diff)))) <= tol

    def structure_constants(self, exact=True):
        """c[i, j, k] with [X_i, X_j] = Σ_k c[i, j, k] X_k."""
        key = 'exact'
        if key not in self._constants:
            c = np.empty((self.dim,) * 3, dtype=object)
            for i in range(self.dim):
                for j in range(self.dim):
                    c[i, j, :] = self.coordinates(
                        bracket(self.basis[i], self.basis[j]))
            self._constants[key] = c
            self._constants['float'] = float_array(c)
        return self._constants['exact' if exact else 'float']

    def d_basis(self, k, exact=True):
        """dθ^k."""
        key = (k, exact)
        if key not in self._differentials:
            c = self.structure_constants(exact)
            self._differentials[key] = InvariantForm(
                self.dim, [((i, j), -c[i, j, k])
                           for i in range(self.dim)
                           for j in range(i + 1, self.dim)
                           if not is_zero(c[i, j, k])])
        return self._differentials[key]

    def ce_d(self, form):
        """The Chevalley-Eilenberg differential of a left-invariant form."""
        if form.dim != self.dim:
            raise ValueError('%s has a coframe of size %d, the form has %d.'
                             % (self.name, self.dim, form.dim))
        exact = form.is_exact()
        out = InvariantForm(self.dim)
        for key, c in form.terms.items():
            for r, k in enumerate(key):
                sign = -1 if r % 2 else 1
                for (i, j), dc in self.d_basis(k, exact).terms.items():
                    normal = _sort_with_sign(key[:r] + (i, j) + key[r + 1:])
                    if normal is None:
                        continue
                    s, new = normal
                    value = c * dc
                    out._accumulate(new, value if s * sign > 0 else -value)
        return out

    def coframe(self, k):
        return InvariantForm.basis(self.dim, k)

    def coframe_images(self, other):
        """This algebra's coframe 1-forms restricted to ``other``.

        ``other`` must consist of matrices of the same size lying in this
        algebra; the images are 1-forms over ``other``'s coframe.
        """
        columns = [self.coordinates(x) for x in other.basis]
        return [InvariantForm.linear(other.dim,
                                     [col[k] for col in columns])
                for k in range(self.dim)]


BERGER = LieAlgebra(
    'so5-berger',
    [gamma_matrix(*row) for row in np.eye(3, dtype=int).tolist()] +
    [omega_matrix(row) for row in np.eye(7, dtype=int).tolist()],
    COFRAME_LABELS)

MU_INDICES = tuple((i, j) for i in range(1, 6) for j in range(i + 1, 6))
MU = LieAlgebra('so5-entries',
                [rotation_generator(i, j) for i, j in MU_INDICES],
                ['μ%d%d' % ij for ij in MU_INDICES])


def _so4_basis():
    h = HALF
    L = rotation_generator
    return [
        (-(L(2, 3) + L(4, 5))) * h,
        (-L(2, 4) + L(3, 5)) * h,
        (-(L(2, 5) + L(3, 4))) * h,
        (L(2, 3) - L(4, 5)) * h,
        (L(2, 4) + L(3, 5)) * h,
        (L(2, 5) - L(3, 4)) * h,
    ]


SO4 = LieAlgebra('so4', _so4_basis(), ('μ1', 'μ2', 'μ3', 'ν1', 'ν2', 'ν3'))


def mu_index(i, j):
    """Position of μ_ij (1-based, i < j) in the MU coframe."""
    return MU_INDICES.index((i, j))


class So5Element:
    """An element of so(5), held as a 5×5 antisymmetric matrix."""

    def __init__(self, matrix, tol=1e-9):
        matrix = np.asarray(matrix)
        if matrix.shape != (5, 5):
            raise ValueError('An so(5) element is a 5x5 matrix, got %r.'
                             % (matrix.shape,))
        sym = matrix + matrix.T
        if is_exact_array(matrix):
            ok = all(is_zero(x) for x in sym.ravel())
        else:
            ok = float(np.max(np.abs(sym))) <= tol
        if not ok:
            raise ValueError('Matrix is not antisymmetric.')
        self.matrix = matrix

    @classmethod
    def from_coords(cls, coords):
        """From adapted coordinates (g1, g2, g3 | w1, ..., w7)."""
        return cls(BERGER.element(coords))

    @classmethod
    def rotation(cls, i, j):
        return cls(rotation_generator(i, j))

    @property
    def coords(self):
        return BERGER.coordinates(self.matrix)

    @property
    def gamma(self):
        return self.coords[:3]

    @property
    def omega(self):
        return self.coords[3:]

    def bracket(self, other):
        return So5Element(bracket(self.matrix, other.matrix))

    def __add__(self, other):
        if not isinstance(other, So5Element):
            return NotImplemented
        return So5Element(self.matrix + other.matrix)

    def __neg__(self):
        return So5Element(-self.matrix)

    def __sub__(self, other):
        if not isinstance(other, So5Element):
            return NotImplemented
        return So5Element(self.matrix - other.matrix)

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)):
            factor = (FieldScalar(factor) if is_exact_array(self.matrix)
                      else float(factor))
        return So5Element(self.matrix * factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, So5Element):
            return NotImplemented
        diff = self.matrix - other.matrix
        if is_exact_array(diff):
            return all(is_zero(x) for x in diff.ravel())
        return float(np.max(np.abs(float_array(diff)))) <= 1e-9

    __hash__ = None

    def to_float(self):
        return So5Element(float_array(self.matrix))

    def __repr__(self):
        return 'So5Element(coords=%s)' % (
            ', '.join(_scalar_repr(c) for c in self.coords))


_S1_NAME = re.compile(r'^s1\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$')

SUBALGEBRAS = ('so3_irr', 'so4', 'u2', 'su2', 'so3_std', 'so2xso3_std',
               't2', 's1')


def subalgebra(name, p=None, q=None):
    """A basis of a named subalgebra of so(5), as So5Elements.

    ``s1`` takes the weights (p, q) either as keywords or in the name,
    e.g. ``'s1(-2,1)'``; its generator is -(p L23 + q L45).
    """
    L = So5Element.rotation
    match = _S1_NAME.match(name.replace(' ', ''))
    if match:
        name, p, q = 's1', int(match.group(1)), int(match.group(2))
    name = name.replace('×', 'x')
    if name == 'so3_irr':
        return [So5Element(b) for b in BERGER.basis[:3]]
    if name == 'so4':
        return [L(i, j) for i in range(2, 6) for j in range(i + 1, 6)]
    if name == 'u2':
        return [L(2, 3), L(4, 5), L(2, 4) + L(3, 5), L(2, 5) - L(3, 4)]
    if name == 'su2':
        return [L(2, 3) - L(4, 5), L(2, 4) + L(3, 5), L(2, 5) - L(3, 4)]
    if name == 'so3_std':
        return [L(3, 4), L(3, 5), L(4, 5)]
    if name == 'so2xso3_std':
        return [L(1, 2), L(3, 4), L(3, 5), L(4, 5)]
    if name == 't2':
        return [L(2, 3), L(4, 5)]
    if name == 's1':
        if p is None or q is None:
            raise ValueError('s1 needs integer weights p and q.')
        return [-(p * L(2, 3) + q * L(4, 5))]
    raise ValueError('Argument to %r was %r, should be %s.'
                     % ('name', name, 'one of %s' % ', '.join(SUBALGEBRAS)))


def span_rank(elements):
    rows = [upper_entries(e.matrix if isinstance(e, So5Element) else e)
            for e in elements]
    if not rows:
        return 0
    arr = np.array(rows, dtype=object)
    if all(is_exact(x) for x in arr.ravel()):
        return exact_rank(arr)
    return int(np.linalg.matrix_rank(float_array(arr), tol=1e-9))


def closure_defect(elements):
    """Number of brackets of basis elements that leave the span."""
    base = span_rank(elements)
    missing = 0
    for a, b in itertools.combinations(elements, 2):
        if span_rank(list(elements) + [a.bracket(b)]) != base:
            missing += 1
    return missing


# -- the structure equations, as displayed ------------------------------------
def _berger_expected():
    g = [BERGER.coframe(k) for k in GAMMA]
    w = [BERGER.coframe(k) for k in OMEGA]
    r10 = SQRT10 * HALF
    r6 = SQRT6 * HALF
    z = InvariantForm(10)
    g1, g2, g3 = g

    connection = [
        [z, SQRT6 * g2, -SQRT6 * g3, z, z, z, z],
        [-SQRT6 * g2, z, g1, -r10 * g3, -r10 * g2, z, z],
        [SQRT6 * g3, -g1, z, r10 * g2, -r10 * g3, z, z],
        [z, r10 * g3, -r10 * g2, z, 2 * g1, -r6 * g3, -r6 * g2],
        [z, r10 * g2, r10 * g3, -2 * g1, z, r6 * g2, -r6 * g3],
        [z, z, z, r6 * g3, -r6 * g2, z, 3 * g1],
        [z, z, z, r6 * g2, r6 * g3, -3 * g1, z],
    ]

    def ww(a, b):
        return w[a - 1].wedge(w[b - 1])

    quadratic = [
        -ww(2, 3) - ww(4, 5) + ww(6, 7),
        ww(1, 3) - ww(4, 6) - ww(5, 7),
        -ww(1, 2) + ww(5, 6) - ww(4, 7),
        ww(1, 5) + ww(2, 6) + ww(3, 7),
        -ww(1, 4) - ww(3, 6) + ww(2, 7),
        -ww(1, 7) - ww(2, 4) + ww(3, 5),
        ww(1, 6) - ww(2, 5) - ww(3, 4),
    ]
    two_thirds = FieldScalar(Fraction(2, 3))
    two_ninths = FieldScalar(Fraction(2, 9))

    d_gamma = [
        -g2.wedge(g3) + two_ninths * (2 * ww(2, 3) + 4 * ww(4, 5) +
                                      6 * ww(6, 7)),
        -g3.wedge(g1) + two_ninths * (
            2 * SQRT6 * ww(1, 2) - SQRT10 * (ww(2, 5) - ww(3, 4)) -
            SQRT6 * (ww(4, 7) - ww(5, 6))),
        -g1.wedge(g2) + two_ninths * (
            -2 * SQRT6 * ww(1, 3) - SQRT10 * (ww(2, 4) + ww(3, 5)) -
            SQRT6 * (ww(4, 6) + ww(5, 7))),
    ]
    d_omega = []
    for a in range(7):
        rhs = two_thirds * quadratic[a]
        for b in range(7):
            rhs = rhs - connection[a][b].wedge(w[b])
        d_omega.append(rhs)
    return d_gamma + d_omega


BERGER_EXPECTED = _berger_expected()


def _convert(form, exact):
    return form if exact else form.to_float()


def verify_berger_structure(mode=EXACT):
    """dθ for all ten coframe forms against the displayed equations."""
    timer = Timer()
    worst, offending = 0.0, []
    for k in range(BERGER.dim):
        computed = BERGER.ce_d(_convert(BERGER.coframe(k), mode.exact))
        expected = _convert(BERGER_EXPECTED[k], mode.exact)
        r = residual(computed, expected)
        worst = max(worst, r)
        if not mode.is_zero(r):
            offending.append('d%s: %s' % (
                COFRAME_LABELS[k],
                (computed - expected).format(COFRAME_LABELS)))
    return entry('structure.berger', 'structure equations of B', worst,
                 mode.tol if not mode.exact else 0.0, timer,
                 '; '.join(offending))


def verify_jacobi(algebra=BERGER, mode=EXACT):
    timer = Timer()
    c = algebra.structure_constants(mode.exact)
    n = algebra.dim
    worst = 0.0
    for i, j, k in itertools.combinations(range(n), 3):
        for m in range(n):
            total = 0
            for l in range(n):
                total = total + (c[i, j, l] * c[l, k, m] +
                                 c[j, k, l] * c[l, i, m] +
                                 c[k, i, l] * c[l, j, m])
            worst = max(worst, magnitude(total))
    antisym = max(magnitude(c[i, j, k] + c[j, i, k])
                  for i in range(n) for j in range(n) for k in range(n))
    return entry('structure.jacobi.%s' % algebra.name,
                 'Jacobi identity of %s' % algebra.name, max(worst, antisym),
                 mode.tol if not mode.exact else 0.0, timer)


def verify_d_squared(algebra=BERGER, mode=EXACT):
    """d∘d = 0 on every coframe 1-form and basis 2-form."""
    timer = Timer()
    worst, offending = 0.0, []
    forms = [InvariantForm.basis(algebra.dim, k)
             for k in range(algebra.dim)]
    forms += [InvariantForm.monomial(algebra.dim, (i, j))
              for i, j in itertools.combinations(range(algebra.dim), 2)]
    for form in forms:
        dd = algebra.ce_d(algebra.ce_d(_convert(form, mode.exact)))
        r = dd.max_coefficient()
        worst = max(worst, r)
        if not mode.is_zero(r):
            offending.append(form.format(algebra.labels))
    return entry('structure.d-squared.%s' % algebra.name,
                 'd² = 0 on %s' % algebra.name, worst,
                 mode.tol if not mode.exact else 0.0, timer,
                 '; '.join(offending))


def verify_splitting(mode=EXACT):
    """so(3)_irr closes and [so(3)_irr, H3] lies in H3."""
    timer = Timer()
    c = BERGER.structure_constants(mode.exact)
    worst = 0.0
    for i in GAMMA:
        for j in GAMMA:
            for k in OMEGA:
                worst = max(worst, magnitude(c[i, j, k]))
        for j in OMEGA:
            for k in GAMMA:
                worst = max(worst, magnitude(c[i, j, k]))
    return entry('structure.splitting', 'so(5) = so(3) ⊕ H3 is reductive',
                 worst, mode.tol if not mode.exact else 0.0, timer)


def verify_subalgebras(mode=EXACT):
    entries = []
    for name in SUBALGEBRAS:
        timer = Timer()
        basis = subalgebra(name, p=-2, q=1)
        if not mode.exact:
            basis = [b.to_float() for b in basis]
        missing = closure_defect(basis)
        entries.append(entry('structure.subalgebra.%s' % name,
                             '%s is a subalgebra of dimension %d'
                             % (name, len(basis)),
                             float(missing), 0.0, timer,
                             'dim=%d' % span_rank(basis)))
    return entries


def structure_report(mode=EXACT):
    return ([verify_berger_structure(mode), verify_jacobi(BERGER, mode),
             verify_d_squared(BERGER, mode), verify_splitting(mode),
             verify_jacobi(SO4, mode), verify_d_squared(SO4, mode)] +
            verify_subalgebras(mode))
