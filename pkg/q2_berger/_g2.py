# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import collections
import itertools
import logging
import math
from fractions import Fraction

import numpy as np
import pandas as pd
from scipy.linalg import expm
from scipy.optimize import brentq, least_squares

from q2_berger._scalar import (
    EXACT, FLOAT, ZERO, ONE, SQRT2, SQRT3, SQRT5, FieldScalar,
    exact_array, float_array, is_exact_array, exact_inverse, field_sqrt,
    angle_cos_sin, is_exact, is_zero, magnitude)
from q2_berger._liealg import (
    BERGER, InvariantForm, OMEGA, COFRAME_LABELS, residual)
from q2_berger._rep import (
    H3, Polynomial, X, Y, Z, harmonic_part, rho_3, random_rotation)
from q2_berger._report import (
    FAIL, MEASURED, Timer, entry, assertion, contradiction)


logger = logging.getLogger(__name__)


def _omega_form(terms):
    """A form in ω1..ω7 from {'123': coeff, ...}, over the Berger coframe."""
    return InvariantForm(BERGER.dim, [
        (tuple(OMEGA[int(ch) - 1] for ch in key), c)
        for key, c in terms.items()])


PHI = _omega_form({'123': 1, '145': 1, '167': -1, '246': 1, '257': 1,
                   '347': 1, '356': -1})

# as printed, with ω256 where ω246 belongs; kept as a negative control
PHI_PRINTED = _omega_form({'123': 1, '145': 1, '167': -1, '256': 1,
                           '257': 1, '347': 1, '356': -1})

STAR_PHI = _omega_form({'4567': 1, '2367': 1, '2345': -1, '1357': 1,
                        '1346': 1, '1256': 1, '1247': -1})

VOLUME = _omega_form({'1234567': 1})

G2Data = collections.namedtuple('G2Data', ['phi', 'star_phi', 'volume'])
G2 = G2Data(PHI, STAR_PHI, VOLUME)


def _phi_tensor(form):
    t = np.zeros((7, 7, 7))
    for key, c in form.terms.items():
        idx = tuple(k - OMEGA[0] for k in key)
        for perm in itertools.permutations(range(3)):
            sign = 1 if sum(1 for a, b in itertools.combinations(perm, 2)
                            if a > b) % 2 == 0 else -1
            t[tuple(idx[p] for p in perm)] = sign * float(c)
    return t


PHI_TENSOR = _phi_tensor(PHI)


def phi_value(u1, u2, u3, form=PHI):
    """φ(u1, u2, u3) for vectors of H3; exact when all entries are exact."""
    vectors = [u1, u2, u3]
    if all(is_exact(x) for u in vectors for x in u):
        total = ZERO
        for key, c in form.terms.items():
            idx = [k - OMEGA[0] for k in key]
            m = [[u[i] for i in idx] for u in vectors]
            det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
            total = total + c * det
        return total
    tensor = PHI_TENSOR if form is PHI else _phi_tensor(form)
    return float(np.einsum('ijk,i,j,k->', tensor, *(float_array(u)
                                                      for u in vectors)))


def unit(k, exact=True):
    """e_k of H3, 1-based."""
    v = [0] * 7
    v[k - 1] = 1
    return exact_array(v) if exact else np.array(v, dtype=float)


def _vec(entries, exact=True):
    v = [ZERO] * 7 if exact else [0.0] * 7
    for k, c in entries.items():
        v[k - 1] = c if exact else float(c)
    return exact_array(v) if exact else np.array(v, dtype=float)


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        total = total + a * b
    return total


class ThreePlane:
    """An oriented 3-plane in H3, spanned by the rows of ``vectors``."""

    def __init__(self, vectors, name='', params=()):
        arr = np.asarray(vectors)
        if arr.shape != (3, 7):
            raise ValueError('A 3-plane needs three vectors of H3, got shape '
                             '%r.' % (arr.shape,))
        self.vectors = arr
        self.name = name
        self.params = tuple(params)
        self._basis = None

    @property
    def exact(self):
        return is_exact_array(self.vectors)

    def __repr__(self):
        label = self.name or 'ThreePlane'
        if self.params:
            label += '(%s)' % ', '.join(str(p) for p in self.params)
        return '<%s>' % label

    def gram(self):
        return self.vectors.dot(self.vectors.T)

    def is_orthonormal(self, tol=1e-9):
        g = self.gram()
        if is_exact_array(g):
            return all(is_zero(g[i, j] - (1 if i == j else 0))
                       for i in range(3) for j in range(3))
        return bool(np.max(np.abs(g - np.eye(3))) <= tol)

    @property
    def basis(self):
        """Oriented orthonormal basis; exact whenever the norms allow it."""
        if self._basis is None:
            self._basis = self._orthonormalize()
        return self._basis

    def _orthonormalize(self):
        if self.exact:
            rows = []
            for v in self.vectors:
                for u in rows:
                    v = v - u * (_dot(v, u) / _dot(u, u))
                rows.append(v)
            try:
                scales = [field_sqrt(_dot(r, r)) for r in rows]
            except ValueError:
                logger.debug('%r has irrational norms; using floats', self)
            else:
                return np.array([r * (1 / s) for r, s in zip(rows, scales)],
                                dtype=object)
        q, r = np.linalg.qr(float_array(self.vectors).T)
        signs = np.sign(np.diag(r))
        signs[signs == 0] = 1
        return (q * signs).T

    def projector(self):
        """Orthogonal projector onto the plane (7×7, exact when possible)."""
        v = self.vectors
        if self.exact:
            return v.T.dot(exact_inverse(self.gram())).dot(v)
        v = float_array(v)
        return v.T.dot(np.linalg.inv(v.dot(v.T))).dot(v)

    def calibration_value(self):
        return phi_value(*self.basis)

    def orientation(self, tol=1e-9):
        """+1 or -1 when the plane is associative with that orientation."""
        value = self.calibration_value()
        if is_exact(value):
            if value == ONE:
                return 1
            if value == -ONE:
                return -1
            return 0
        if abs(value - 1) <= tol:
            return 1
        if abs(value + 1) <= tol:
            return -1
        return 0

    def is_associative(self, tol=1e-9):
        return self.orientation(tol) == 1

    def flipped(self):
        return ThreePlane(self.vectors[[1, 0, 2]], self.name, self.params)

    def oriented(self):
        """The same plane, flipped if φ is negative on it."""
        value = self.calibration_value()
        return self.flipped() if float(value) < 0 else self

    def transformed(self, r3):
        """Apply a 7×7 matrix (e.g. rho_3(g)) to each spanning vector."""
        r3 = np.asarray(r3)
        return ThreePlane(r3.dot(self.vectors.T).T, self.name, self.params)

    def same_subspace(self, other, tol=1e-9):
        diff = self.projector() - other.projector()
        if is_exact_array(diff):
            return all(is_zero(x) for x in diff.ravel())
        return bool(np.max(np.abs(float_array(diff))) <= tol)

    def to_float(self):
        return ThreePlane(float_array(self.vectors), self.name, self.params)


def calibration_value(plane, tol=1e-9):
    """φ(u1, u2, u3) on an oriented orthonormal basis of the plane."""
    if not isinstance(plane, ThreePlane):
        plane = ThreePlane(plane)
        if not plane.is_orthonormal(tol):
            raise ValueError('Argument to %r was not orthonormal, should be '
                             'an orthonormal basis.' % 'plane')
        return phi_value(*plane.vectors)
    return plane.calibration_value()


def associative_exact(vectors):
    """Exact associativity of an unnormalized spanning triple.

    Holds iff φ(v1, v2, v3)² equals the Gram determinant and φ is positive.
    """
    v = np.asarray(vectors)
    value = phi_value(*v)
    g = v.dot(v.T)
    det = (g[0, 0] * (g[1, 1] * g[2, 2] - g[1, 2] * g[2, 1]) -
           g[0, 1] * (g[1, 0] * g[2, 2] - g[1, 2] * g[2, 0]) +
           g[0, 2] * (g[1, 0] * g[2, 1] - g[1, 1] * g[2, 0]))
    return value * value == det and float(value) > 0


# -- harmonic parts of perfect cubes ------------------------------------------
def _celts_matrix():
    columns, weights = [], []
    for e in H3.monomials:
        monomial = Polynomial([(e, ONE)])
        columns.append(H3.coordinates(harmonic_part(monomial, 3)))
        weights.append(math.factorial(3) //
                       (math.factorial(e[0]) * math.factorial(e[1]) *
                        math.factorial(e[2])))
    return np.array(columns, dtype=object).T, weights


CELTS_MATRIX, _CELTS_WEIGHTS = _celts_matrix()
CELTS_MATRIX_FLOAT = float_array(CELTS_MATRIX)


def _cubic_monomials(a):
    return [w * a[0] ** e[0] * a[1] ** e[1] * a[2] ** e[2]
            for w, e in zip(_CELTS_WEIGHTS, H3.monomials)]


def celts(a):
    """H3 coordinates of the harmonic part of (a1 x + a2 y + a3 z)³."""
    if all(is_exact(x) for x in a):
        a = [FieldScalar(x) if isinstance(x, (int, Fraction)) else x
             for x in a]
        return CELTS_MATRIX.dot(np.array(_cubic_monomials(a), dtype=object))
    return CELTS_MATRIX_FLOAT.dot(np.array(_cubic_monomials(
        [float(x) for x in a])))


def celts_polynomial(a):
    """The same harmonic cubic, built by direct expansion."""
    linear = X * a[0] + Y * a[1] + Z * a[2]
    return harmonic_part(linear ** 3, 3)


def fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    polar = np.arccos(1 - 2 * i / n)
    azimuth = np.pi * (1 + 5 ** 0.5) * i
    return np.column_stack([np.cos(azimuth) * np.sin(polar),
                            np.sin(azimuth) * np.sin(polar),
                            np.cos(polar)])


ConeResult = collections.namedtuple('ConeResult',
                                    ['member', 'witness', 'residual'])


def cone_membership(v, grid=10000, threshold=1e-8):
    """Is v the harmonic part of a perfect cube? Returns a witness a."""
    if all(is_exact(x) for x in v) and all(is_zero(x) for x in v):
        return ConeResult(True, np.zeros(3), 0.0)
    v = float_array(v)
    if not np.any(v):
        return ConeResult(True, np.zeros(3), 0.0)

    directions = fibonacci_sphere(grid)
    monomials = np.array([_cubic_monomials(d) for d in directions])
    images = monomials.dot(CELTS_MATRIX_FLOAT.T)
    norms = np.einsum('ij,ij->i', images, images)
    scale = images.dot(v) / norms
    misfit = np.einsum('ij,ij->i', v - scale[:, None] * images,
                       v - scale[:, None] * images)
    best = int(np.argmin(misfit))
    start = directions[best] * np.cbrt(scale[best])

    fit = least_squares(lambda a: celts(a) - v, start, xtol=1e-15,
                        ftol=1e-15, gtol=1e-15, max_nfev=200)
    resid = float(np.linalg.norm(celts(fit.x) - v))
    logger.debug('cone fit for %s: residual %.3e', v, resid)
    return ConeResult(resid < threshold, fit.x, resid)


# -- named planes and families ------------------------------------------------
def _a_oct(exact=True):
    """Orthonormal basis of A_Oct: e1, (√3e2+√5e6)/√8, (√3e3-√5e7)/√8."""
    inv = FieldScalar(Fraction(1, 4)) * SQRT2
    return [_vec({1: ONE}, exact),
            _vec({2: SQRT3 * inv, 6: SQRT5 * inv}, exact),
            _vec({3: SQRT3 * inv, 7: -SQRT5 * inv}, exact)]


def _w_plane(exact=True):
    """Orthonormal basis of W: e5, (√5e2-√3e6)/√8, (√5e3+√3e7)/√8."""
    inv = FieldScalar(Fraction(1, 4)) * SQRT2
    return [_vec({5: ONE}, exact),
            _vec({2: SQRT5 * inv, 6: -SQRT3 * inv}, exact),
            _vec({3: SQRT5 * inv, 7: SQRT3 * inv}, exact)]


def _a_ico(exact=True):
    return [_vec({1: ONE, 5: SQRT3}, exact),
            _vec({2: SQRT3 * (SQRT5 - 1), 6: -(SQRT5 + 3)}, exact),
            _vec({3: SQRT3 * (SQRT5 + 1), 7: 3 - SQRT5}, exact)]


def _angle(theta, mode):
    c, s = angle_cos_sin(theta, mode)
    if mode.exact and not isinstance(c, FieldScalar):
        mode = FLOAT
    return c, s, mode.exact


def _p_vectors(c, s, exact, signs=(1, -1, 1)):
    a, w = _a_oct(exact), _w_plane(exact)
    if not exact:
        c, s = float(c), float(s)
    return [a[i] * c + w[i] * (s * signs[i]) for i in range(3)]


FamilySpec = collections.namedtuple(
    'FamilySpec', ['name', 'arity', 'associative', 'excluded', 'group',
                   'description'])

FAMILIES = collections.OrderedDict([
    ('Q5', FamilySpec('Q5', 1, True,
                      (math.acos(math.sqrt(3 / 5)), math.pi / 2), 'Z5',
                      'span(e1, cosθ e4 + sinθ e7, cosθ e5 + sinθ e6)')),
    ('Q4a', FamilySpec('Q4a', 1, True,
                       (math.acos(math.sqrt(6) / 4), math.pi / 2), 'Z4',
                       'span(e1, cosθ e2 + sinθ e7, cosθ e3 + sinθ e6)')),
    ('Q4b', FamilySpec('Q4b', 2, False, (), 'Z4',
                       'span(cosψ e4 + sinψ e5, cosθ e2 + sinθ e7, '
                       'cosθ e3 + sinθ e6)')),
    ('Q3', FamilySpec('Q3', 2, None,
                      (math.acos(math.sqrt(6) / 3), math.pi / 2), 'Z3',
                      'span(a1 e1 + a6 e6 + a7 e7, cosθ e2 + sinθ e5, '
                      'cosθ e3 + sinθ e4)')),
    ('P', FamilySpec('P', 1, None, (), 'Tet',
                     'span(cosθ a_i ± sinθ w_i), a_i ∈ A_Oct, w_i ∈ W')),
])

ISOLATED = ('A123', 'A145', 'A167', 'A_Ico', 'A_Oct', 'W')
PLANE_NAMES = ISOLATED + tuple(FAMILIES) + ('P_printed',)


def plane_families(name, *params, mode=EXACT):
    """The named plane, or the member of a named family at ``params``.

    Angles are radians, or Fractions meaning multiples of π (exact where
    the cosine lies in the field). Q3 takes (θ, (a1, a6, a7)), the second
    defaulting to (cos 2θ, sin 2θ, 0).
    """
    exact = mode.exact
    if name == 'A123':
        vectors = [unit(1, exact), unit(2, exact), unit(3, exact)]
    elif name == 'A145':
        vectors = [unit(1, exact), unit(4, exact), unit(5, exact)]
    elif name == 'A167':
        vectors = [unit(1, exact), unit(7, exact), unit(6, exact)]
    elif name == 'A_Oct':
        vectors = _a_oct(exact)
    elif name == 'W':
        vectors = _w_plane(exact)
    elif name == 'A_Ico':
        vectors = _a_ico(exact)
    elif name in ('P', 'P_printed'):
        _require(name, params, 1)
        c, s, exact = _angle(params[0], mode)
        signs = (1, -1, 1) if name == 'P' else (1, 1, 1)
        vectors = _p_vectors(c, s, exact, signs)
    elif name == 'Q5':
        _require(name, params, 1)
        c, s, exact = _angle(params[0], mode)
        vectors = [_vec({1: ONE}, exact), _vec({4: c, 7: s}, exact),
                   _vec({5: c, 6: s}, exact)]
    elif name == 'Q4a':
        _require(name, params, 1)
        c, s, exact = _angle(params[0], mode)
        vectors = [_vec({1: ONE}, exact), _vec({2: c, 7: s}, exact),
                   _vec({3: c, 6: s}, exact)]
    elif name == 'Q4b':
        _require(name, params, 2)
        cp, sp, exact_p = _angle(params[0], mode)
        c, s, exact_t = _angle(params[1], mode)
        exact = exact_p and exact_t
        vectors = [_vec({4: cp, 5: sp}, exact), _vec({2: c, 7: s}, exact),
                   _vec({3: c, 6: s}, exact)]
    elif name == 'Q3':
        if len(params) not in (1, 2):
            raise ValueError('Q3 takes θ and optionally (a1, a6, a7).')
        theta = params[0]
        c, s, exact = _angle(theta, mode)
        if len(params) == 2:
            a = params[1]
            exact = exact and all(is_exact(x) for x in a)
        else:
            c2, s2, exact2 = _angle(2 * theta, mode)
            a = (c2, s2, 0)
            exact = exact and exact2
        vectors = [_vec({1: a[0], 6: a[1], 7: a[2]}, exact),
                   _vec({2: c, 5: s}, exact), _vec({3: c, 4: s}, exact)]
    else:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('name', name, 'one of %s'
                            % ', '.join(PLANE_NAMES)))
    if not exact:
        vectors = [float_array(v) for v in vectors]
    return ThreePlane(vectors, name, params)


def _require(name, params, n):
    if len(params) != n:
        raise ValueError('%s takes %d parameter(s), got %d.'
                         % (name, n, len(params)))


# -- scans --------------------------------------------------------------------
def _p_value_and_slope(theta, signs=(1, -1, 1)):
    c, s = math.cos(theta), math.sin(theta)
    u = _p_vectors(c, s, False, signs)
    du = _p_vectors(-s, c, False, signs)
    value = phi_value(*u)
    slope = (phi_value(du[0], u[1], u[2]) + phi_value(u[0], du[1], u[2]) +
             phi_value(u[0], u[1], du[2]))
    return value, slope


def p_roots(grid=360, tol=1e-9):
    """Angles in [0, 2π) where P(θ) is associative.

    Maxima are bracketed by sign changes of the exact derivative along a
    grid offset by half a step, then refined with brentq.
    """
    two_pi = 2 * math.pi
    step = two_pi / grid
    thetas = -step / 2 + step * np.arange(grid + 1)
    slopes = [_p_value_and_slope(t)[1] for t in thetas]
    roots = []
    for a, b, sa, sb in zip(thetas, thetas[1:], slopes, slopes[1:]):
        if sa > 0 >= sb:
            root = brentq(lambda t: _p_value_and_slope(t)[1], a, b,
                          xtol=1e-15)
            value = _p_value_and_slope(root)[0]
            if abs(value - 1) <= tol:
                root = root % two_pi
                if two_pi - root < 1e-9:
                    root = 0.0
                roots.append(root)
    return sorted(roots)


def scan_family(name, samples=50, grid_side=20, seed=0):
    """Calibration values of a family over a parameter sample, as a table."""
    rng = np.random.default_rng(seed)
    if name not in FAMILIES:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('name', name, 'one of %s' % ', '.join(FAMILIES)))
    rows = []
    if name == 'Q4b':
        axis = np.linspace(0, math.pi, grid_side, endpoint=False) + \
            math.pi / (2 * grid_side)
        params = list(itertools.product(axis, axis))
    else:
        params = [(t,) for t in rng.uniform(0, math.pi, samples)]
    for p in params:
        plane = plane_families(name, *p, mode=FLOAT)
        value = plane.calibration_value()
        rows.append((name, ';'.join('%.12g' % x for x in p), value))
    return pd.DataFrame(rows, columns=['family', 'parameters', 'calibration'])


def q3_optimum(theta):
    """Maximize φ over a ∈ S² for Q3(θ, a); returns (a*, max).

    φ is linear in a on this family, so the maximizer is the normalized
    coefficient vector and it is unique whenever that vector is nonzero.
    """
    coeffs = np.array([
        plane_families('Q3', theta, (1.0, 0.0, 0.0), mode=FLOAT)
        .calibration_value(),
        plane_families('Q3', theta, (0.0, 1.0, 0.0), mode=FLOAT)
        .calibration_value(),
        plane_families('Q3', theta, (0.0, 0.0, 1.0), mode=FLOAT)
        .calibration_value()])
    norm = float(np.linalg.norm(coeffs))
    best = coeffs / norm if norm else coeffs
    if norm > 1 + 1e-9:
        contradiction('g2.q3', 'calibration exceeds 1 at θ=%r' % theta)
    return best, norm


def orthonormal_frame(plane):
    return float_array(plane.basis).T


def _gradient(u):
    t = PHI_TENSOR
    g = np.column_stack([np.einsum('ijk,j,k->i', t, u[:, 1], u[:, 2]),
                         np.einsum('ijk,i,k->j', t, u[:, 0], u[:, 2]),
                         np.einsum('ijk,i,j->k', t, u[:, 0], u[:, 1])])
    return g - u.dot(u.T.dot(g))


def _retract(u):
    q, r = np.linalg.qr(u)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1
    return q * signs


def _value(u):
    return float(np.einsum('ijk,i,j,k->', PHI_TENSOR, u[:, 0], u[:, 1],
                           u[:, 2]))


AscentResult = collections.namedtuple(
    'AscentResult', ['plane', 'value', 'iterations', 'trace'])


def calibration_ascent(plane, tol=1e-10, step=0.1, max_iter=500):
    """Projected gradient ascent of φ on the oriented Grassmannian."""
    if not isinstance(plane, ThreePlane):
        plane = ThreePlane(plane)
    u = orthonormal_frame(plane)
    value = _value(u)
    if not value > 0:
        raise ValueError('Argument to %r had calibration value %r, should be '
                         '%s.' % ('plane', value, 'greater than zero'))
    trace = [value]
    iterations = 0
    while value < 1 - tol:
        if iterations >= max_iter:
            raise RuntimeError('Calibration ascent did not converge after %d '
                               'iterations (value %.12f).'
                               % (max_iter, value))
        grad = _gradient(u)
        t = step
        while True:
            candidate = _retract(u + t * grad)
            new = _value(candidate)
            if new > value or t < 1e-12:
                break
            t /= 2
        if new <= value:
            logger.debug('ascent stalled at %.15f', value)
            break
        u, value = candidate, new
        trace.append(value)
        iterations += 1
    if value < 1 - tol:
        raise RuntimeError('Calibration ascent stalled at value %.12f.'
                           % value)
    return AscentResult(ThreePlane(u.T, 'ascent'), value, iterations, trace)


def nearest_associative(plane, tol=1e-10):
    return calibration_ascent(plane, tol=tol).plane


def random_plane(rng):
    q, _ = np.linalg.qr(rng.normal(size=(7, 3)))
    return ThreePlane(q.T, 'random')


def perturbed(plane, angle, rng):
    """Rotate the plane by a random rotation of H3 by ``angle`` radians."""
    a = rng.normal(size=(7, 7))
    a = a - a.T
    a /= np.linalg.norm(a, 2)
    return plane.to_float().transformed(expm(angle * a))


def scan_grassmannian(samples=1000, seed=0, ascents=5):
    """Calibration inequality and ascent over random planes of H3."""
    rng = np.random.default_rng(seed)
    timer = Timer()
    values = np.array([random_plane(rng).calibration_value()
                       for _ in range(samples)])
    worst = float(np.max(np.abs(values))) if samples else 0.0
    entries = [entry('g2.calibration-inequality',
                     '|φ(E)| ≤ 1 on oriented orthonormal planes',
                     max(0.0, worst - 1.0), 1e-12, timer,
                     'max |φ| = %.12f over %d planes' % (worst, samples))]
    timer = Timer()
    rows, converged = [], 0
    for _ in range(ascents):
        plane = random_plane(rng)
        if plane.calibration_value() < 0:
            plane = plane.flipped()
        try:
            result = calibration_ascent(plane)
        except RuntimeError as err:
            logger.warning('ascent failed: %s', err)
            rows.append((plane.calibration_value(), float('nan'), -1))
            continue
        converged += 1
        rows.append((result.trace[0], result.value, result.iterations))
    entries.append(assertion('g2.ascent.random',
                             'gradient ascent reaches an associative plane',
                             converged == ascents, timer,
                             '%d/%d converged' % (converged, ascents)))
    table = pd.DataFrame(rows, columns=['start', 'final', 'iterations'])
    return entries, table


# -- verification -------------------------------------------------------------
def verify_nearly_parallel(mode=EXACT):
    tol = 0.0 if mode.exact else mode.tol

    def conv(form):
        return form if mode.exact else form.to_float()

    timer = Timer()
    d_phi = BERGER.ce_d(conv(PHI))
    r = residual(d_phi, conv(STAR_PHI) * 4)
    out = [entry('g2.nearly-parallel', 'dφ = 4∗φ', r, tol, timer,
                 '' if mode.is_zero(r) else
                 (d_phi - conv(STAR_PHI) * 4).format(COFRAME_LABELS))]

    timer = Timer()
    r = residual(conv(PHI).hodge(OMEGA), conv(STAR_PHI))
    out.append(entry('g2.hodge', '∗φ is the Hodge dual of φ for g = Σω²',
                     r, tol, timer))

    timer = Timer()
    r = residual(conv(PHI).wedge(conv(STAR_PHI)), conv(VOLUME) * 7)
    out.append(entry('g2.volume', 'φ ∧ ∗φ = 7 vol', r, tol, timer))

    timer = Timer()
    dd = BERGER.ce_d(conv(STAR_PHI))
    out.append(entry('g2.d-star-phi', 'd∗φ (coclosed part)',
                     dd.max_coefficient(), tol, timer,
                     dd.format(COFRAME_LABELS), status=MEASURED))

    timer = Timer()
    r_hodge = residual(conv(PHI_PRINTED).hodge(OMEGA), conv(STAR_PHI))
    r_d = residual(BERGER.ce_d(conv(PHI_PRINTED)), conv(STAR_PHI) * 4)
    out.append(assertion('g2.printed-form-control',
                         'the printed ω256 term breaks dφ = 4∗φ',
                         r_hodge > 0 and r_d > 0, timer,
                         'hodge residual %g, dφ residual %g'
                         % (r_hodge, r_d), residual=min(r_hodge, r_d)))
    return out


def _catalogue_entries(mode):
    out = []
    for name, expected in (('A123', 1), ('A145', 1), ('A167', 1),
                           ('A_Oct', 1), ('A_Ico', 1), ('W', 0)):
        timer = Timer()
        value = plane_families(name, mode=mode).calibration_value()
        r = magnitude(value - expected)
        out.append(entry('g2.plane.%s' % name,
                         'φ on %s equals %d' % (name, expected), r,
                         0.0 if is_exact(value) else 1e-12, timer,
                         'value=%s' % value))
    timer = Timer()
    plane = ThreePlane([unit(4), unit(5), unit(6)], 'span(e4,e5,e6)')
    out.append(entry('g2.plane.e456', 'φ vanishes on span(e4, e5, e6)',
                     magnitude(plane.calibration_value()), 0.0, timer))
    return out


def _family_entries(samples, grid_side, seed):
    out = []
    for name in ('Q5', 'Q4a'):
        timer = Timer()
        table = scan_family(name, samples, seed=seed)
        r = float(np.max(np.abs(table['calibration'] - 1)))
        out.append(entry('g2.family.%s' % name,
                         'every %s plane is associative' % name, r, 1e-10,
                         timer, '%d samples' % len(table)))

    timer = Timer()
    table = scan_family('Q4b', grid_side=grid_side)
    top = float(np.max(np.abs(table['calibration'])))
    out.append(assertion('g2.family.Q4b', 'no Q4b plane is associative',
                         top < 1 - 1e-6, timer,
                         'max |φ| = %.3g over %d points' % (top, len(table)),
                         residual=top))

    timer = Timer()
    rng = np.random.default_rng(seed)
    worst, misses = 0.0, 0
    for theta in rng.uniform(0, math.pi, samples):
        best, top = q3_optimum(theta)
        expected = np.array([math.cos(2 * theta), math.sin(2 * theta), 0.0])
        worst = max(worst, abs(top - 1), float(np.max(np.abs(best -
                                                                expected))))
        misses += abs(top - 1) > 1e-10
    out.append(entry('g2.family.Q3', 'Q3(θ, a) is associative exactly at '
                     'a = (cos 2θ, sin 2θ, 0)', worst, 1e-10, timer,
                     'unique maximizer; planes off the optimum: %d' % misses))

    timer = Timer()
    roots = p_roots()
    expected = [0.0, 2 * math.pi / 3, 4 * math.pi / 3]
    if len(roots) == 3:
        r = max(abs(a - b) for a, b in zip(roots, expected))
    else:
        r = float('inf')
    exact_ok = all(plane_families('P', Fraction(k, 3)).calibration_value()
                   == ONE for k in (0, 2, 4))
    out.append(entry('g2.family.P', 'P(θ) is associative iff θ ∈ '
                     '{0, 2π/3, 4π/3}', r, 1e-9, timer,
                     'roots=%s exact=%s' % (['%.12f' % x for x in roots],
                                            exact_ok),
                     status=None if exact_ok else FAIL))
    return out


def _invariance_entries(samples, seed):
    rng = np.random.default_rng(seed)
    timer = Timer()
    worst = 0.0
    for _ in range(samples):
        plane = random_plane(rng)
        g = random_rotation(rng.integers(2 ** 31))
        moved = plane.transformed(rho_3(g))
        worst = max(worst, abs(moved.calibration_value() -
                               plane.calibration_value()))
        worst = max(worst, abs(plane.flipped().calibration_value() +
                               plane.calibration_value()))
    return [entry('g2.so3-invariance', 'φ is SO(3)-invariant and odd in '
                  'the orientation', worst, 1e-12, timer)]


def _cone_entries(grid):
    out = []
    timer = Timer()
    exact_ok = all(is_zero(x) for x in (celts([1, 0, 0]) - unit(1)))
    hit = cone_membership(unit(1, exact=False), grid)
    out.append(assertion('g2.cone.e1', 'e1 is the harmonic part of x³',
                         exact_ok and hit.member, timer,
                         'witness=%s' % np.round(hit.witness, 9),
                         residual=hit.residual))
    timer = Timer()
    miss = cone_membership(unit(2, exact=False), grid)
    out.append(assertion('g2.cone.e2', 'e2 is not on the cone',
                         not miss.member, timer,
                         'residual=%.3g' % miss.residual,
                         residual=miss.residual))
    timer = Timer()
    span = [celts(np.eye(3, dtype=int)[i].tolist()) for i in range(3)]
    a_oct = ThreePlane(span, 'cubes')
    out.append(assertion('g2.cone.a-oct', 'A_Oct is spanned by the cubes '
                         'of x, y, z', a_oct.same_subspace(
                             plane_families('A_Oct')), timer))
    return out


def _ascent_entries(seed):
    rng = np.random.default_rng(seed)
    out = []
    timer = Timer()
    start = perturbed(plane_families('A123'), 0.1, rng)
    if start.calibration_value() < 0:
        start = start.flipped()
    try:
        result = calibration_ascent(start)
        ok, detail = True, '%d iterations, value %.12f' % (
            result.iterations, result.value)
    except RuntimeError as err:
        ok, detail = False, str(err)
    out.append(assertion('g2.ascent.perturbed', 'ascent from a perturbed '
                         'A123 reaches an associative plane', ok, timer,
                         detail))
    timer = Timer()
    result = calibration_ascent(plane_families('A_Oct', mode=FLOAT))
    out.append(assertion('g2.ascent.fixed-point', 'A_Oct is a fixed point '
                         'of the ascent', result.iterations == 0, timer,
                         '%d iterations' % result.iterations))
    return out


def g2_report(config):
    mode = config.scalar_mode
    entries = verify_nearly_parallel(mode)
    entries += _catalogue_entries(mode)
    entries += _family_entries(config.family_samples, config.grid_side,
                               config.seed)
    entries += _invariance_entries(config.orbit_samples * 5, config.seed)
    entries += _cone_entries(config.cone_grid)
    entries += _ascent_entries(config.seed)
    grass, _ = scan_grassmannian(1000, config.seed)
    entries += grass
    logger.info('g2 suite: %d entries', len(entries))
    return entries
