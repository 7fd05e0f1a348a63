# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""The Berger space SO(5)/SO(3) as the space of Veronese surfaces in S⁴.

A point is stored as the pushed-forward invariant cubic g·Υ. The stabilizer
of Υ in SO(5) is exactly rho_2(SO(3)), so equality of cubics is equality of
cosets and no normal form for frames is needed. Surfaces themselves are
never stored: membership always goes through g⁻¹ and the rank-one test of
the rep module.
"""

import collections
import itertools
import logging
import math
from fractions import Fraction

import numpy as np
import pandas as pd
from scipy.linalg import expm, null_space
from scipy.optimize import least_squares, minimize_scalar
from scipy.stats import special_ortho_group

from q2_berger._format import POINTS_HEADER
from q2_berger._scalar import (
    FLOAT, ZERO, SQRT15, SQRT3, TAU, FieldScalar, exact_array, float_array,
    is_exact_array, exact_identity, exact_rank, angle_cos_sin, is_zero,
    magnitude)
from q2_berger._liealg import BERGER, So5Element, subalgebra
from q2_berger._rep import (
    UPSILON, UPSILON_FLOAT, check_orthogonal, membership_residual,
    random_rotation, rho_2, rotation_from_rho2, rotation_x,
    veronese, veronese_membership, veronese_point)
from q2_berger._g2 import (
    ThreePlane, cone_membership, fibonacci_sphere, plane_families)
from q2_berger._stab import (
    CYCLE, FLIP, catalogue_group, lie_stabilizer_dim, stabilizer_contains)
from q2_berger._report import FAIL, Timer, entry, assertion


logger = logging.getLogger(__name__)

_TRIPLES = tuple(itertools.combinations_with_replacement(range(5), 3))


# -- frames and points --------------------------------------------------------
def check_frame(g, tol=1e-9):
    """Raise ValueError unless g is a 5×5 special orthogonal matrix."""
    g = np.asarray(g)
    if g.shape != (5, 5):
        raise ValueError('Argument to %r was of shape %r, should be %s.'
                         % ('frame', g.shape, '5x5'))
    check_orthogonal(g, tol, name='frame')
    if np.linalg.det(float_array(g)) < 0:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('frame', g.tolist(), 'of determinant 1'))
    return g


def _push(tensor, g):
    for _ in range(3):
        tensor = np.tensordot(tensor, g, axes=([0], [1]))
    return tensor


class BergerPoint:
    """g·Υ, held as the 35 entries T[a, b, c] (a ≤ b ≤ c) of the cubic.

    ``frame`` records the g the point was built from, when known.
    """

    def __init__(self, coefficients, frame=None):
        coefficients = np.asarray(coefficients)
        if coefficients.shape != (len(_TRIPLES),):
            raise ValueError('A Berger point has %d coefficients, got %r.'
                             % (len(_TRIPLES), coefficients.shape))
        self.coefficients = coefficients
        self.frame = frame

    @property
    def exact(self):
        return is_exact_array(self.coefficients)

    def to_float(self):
        frame = None if self.frame is None else float_array(self.frame)
        return BergerPoint(float_array(self.coefficients), frame)

    def distance(self, other):
        return float(np.linalg.norm(float_array(self.coefficients) -
                                    float_array(other.coefficients)))

    def equals(self, other, tol=1e-9):
        if self.exact and other.exact:
            return all(is_zero(a - b) for a, b in zip(self.coefficients,
                                                      other.coefficients))
        diff = float_array(self.coefficients) - float_array(other.coefficients)
        return bool(np.max(np.abs(diff)) <= tol)

    def __eq__(self, other):
        if not isinstance(other, BergerPoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def surface(self):
        if self.frame is None:
            raise ValueError('This point carries no frame to decode its '
                             'Veronese surface from.')
        return VeroneseSurface(self.frame)

    def __repr__(self):
        return '<BergerPoint %s>' % ('exact' if self.exact else 'float')


def point_from(g, tol=1e-9):
    """The point g·SO(3) as the cubic (g·Υ)(u, v, w) = Υ(gᵀu, gᵀv, gᵀw)."""
    g = check_frame(g, tol)
    if is_exact_array(g):
        tensor = _push(UPSILON, g)
        coefficients = np.empty(len(_TRIPLES), dtype=object)
        coefficients[:] = [tensor[t] for t in _TRIPLES]
    else:
        g = float_array(g)
        tensor = _push(UPSILON_FLOAT, g)
        coefficients = np.array([tensor[t] for t in _TRIPLES])
    return BergerPoint(coefficients, g)


IDENTITY_POINT = point_from(exact_identity(5))


def coset_rotation(g, g2, tol=1e-9):
    """r ∈ SO(3) with g2 = g·rho_2(r), or None when g, g2 differ in B."""
    m = float_array(g).T.dot(float_array(g2))
    try:
        r = rotation_from_rho2(m)
        if np.max(np.abs(rho_2(r, tol=1e-6) - m)) > tol:
            return None
    except ValueError:
        return None
    return r


# -- the maximal torus and C-curves -------------------------------------------
C_CURVE_WEIGHTS = (-2, 1)
STABILIZING_WEIGHTS = (1, 2)
C_CURVE_PERIOD = 2 * math.pi / 5


def torus_element(a, b, mode=FLOAT):
    """exp(a L23 + b L45); Fraction angles are multiples of π."""
    ca, sa = angle_cos_sin(a, mode)
    cb, sb = angle_cos_sin(b, mode)
    rows = [[1, 0, 0, 0, 0],
            [0, ca, sa, 0, 0],
            [0, -sa, ca, 0, 0],
            [0, 0, 0, cb, sb],
            [0, 0, 0, -sb, cb]]
    if all(isinstance(c, FieldScalar) for c in (ca, sa, cb, sb)):
        return exact_array(rows)
    return float_array(rows)


def one_parameter(p, q, t, mode=FLOAT):
    """The circle S¹(p, q): exp(-t (p L23 + q L45))."""
    return torus_element(-p * t, -q * t, mode)


def c_curve_generator():
    p, q = C_CURVE_WEIGHTS
    return So5Element.rotation(2, 3) * -p + So5Element.rotation(4, 5) * -q


def c_curve_tangent():
    """ω of the C-curve direction at s = 0, independent of the frame."""
    return c_curve_generator().omega


def curve_point(frame, s):
    return point_from(float_array(frame).dot(
        one_parameter(*C_CURVE_WEIGHTS, s)))


def c_curve(frame, n=50):
    """n samples of the S¹(-2, 1)-orbit through frame, closing at the end."""
    if n < 2:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('n', n, 'at least 2'))
    frame = float_array(check_frame(frame))
    return [point_from(frame.dot(one_parameter(
        *C_CURVE_WEIGHTS, Fraction(2 * k, 5 * (n - 1)))))
        for k in range(n)]


def d_surface(frame, n=12):
    """(θ, φ, point) over an n×n grid of the torus frame·exp(θL23 + φL45)."""
    frame = float_array(check_frame(frame))
    angles = 2 * math.pi * np.arange(n) / n
    return [(theta, phi, point_from(frame.dot(torus_element(theta, phi))))
            for theta in angles for phi in angles]


def distance_to_curve(point, frame, samples=200):
    """min over s of |point - curve_point(frame, s)|."""
    frame = float_array(frame)
    grid = np.linspace(0.0, C_CURVE_PERIOD, samples, endpoint=False)

    def dist(s):
        return point.distance(curve_point(frame, s))

    values = [dist(s) for s in grid]
    i = int(np.argmin(values))
    step = grid[1] - grid[0]
    fit = minimize_scalar(dist, bounds=(grid[i] - step, grid[i] + step),
                          method='bounded', options={'xatol': 1e-12})
    return min(float(fit.fun), values[i])


# -- Veronese surfaces --------------------------------------------------------
def nu(u):
    """The Borůvka map on any array of points (..., 3), unnormalized."""
    u = np.asarray(u, dtype=float)
    x, y, z = u[..., 0], u[..., 1], u[..., 2]
    r3 = math.sqrt(3.0)
    return np.stack([x * x - 0.5 * (y * y + z * z), r3 * x * y, r3 * x * z,
                     0.5 * r3 * (y * y - z * z), r3 * y * z], axis=-1)


def _span_projector(columns):
    b = np.asarray(columns, dtype=float)
    return b.dot(np.linalg.inv(b.T.dot(b))).dot(b.T)


class VeroneseSurface:
    """g·Σ0 for a frame g."""

    def __init__(self, frame):
        self.frame = check_frame(frame)
        self._float = float_array(self.frame)
        self._samples = None

    def point(self, u):
        u = np.asarray(u)
        if is_exact_array(self.frame) and is_exact_array(u):
            return self.frame.dot(veronese(u))
        return self._float.dot(veronese(float_array(u)))

    def contains(self, v, tol=1e-9):
        v = np.asarray(v)
        if is_exact_array(self.frame) and is_exact_array(v):
            return veronese_membership(self.frame.T.dot(v))[0]
        return veronese_membership(self._float.T.dot(float_array(v)), tol)[0]

    def tangent_plane(self, u, step=1e-6):
        """Orthonormal 5×2 basis of the tangent plane at g·nu(u)."""
        u = float_array(u)
        directions = null_space(u[None, :]).T
        columns = [(nu(u + step * t) - nu(u - step * t)) / (2 * step)
                   for t in directions]
        q, _ = np.linalg.qr(self._float.dot(np.column_stack(columns)))
        return q

    def tangent_at(self, v):
        return self.tangent_plane(veronese_point(self._float.T.dot(
            float_array(v))))

    def samples(self, n=200):
        if self._samples is None or len(self._samples) != n:
            self._samples = nu(fibonacci_sphere(n)).dot(self._float.T)
        return self._samples


def adapted_frame(p, plane, tol=1e-9):
    """A frame with f1 = p and (f2, f3) an oriented basis of ``plane``.

    ``plane`` is a 2×5 array whose rows span an oriented 2-plane ⊥ p.
    """
    p = float_array(p)
    rows = float_array(plane)
    if p.shape != (5,) or abs(np.linalg.norm(p) - 1) > tol:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('p', p.tolist(), 'a unit vector of H2'))
    if rows.shape != (2, 5) or np.max(np.abs(rows.dot(p))) > tol:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('plane', rows.tolist(),
                            'two vectors orthogonal to p'))
    f2 = rows[0] / np.linalg.norm(rows[0])
    f3 = rows[1] - rows[1].dot(f2) * f2
    if np.linalg.norm(f3) < tol:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('plane', rows.tolist(), 'of rank 2'))
    f3 = f3 / np.linalg.norm(f3)
    rest = null_space(np.vstack([p, f2, f3]))
    frame = np.column_stack([p, f2, f3, rest])
    if np.linalg.det(frame) < 0:
        frame[:, 4] = -frame[:, 4]
    return frame


def gamma_fiber(p, plane, n=20):
    """The C-curve Γ(p, E) of surfaces through p with tangent plane E."""
    return c_curve(adapted_frame(p, plane), n)


def in_gamma_fiber(point, p, plane, tol=1e-8):
    surface = point.surface()
    p = float_array(p)
    if not surface.contains(p, tol):
        return False
    tangent = surface.tangent_at(p)
    diff = _span_projector(tangent) - _span_projector(float_array(plane).T)
    return bool(np.max(np.abs(diff)) <= tol)


# -- homogeneous associative orbits -------------------------------------------
HomogeneousCase = collections.namedtuple(
    'HomogeneousCase', ['name', 'subalgebra', 'h', 'plane', 'stabilizer',
                        'candidate', 'target', 'order', 'description'])


def _h_ico():
    q = FieldScalar(Fraction(1, 4))
    return exact_array([[-q, 0, 0, -SQRT15 * q, 0],
                        [0, 1, 0, 0, 0],
                        [0, 0, 1, 0, 0],
                        [SQRT15 * q, 0, 0, -q, 0],
                        [0, 0, 0, 0, 1]])


H_ICO = _h_ico()
H_OCT = exact_array(np.diag([-1, 1, 1, -1, 1]).tolist())
K_OCT = exact_array([[-1, 0, 0, 0, 0],
                     [0, 0, 0, 0, 1],
                     [0, 0, 0, 1, 0],
                     [0, 1, 0, 0, 0],
                     [0, 0, 1, 0, 0]])
H_123 = exact_array([[0, 0, 1, 0, 0],
                     [0, 0, 0, 1, 0],
                     [0, 0, 0, 0, 1],
                     [1, 0, 0, 0, 0],
                     [0, 1, 0, 0, 0]])
H_145 = exact_array([[0, 0, 1, 0, 0],
                     [1, 0, 0, 0, 0],
                     [0, 1, 0, 0, 0],
                     [0, 0, 0, 1, 0],
                     [0, 0, 0, 0, 1]])

CASES = collections.OrderedDict((c.name, c) for c in [
    HomogeneousCase('o123a', 'so2xso3_std', H_123, 'A123', 'O(2)',
                    None, None, None,
                    'SO(2)×SO(3)_std-orbit with Gauss map in O_123'),
    HomogeneousCase('o123b', 'u2', exact_identity(5), 'A123', 'O(2)',
                    None, None, None,
                    'U(2)-orbit of Σ0 with Gauss map in O_123'),
    HomogeneousCase('o145', 'so2xso3_std', H_145, 'A145', 'O(2)',
                    None, None, None,
                    'SO(2)×SO(3)_std-orbit with Gauss map in O_145'),
    HomogeneousCase('o167', 'u2', H_OCT, 'A167', 'O(2)',
                    None, None, None,
                    'U(2)-orbit with Gauss map in O_167'),
    HomogeneousCase('ico', 'so3_irr', H_ICO, 'A_Ico', 'Ico',
                    'Ico_dodeca', 'so3', 60,
                    'SO(3)-orbit with icosahedral tangent stabilizer'),
    HomogeneousCase('oct1', 'so3_irr', H_OCT, 'A_Oct', 'Oct',
                    'Oct', 'so3', 24,
                    'SO(3)-orbit with octahedral tangent stabilizer'),
    HomogeneousCase('oct2', 'so3_std', K_OCT, 'A_Oct', 'Oct',
                    'Oct', 'so3_std', 4,
                    'SO(3)_std-orbit with octahedral tangent stabilizer'),
])


def homogeneous_case(name):
    try:
        return CASES[name]
    except KeyError:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('case', name, 'one of %s' % ', '.join(CASES)))


def _elements(k):
    if isinstance(k, str):
        return subalgebra(k)
    return [x if isinstance(x, So5Element) else So5Element(x) for x in k]


def orbit_tangent_at(k, frame):
    """ω(Ad(F⁻¹)X) for each X in K: the K-orbit of F·Σ0, translated home."""
    frame = check_frame(frame)
    elements = _elements(k)
    exact = is_exact_array(frame) and all(is_exact_array(x.matrix)
                                          for x in elements)
    if not exact:
        frame = float_array(frame)
    out = []
    for x in elements:
        m = x.matrix if exact else float_array(x.matrix)
        out.append(BERGER.coordinates(frame.T.dot(m).dot(frame))[3:])
    return out


def _independent(vectors):
    exact = all(is_exact_array(v) for v in vectors)
    chosen = []
    for v in vectors:
        trial = np.array(chosen + [v], dtype=object if exact else float)
        rank = (exact_rank(trial) if exact
                else int(np.linalg.matrix_rank(trial, tol=1e-9)))
        if rank == len(trial):
            chosen.append(v)
    return chosen, exact


def _tangent_plane(k, frame, name=''):
    vectors = orbit_tangent_at(k, frame)
    basis, exact = _independent(vectors)
    if len(basis) != 3:
        raise ValueError('The orbit has dimension %d with a %d-dimensional '
                         'stabilizer in K, should have dimension 3.'
                         % (len(basis), len(vectors) - len(basis)))
    logger.debug('orbit %s: %d generators, stabilizer dimension %d', name,
                 len(vectors), len(vectors) - 3)
    return ThreePlane(np.array(basis, dtype=object if exact else float),
                      name).oriented()


def orbit_tangent_plane(k, h, name=''):
    """The tangent 3-plane of the K-orbit of h⁻¹·Σ0: span ω(Ad(h)X)."""
    h = check_frame(h)
    return _tangent_plane(k, h.T, name)


def orbit_stabilizer_dim(k, h):
    vectors = orbit_tangent_at(k, check_frame(h).T)
    return len(vectors) - len(_independent(vectors)[0])


def orbit_frames(case, n=20, seed=0):
    """Frames exp(X)·h⁻¹ for random X in K."""
    case = homogeneous_case(case) if isinstance(case, str) else case
    rng = np.random.default_rng(seed)
    basis = [float_array(x.matrix) for x in subalgebra(case.subalgebra)]
    base = float_array(case.h).T
    frames = []
    for _ in range(n):
        x = sum(c * b for c, b in zip(rng.normal(size=len(basis)), basis))
        frames.append(expm(x).dot(base))
    return frames


def orbit_points(case, n=20, seed=0):
    return [point_from(f) for f in orbit_frames(case, n, seed)]


def tangent_finite_difference_defect(case, t=1e-5):
    """Compare d/dt point_from(exp(tX)F) with the prediction from ω only."""
    case = homogeneous_case(case) if isinstance(case, str) else case
    frame = float_array(case.h).T
    worst = 0.0
    for x in subalgebra(case.subalgebra):
        xm = float_array(x.matrix)
        moved = (point_from(expm(t * xm).dot(frame)).coefficients -
                 point_from(expm(-t * xm).dot(frame)).coefficients) / (2 * t)
        coords = BERGER.coordinates(frame.T.dot(xm).dot(frame))
        y = BERGER.element([0.0] * 3 + list(coords[3:]))
        ahead = point_from(frame.dot(expm(t * y))).coefficients
        behind = point_from(frame.dot(expm(-t * y))).coefficients
        predicted = (ahead - behind) / (2 * t)
        worst = max(worst, float(np.max(np.abs(moved - predicted))))
    return worst


def _stabilizer_problems(case, plane):
    if case.stabilizer == 'O(2)':
        dim = lie_stabilizer_dim(plane)
        return [] if dim == 1 else ['infinitesimal stabilizer has dimension '
                                    '%d, should be 1' % dim]
    problems = []
    if lie_stabilizer_dim(plane) != 0:
        problems.append('continuous stabilizer')
    if not stabilizer_contains(plane, catalogue_group(case.stabilizer)):
        problems.append('not %s-invariant' % case.stabilizer)
    if case.stabilizer == 'Oct' and stabilizer_contains(
            plane, catalogue_group('Ico')):
        problems.append('also Ico-invariant')
    return problems


def verify_homogeneous_case(case, mode, samples=20, seed=0):
    case = homogeneous_case(case) if isinstance(case, str) else case
    timer = Timer()
    h = case.h if mode.exact else float_array(case.h)
    plane = orbit_tangent_plane(case.subalgebra, h, case.name)
    worst = magnitude(plane.calibration_value() - 1)
    problems = []
    if not plane.same_subspace(plane_families(case.plane, mode=mode)):
        problems.append('base tangent plane is not %s' % case.plane)
    for frame in orbit_frames(case, samples, seed):
        moved = _tangent_plane(case.subalgebra, frame, case.name)
        worst = max(worst, abs(float(moved.calibration_value()) - 1))
    problems += _stabilizer_problems(case, plane)
    return entry('berger.orbit.%s' % case.name, case.description, worst,
                 1e-10, timer,
                 '; '.join(problems) or 'tangent %s, stabilizer %s at base '
                 'and %d translates' % (case.plane, case.stabilizer, samples),
                 status=FAIL if problems else None)


def verify_homogeneous_catalogue(mode, samples=20, seed=0):
    return [verify_homogeneous_case(case, mode, samples, seed)
            for case in CASES.values()]


# -- the dodecahedron and group intersections ---------------------------------
def dodecahedron_vertices(exact=True):
    """(±1, ±1, ±1)/√3 and the cyclic shifts of (0, ±τ, ±1/τ)/√3."""
    third = SQRT3 * FieldScalar(Fraction(1, 3))
    t, ti = TAU * third, (TAU - 1) * third
    rows = [[third * a, third * b, third * c]
            for a, b, c in itertools.product((1, -1), repeat=3)]
    for a, b in itertools.product((1, -1), repeat=2):
        rows.append([ZERO, t * a, ti * b])
        rows.append([ti * a, ZERO, t * b])
        rows.append([t * a, ti * b, ZERO])
    vertices = exact_array(rows)
    return vertices if exact else float_array(vertices)


def _matrix_batch(w):
    r = math.sqrt(3.0) / 2
    m = np.empty(w.shape[:-1] + (3, 3))
    m[..., 0, 0] = w[..., 0]
    m[..., 0, 1] = m[..., 1, 0] = r * w[..., 1]
    m[..., 0, 2] = m[..., 2, 0] = r * w[..., 2]
    m[..., 1, 1] = -0.5 * w[..., 0] + r * w[..., 3]
    m[..., 2, 2] = -0.5 * w[..., 0] - r * w[..., 3]
    m[..., 1, 2] = m[..., 2, 1] = r * w[..., 4]
    return m


def _rank_one_defect(u, h):
    """|N² - (3/2)N| for N = matrix_of(h·nu(u)) + I/2, over an array of u."""
    n = _matrix_batch(nu(u).dot(h.T)) + 0.5 * np.eye(3)
    d = np.einsum('...ij,...jk->...ik', n, n) - 1.5 * n
    return np.sqrt(np.einsum('...ij,...ij->...', d, d))


def _grid_minima(values):
    padded = np.pad(values, ((1, 1), (0, 0)), constant_values=np.inf)
    rows = values.shape[0]
    minimum = np.ones(values.shape, dtype=bool)
    for dt, dp in itertools.product((-1, 0, 1), repeat=2):
        if dt == dp == 0:
            continue
        neighbour = np.roll(padded, -dp, axis=1)[1 + dt:1 + dt + rows]
        minimum &= values <= neighbour
    return np.argwhere(minimum)


DodecaIntersection = collections.namedtuple(
    'DodecaIntersection', ['points', 'images', 'residuals'])


def dodeca_intersection(h=H_ICO, grid=(256, 512), tol=1e-10, seed_below=0.25):
    """Unit u with nu(u) ∈ Σ0 ∩ h⁻¹·Σ0, i.e. h·nu(u) on the Veronese surface.

    Seeds are the local minima of the rank-one defect on a (θ, φ) grid,
    each refined by least squares and merged at distance 1e-6.
    """
    h = float_array(check_frame(h))
    n_theta, n_phi = grid
    theta = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    phi = np.arange(n_phi) * 2 * math.pi / n_phi
    t, p = np.meshgrid(theta, phi, indexing='ij')
    sphere = np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p),
                       np.cos(t)], axis=-1)
    defect = _rank_one_defect(sphere, h)
    seeds = [sphere[i, j] for i, j in _grid_minima(defect)
             if defect[i, j] < seed_below]
    logger.debug('dodecahedron search: %d seeds', len(seeds))

    def residual(x):
        u = x / np.linalg.norm(x)
        d = membership_residual(h.dot(nu(u)))
        return np.append(d[np.triu_indices(3)], x.dot(x) - 1)

    points, residuals = [], []
    for start in seeds:
        fit = least_squares(residual, start, xtol=1e-15, ftol=1e-15,
                            gtol=1e-15)
        u = fit.x / np.linalg.norm(fit.x)
        r = float(_rank_one_defect(u, h))
        if r > tol:
            continue
        if all(np.linalg.norm(u - q) > 1e-6 for q in points):
            points.append(u)
            residuals.append(r)
    order = np.lexsort(np.round(np.array(points), 9).T[::-1]) if points \
        else []
    points = np.array(points).reshape(-1, 3)[order]
    residuals = np.array(residuals)[order]
    images = []
    for u in points:
        v = nu(u)
        if all(np.linalg.norm(v - w) > 1e-6 for w in images):
            images.append(v)
    return DodecaIntersection(points, np.array(images).reshape(-1, 5),
                              residuals)


def match_vertices(points, vertices=None):
    """max over both sets of the distance to the nearest point of the other."""
    vertices = dodecahedron_vertices(False) if vertices is None else vertices
    if not len(points):
        return float('inf')
    d = np.linalg.norm(points[:, None, :] - vertices[None, :, :], axis=-1)
    return float(max(d.min(axis=0).max(), d.min(axis=1).max()))


def dodeca_membership(exact=True, h=H_ICO):
    """For each displayed vertex: (h·nu(u) on Σ0?, Υ(h·nu(u)))."""
    if not exact:
        h = float_array(h)
    out = []
    for u in dodecahedron_vertices(exact):
        out.append(veronese_membership(h.dot(veronese(u))))
    return out


def dodeca_orbit_check(group='Ico_dodeca'):
    """(orbit size of the first vertex, vertex set preserved?) under G."""
    group = catalogue_group(group) if isinstance(group, str) else group
    vertices = dodecahedron_vertices(group.exact)
    key = (tuple if group.exact
           else (lambda v: tuple(np.round(v, 9) + 0.0)))
    everything = {key(v) for v in vertices}
    orbit = {key(g.dot(vertices[0])) for g in group}
    preserved = all({key(g.dot(v)) for v in vertices} == everything
                    for g in group.generators)
    return len(orbit), preserved and orbit == everything


def _in_target(m, target, tol):
    if target == 'so3':
        return point_from(m, tol).equals(IDENTITY_POINT, tol)
    if target == 'so3_std':
        ident = exact_identity(5) if is_exact_array(m) else np.eye(5)
        diff = m[:, :2] - ident[:, :2]
        if is_exact_array(diff):
            return all(is_zero(x) for x in diff.ravel())
        return bool(np.max(np.abs(diff)) <= tol)
    raise ValueError('Argument to %r was %r, should be %s.'
                     % ('target', target, "'so3' or 'so3_std'"))


def intersection_elements(candidate, h, target='so3', tol=1e-9):
    """(g, g′) for g in the candidate group with h·rho_2(g)·h⁻¹ in the target.

    g′ is the rotation reconstructed from h·rho_2(g)·h⁻¹ when the target is
    rho_2(SO(3)) (membership there means preserving Υ), else None.
    """
    group = catalogue_group(candidate) if isinstance(candidate, str) \
        else candidate
    h = float_array(check_frame(h))
    out = []
    for g in group:
        m = h.dot(rho_2(float_array(g))).dot(h.T)
        if _in_target(m, target, tol):
            out.append((g, rotation_from_rho2(m) if target == 'so3'
                        else None))
    return out


def group_intersection_order(candidate, h, target='so3', mode=FLOAT):
    """|{g ∈ G : h·rho_2(g)·h⁻¹ ∈ target}|.

    The set is a subgroup, so in exact mode the count is |G| as soon as
    every generator passes the exact test; otherwise every element is
    tested in floating point.
    """
    group = catalogue_group(candidate) if isinstance(candidate, str) \
        else candidate
    h = check_frame(h)
    if mode.exact and group.exact and is_exact_array(h):
        ht = h.T
        if all(_in_target(h.dot(rho_2(g)).dot(ht), target, mode.tol)
               for g in group.generators):
            return group.order
    return len(intersection_elements(group, h, target, mode.tol))


# -- export -------------------------------------------------------------------
def points_dataframe(points, label):
    rows = [['%s-%d' % (label, i), label] +
            float_array(p.coefficients).tolist()
            for i, p in enumerate(points)]
    return pd.DataFrame(rows, columns=POINTS_HEADER).set_index('point-id')


def vectors_dataframe(vectors, label):
    """Unit vectors, padded with zeros to the coefficient columns."""
    width = len(POINTS_HEADER) - 2
    rows = []
    for i, v in enumerate(vectors):
        v = list(float_array(v))
        rows.append(['%s-%d' % (label, i), label] + v +
                    [0.0] * (width - len(v)))
    return pd.DataFrame(rows, columns=POINTS_HEADER).set_index('point-id')


# -- report -------------------------------------------------------------------
def _exact_rotations():
    return [rotation_x(Fraction(k, 12)) for k in (1, 2, 3, 5, 8)] + \
        [CYCLE, FLIP, CYCLE.dot(rotation_x(Fraction(1, 4)))]


def _random_frame(rng):
    return special_ortho_group.rvs(5, random_state=int(rng.integers(2 ** 31)))


def _point_entries(mode, samples, seed):
    rng = np.random.default_rng(seed)
    out = []

    timer = Timer()
    base = point_from(exact_identity(5) if mode.exact else np.eye(5))
    expected = np.empty(len(_TRIPLES), dtype=object)
    expected[:] = [UPSILON[t] for t in _TRIPLES]
    if base.exact:
        r = max(magnitude(a - b) for a, b in zip(base.coefficients, expected))
    else:
        r = float(np.max(np.abs(base.coefficients - float_array(expected))))
    out.append(entry('berger.point.identity', 'the identity coset is the '
                     'invariant cubic Υ', r, 0.0 if mode.exact else 1e-15,
                     timer))

    timer = Timer()
    exact_ok = True
    if mode.exact:
        exact_ok = all(point_from(rho_2(g)).equals(base)
                       for g in _exact_rotations())
    worst = max(point_from(rho_2(random_rotation(rng.integers(2 ** 31))))
                .distance(base) for _ in range(samples))
    out.append(entry('berger.point.stabilizer', 'rho_2(SO(3)) fixes the '
                     'identity coset', worst, 1e-12, timer,
                     '%d random rotations' % samples,
                     status=None if exact_ok else FAIL))

    timer = Timer()
    gap = point_from(H_ICO if mode.exact else float_array(H_ICO)).distance(
        base)
    out.append(assertion('berger.point.distinct', 'h_Ico moves the identity '
                         'coset', gap > 0.1, timer, 'distance %.6f' % gap))

    timer = Timer()
    worst, separated, recovered = 0.0, 0, 0
    for _ in range(samples):
        g = _random_frame(rng)
        r = random_rotation(rng.integers(2 ** 31))
        g2 = g.dot(rho_2(r))
        worst = max(worst, point_from(g).distance(point_from(g2)))
        back = coset_rotation(g, g2)
        if back is not None and np.max(np.abs(back - r)) <= 1e-9:
            recovered += 1
        g3 = _random_frame(rng)
        if (point_from(g).distance(point_from(g3)) > 1e-3 and
                coset_rotation(g, g3) is None):
            separated += 1
    ok = recovered == samples and separated == samples
    out.append(entry('berger.point.cosets', 'points agree exactly on cosets '
                     'of rho_2(SO(3))', worst, 1e-12, timer,
                     '%d/%d rotations recovered, %d/%d distinct pairs '
                     'separated' % (recovered, samples, separated, samples),
                     status=None if ok else FAIL))
    return out


def _curve_entries(mode, seed):
    rng = np.random.default_rng(seed)
    out = []

    timer = Timer()
    if mode.exact:
        base = IDENTITY_POINT
        moved = [point_from(one_parameter(*STABILIZING_WEIGHTS,
                                          Fraction(k, 12), mode))
                 for k in range(24)]
        ok = all(p.equals(base) for p in moved)
        r = 0.0 if ok else max(p.distance(base) for p in moved)
    else:
        frame = _random_frame(rng)
        base = point_from(frame)
        r = max(point_from(frame.dot(one_parameter(*STABILIZING_WEIGHTS, t)))
                .distance(base) for t in rng.uniform(0, 2 * math.pi, 24))
    out.append(entry('berger.c-curve.stabilizing-circle', 'S¹(1,2) lies in '
                     'rho_2(SO(3)) and fixes points', r,
                     0.0 if mode.exact else 1e-12, timer))

    frame = _random_frame(rng)
    timer = Timer()
    curve = c_curve(frame, 50)
    closing = curve[0].distance(curve[-1])
    spread = max(curve[0].distance(p) for p in curve)
    out.append(entry('berger.c-curve.closed', 'the S¹(-2,1)-orbit closes at '
                     '2π/5 and is not constant', closing, 1e-12, timer,
                     'spread %.6f' % spread,
                     status=None if spread > 0.1 else FAIL))

    timer = Timer()
    worst = max(distance_to_curve(p, frame)
                for _, _, p in d_surface(frame, 12))
    out.append(entry('berger.c-curve.torus', 'the torus through a frame '
                     'projects onto its C-curve', worst, 1e-8, timer,
                     '144 torus points'))

    timer = Timer()
    cone = cone_membership(c_curve_tangent())
    out.append(entry('berger.c-curve.cone', 'the C-curve direction is the '
                     'harmonic part of a perfect cube', cone.residual, 1e-8,
                     timer, 'witness %s' % np.round(cone.witness, 9).tolist()))
    return out


def _random_flag(rng):
    p = rng.normal(size=5)
    p /= np.linalg.norm(p)
    e = rng.normal(size=(2, 5))
    e -= np.outer(e.dot(p), p)
    return p, e


def _gamma_entries(seed):
    rng = np.random.default_rng(seed)
    out = []

    timer = Timer()
    e = np.eye(5)
    frame = adapted_frame(e[0], e[1:3])
    r = distance_to_curve(IDENTITY_POINT, frame)
    out.append(entry('berger.gamma.identity', 'Γ(e1, span(e2, e3)) passes '
                     'through the identity coset', r, 1e-8, timer))

    timer = Timer()
    p, plane = _random_flag(rng)
    curve = gamma_fiber(p, plane, 20)
    inside = sum(in_gamma_fiber(q, p, plane) for q in curve)
    out.append(assertion('berger.gamma.containment', 'every surface of '
                         'Γ(p, E) passes through p with tangent plane E',
                         inside == len(curve), timer,
                         '%d/%d samples' % (inside, len(curve))))

    timer = Timer()
    g = _random_frame(rng)
    moved_frame = adapted_frame(g.dot(p), plane.dot(g.T))
    frames = [q.frame for q in curve]
    worst = max(distance_to_curve(point_from(g.dot(f)), moved_frame)
                for f in frames)
    out.append(entry('berger.gamma.equivariance', 'Γ(gp, gE) = g·Γ(p, E)',
                     worst, 1e-8, timer))
    return out


def _orbit_entries(mode, samples, seed):
    out = verify_homogeneous_catalogue(mode, samples, seed)
    rng = np.random.default_rng(seed)

    timer = Timer()
    worst = 0.0
    for name in ('ico', 'o145', 'oct2'):
        case = CASES[name]
        elements = [float_array(x.matrix) for x in subalgebra(case.subalgebra)]
        mix = rng.normal(size=(len(elements), len(elements)))
        changed = [sum(c * x for c, x in zip(row, elements)) for row in mix]
        h = float_array(case.h)
        a = orbit_tangent_plane(case.subalgebra, h)
        b = orbit_tangent_plane(changed, h)
        worst = max(worst, float(np.max(np.abs(a.projector() -
                                               b.projector()))))
    out.append(entry('berger.orbit.basis-independence', 'the orbit tangent '
                     'plane does not depend on the basis of K', worst, 1e-9,
                     timer))

    timer = Timer()
    worst = max(tangent_finite_difference_defect(name)
                for name in ('ico', 'o145', 'o167'))
    out.append(entry('berger.orbit.finite-difference', 'ω(Ad(h)X) agrees '
                     'with finite differences of the orbit', worst, 1e-8,
                     timer))
    return out


def dodeca_entries(mode, grid, found=None):
    """Vertex membership, the intersection search and the orbit check."""
    out = []
    timer = Timer()
    results = dodeca_membership(mode.exact)
    inside = sum(bool(ok) for ok, _ in results)
    r = max(magnitude(value - 1) for _, value in results)
    out.append(entry('berger.dodeca.vertices', 'the 20 dodecahedron vertices '
                     'map into Σ0 ∩ h_Ico⁻¹·Σ0', r,
                     0.0 if mode.exact else 1e-12, timer,
                     '%d/20 on the Veronese surface' % inside,
                     status=None if inside == 20 else FAIL))

    timer = Timer()
    if found is None:
        found = dodeca_intersection(grid=grid)
    out.append(assertion('berger.dodeca.count', 'Σ0 ∩ h_Ico⁻¹·Σ0 is the '
                         'image of 20 points', len(found.points) == 20 and
                         len(found.images) == 10, timer,
                         '%d points, %d images' % (len(found.points),
                                                   len(found.images))))
    out.append(entry('berger.dodeca.match', 'the solutions are the displayed '
                     'vertices', match_vertices(found.points), 1e-8, timer))
    out.append(entry('berger.dodeca.residual', 'refined solutions satisfy '
                     'both membership tests',
                     float(np.max(found.residuals, initial=0.0)), 1e-10,
                     timer))

    timer = Timer()
    size, closed = dodeca_orbit_check()
    out.append(assertion('berger.dodeca.orbit', 'the vertices form one orbit '
                         'of the dodecahedral group', size == 20 and closed,
                         timer, 'orbit of size %d' % size))
    return out


def _intersection_entries(mode):
    out = []
    checks = [(c.name, c.candidate, c.h, c.target, c.order)
              for c in CASES.values() if c.candidate is not None]
    checks.append(('identity', 'Ico_dodeca', exact_identity(5), 'so3', 60))
    for name, candidate, h, target, expected in checks:
        timer = Timer()
        h = h if mode.exact else float_array(h)
        order = group_intersection_order(candidate, h, target, mode)
        out.append(assertion('berger.intersection.%s' % name,
                             'SO(3) ∩ h·%s·h⁻¹ has order %d'
                             % ('SO(3)' if target == 'so3' else 'SO(3)_std',
                                expected),
                             order == expected, timer, 'order %d' % order))
    return out


def berger_report(config):
    mode = config.scalar_mode
    entries = _point_entries(mode, 100, config.seed)
    entries += _curve_entries(mode, config.seed)
    entries += _gamma_entries(config.seed)
    entries += _orbit_entries(mode, config.orbit_samples, config.seed)
    entries += dodeca_entries(mode, tuple(config.dodeca_grid))
    entries += _intersection_entries(mode)
    logger.info('berger suite: %d entries', len(entries))
    return entries
