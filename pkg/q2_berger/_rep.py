# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""SO(3) acting on harmonic polynomials H1, H2 and H3.

Matrices are computed by substituting g⁻¹(x, y, z) into the basis
polynomials and reading the result back in the same basis, so the bases
below are the only convention in play.
"""

import itertools
import logging
from fractions import Fraction

import numpy as np
from scipy.spatial.transform import Rotation

from q2_berger._scalar import (
    EXACT, ZERO, ONE, HALF, SQRT2, SQRT3, SQRT6, SQRT10, SQRT15,
    FieldScalar, exact_array, float_array, is_exact_array, exact_identity,
    exact_left_inverse, is_zero, is_exact, angle_cos_sin, magnitude,
    to_float)
from q2_berger._liealg import BERGER, gamma_matrix, bracket
from q2_berger._report import FAIL, Timer, entry


logger = logging.getLogger(__name__)


def _fs(x):
    return FieldScalar(x) if isinstance(x, (int, Fraction)) else x


def _align(a, b):
    """Both exact, or both floats."""
    if is_exact(a) == is_exact(b):
        return a, b
    return to_float(a), to_float(b)


def _product(a, b):
    a, b = _align(a, b)
    return a * b


class Polynomial:
    """A polynomial in (x, y, z): exponent triples to coefficients."""

    __slots__ = ('_terms',)

    def __init__(self, terms=()):
        self._terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, c in items:
            self._add_term(tuple(exps), _fs(c))

    def _add_term(self, exps, c):
        old, c = _align(self._terms.get(exps, 0), c)
        value = old + c
        if is_zero(value):
            self._terms.pop(exps, None)
        else:
            self._terms[exps] = value

    @classmethod
    def variable(cls, i):
        exps = [0, 0, 0]
        exps[i] = 1
        return cls([(exps, ONE)])

    @classmethod
    def constant(cls, c):
        return cls([((0, 0, 0), c)])

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), ZERO)

    def __add__(self, other):
        out = Polynomial(self._terms)
        for e, c in other._terms.items():
            out._add_term(e, c)
        return out

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = _fs(other)
            return Polynomial([(e, _product(c, other))
                               for e, c in self._terms.items()])
        out = Polynomial()
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                out._add_term(tuple(a + b for a, b in zip(ea, eb)),
                              _product(ca, cb))
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n == 0:
            return Polynomial.constant(ONE)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def derivative(self, i):
        out = Polynomial()
        for e, c in self._terms.items():
            if e[i]:
                new = list(e)
                new[i] -= 1
                out._add_term(tuple(new), c * e[i])
        return out

    def laplacian(self):
        out = Polynomial()
        for i in range(3):
            out = out + self.derivative(i).derivative(i)
        return out

    def substitute(self, images):
        """Replace x_i by the polynomial images[i]."""
        out = Polynomial()
        for e, c in self._terms.items():
            term = Polynomial.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def evaluate(self, point):
        total = 0
        for e, c in self._terms.items():
            value = c
            for x, k in zip(point, e):
                for _ in range(k):
                    value = _product(value, x)
            total, value = _align(total, value)
            total = total + value
        return total

    def to_float(self):
        return Polynomial([(e, float(c)) for e, c in self._terms.items()])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return not (self - other)._terms

    __hash__ = None


X, Y, Z = (Polynomial.variable(i) for i in range(3))
R2 = X * X + Y * Y + Z * Z


def _variables(exact):
    if exact:
        return X, Y, Z
    return tuple(v.to_float() for v in (X, Y, Z))


def harmonic_part(p, degree):
    """Harmonic projection of a homogeneous polynomial of degree ≤ 3."""
    if degree > 3:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('degree', degree, 'at most 3'))
    if degree < 2:
        return p
    return p - R2 * p.laplacian() * FieldScalar(Fraction(1, 4 * degree - 2))


def _h1_basis():
    return [X, Y, Z]


def _h2_basis():
    return [X * X - (Y * Y + Z * Z) * HALF,
            X * Y * SQRT3,
            X * Z * SQRT3,
            (Y * Y - Z * Z) * (SQRT3 * HALF),
            Y * Z * SQRT3]


def _h3_basis():
    f = FieldScalar
    quartic = X * X * 4 - Y * Y - Z * Z
    return [X * (X * X * 2 - Y * Y * 3 - Z * Z * 3) * f(Fraction(1, 5)),
            Z * quartic * (SQRT6 * f(Fraction(1, 10))),
            Y * quartic * (SQRT6 * f(Fraction(1, 10))),
            X * Y * Z * (SQRT15 * f(Fraction(2, 5))),
            X * (Y * Y - Z * Z) * (SQRT15 * f(Fraction(1, 5))),
            Z * (Y * Y * 3 - Z * Z) * (SQRT10 * f(Fraction(1, 10))),
            Y * (Y * Y - Z * Z * 3) * (SQRT10 * f(Fraction(1, 10)))]


def _monomials(degree):
    return [e for e in itertools.product(range(degree + 1), repeat=3)
            if sum(e) == degree]


class HarmonicModule:
    """H_n with its fixed basis and exact coordinate map."""

    def __init__(self, n, basis):
        self.n = n
        self.dim = 2 * n + 1
        self.basis = basis
        self.monomials = _monomials(n)
        columns = np.array([[b.coefficient(m) for m in self.monomials]
                            for b in basis], dtype=object).T
        self._dual = exact_left_inverse(columns)
        self._dual_float = float_array(self._dual)
        self._float_basis = [b.to_float() for b in basis]

    def polynomials(self, exact=True):
        return self.basis if exact else self._float_basis

    def coordinates(self, p, exact=True):
        vec = [p.coefficient(m) for m in self.monomials]
        if exact and all(is_exact(c) for c in vec):
            return self._dual.dot(np.array(vec, dtype=object))
        return self._dual_float.dot(np.array([float(c) for c in vec]))

    def polynomial(self, coords):
        out = Polynomial()
        for c, b in zip(coords, self.basis):
            out = out + b * c
        return out


H1 = HarmonicModule(1, _h1_basis())
H2 = HarmonicModule(2, _h2_basis())
H3 = HarmonicModule(3, _h3_basis())
MODULES = {1: H1, 2: H2, 3: H3}


def h3_coordinates(p):
    """Coordinates of a harmonic cubic in the e1..e7 basis."""
    return H3.coordinates(p, exact=all(is_exact(c)
                                       for c in p.terms.values()))


# -- rotations ----------------------------------------------------------------
def check_orthogonal(g, tol=1e-9, name='g'):
    g = np.asarray(g)
    gram = g.T.dot(g) - (exact_identity(g.shape[0]) if is_exact_array(g)
                         else np.eye(g.shape[0]))
    if is_exact_array(gram):
        ok = all(is_zero(x) for x in gram.ravel())
    else:
        ok = float(np.max(np.abs(gram))) <= tol
    if not ok:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % (name, g.tolist(), 'an orthogonal matrix'))


def rotation_x(angle, mode=EXACT):
    """Rotation about the x-axis; a Fraction angle is a multiple of π."""
    c, s = angle_cos_sin(angle, mode)
    rows = [[1, 0, 0], [0, c, -s], [0, s, c]]
    if isinstance(c, FieldScalar):
        return exact_array(rows)
    return float_array(rows)


def random_rotation(random_state=None):
    return Rotation.random(random_state=random_state).as_matrix()


def hat(a):
    a1, a2, a3 = a
    rows = [[0, -a3, a2], [a3, 0, -a1], [-a2, a1, 0]]
    if all(is_exact(x) for x in a):
        return exact_array(rows)
    return float_array(rows)


def rho_n(g, n, tol=1e-9):
    """Matrix of p ↦ p(g⁻¹(x, y, z)) on H_n in its fixed basis."""
    if n not in MODULES:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('n', n, '1, 2 or 3'))
    g = np.asarray(g)
    check_orthogonal(g, tol)
    exact = is_exact_array(g)
    module = MODULES[n]
    variables = _variables(exact)
    images = [sum((variables[a] * g[a, i] for a in range(3)), Polynomial())
              for i in range(3)]
    columns = [module.coordinates(b.substitute(images), exact)
               for b in module.polynomials(exact)]
    if exact:
        return np.array(columns, dtype=object).T
    return np.array(columns, dtype=float).T


def rho_2(g, tol=1e-9):
    return rho_n(g, 2, tol)


def rho_3(g, tol=1e-9):
    return rho_n(g, 3, tol)


def lambda_n(x, n=2):
    """The differential of rho_n at the identity, applied to x ∈ so(3)."""
    x = np.asarray(x)
    exact = is_exact_array(x)
    module = MODULES[n]
    variables = _variables(exact)
    flows = [sum((variables[a] * x[a, i] for a in range(3)), Polynomial())
             for i in range(3)]
    columns = []
    for b in module.polynomials(exact):
        image = Polynomial()
        for i in range(3):
            image = image + b.derivative(i) * flows[i]
        columns.append(module.coordinates(image, exact))
    if exact:
        return np.array(columns, dtype=object).T
    return np.array(columns, dtype=float).T


def lambda_so3(x):
    """so(3) → so(5), the differential of rho_2."""
    return lambda_n(x, 2)


# -- invariants of H2 ---------------------------------------------------------
def _upsilon_tensor():
    t = exact_array(np.zeros((5, 5, 5), dtype=int).tolist())
    r3 = SQRT3 * HALF
    values = {(0, 0, 0): ONE, (0, 1, 1): HALF, (0, 2, 2): HALF,
              (0, 3, 3): -ONE, (0, 4, 4): -ONE,
              (1, 1, 3): r3, (2, 2, 3): -r3, (1, 2, 4): r3}
    for idx, v in values.items():
        for perm in set(itertools.permutations(idx)):
            t[perm] = v
    return t


UPSILON = _upsilon_tensor()
UPSILON_FLOAT = float_array(UPSILON)


def upsilon_tensor(exact=True):
    return UPSILON if exact else UPSILON_FLOAT


def upsilon(u, v=None, w=None):
    """Υ(u, v, w); with one argument, the cubic Υ(u, u, u)."""
    v = u if v is None else v
    w = u if w is None else w
    exact = all(is_exact(c) for c in itertools.chain(u, v, w))
    t = upsilon_tensor(exact)
    total = 0
    for a, b, c in itertools.product(range(5), repeat=3):
        if is_zero(t[a, b, c]):
            continue
        total = total + t[a, b, c] * _fs(u[a]) * _fs(v[b]) * _fs(w[c])
    return total


def g2form(v, w=None):
    """The invariant inner product g(v, w) = Σ v_i w_i."""
    w = v if w is None else w
    if all(is_exact(c) for c in itertools.chain(v, w)):
        return sum((_fs(a) * _fs(b) for a, b in zip(v, w)), ZERO)
    return float(np.dot(float_array(v), float_array(w)))


def matrix_of(v):
    """The traceless symmetric 3×3 matrix of an H2 vector."""
    if all(is_exact(c) for c in v):
        v1, v2, v3, v4, v5 = (_fs(c) for c in v)
        s, h = SQRT3 * HALF, HALF
        return exact_array([
            [v1, s * v2, s * v3],
            [s * v2, -h * v1 + s * v4, s * v5],
            [s * v3, s * v5, -h * v1 - s * v4]])
    v1, v2, v3, v4, v5 = (float(c) for c in v)
    s = np.sqrt(3.0) / 2
    return np.array([[v1, s * v2, s * v3],
                     [s * v2, -0.5 * v1 + s * v4, s * v5],
                     [s * v3, s * v5, -0.5 * v1 - s * v4]])


def vector_of(m):
    """Inverse of matrix_of on the traceless part of a symmetric matrix."""
    m = np.asarray(m, dtype=float)
    r3 = np.sqrt(3.0)
    trace = np.trace(m) / 3.0
    m = m - trace * np.eye(3)
    return np.array([m[0, 0], 2 * m[0, 1] / r3, 2 * m[0, 2] / r3,
                     (m[1, 1] - m[2, 2]) / r3, 2 * m[1, 2] / r3])


def eigen_invariants(v):
    """(trace, σ2, det) of matrix_of(v)."""
    m = matrix_of(v)
    if is_exact_array(m):
        trace = m[0, 0] + m[1, 1] + m[2, 2]
        sigma2 = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] +
                  m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0] +
                  m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        det = (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]) -
               m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0]) +
               m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
        return trace, sigma2, det
    eig = np.linalg.eigvalsh(m)
    return (float(eig.sum()), float(eig[0] * eig[1] + eig[0] * eig[2] +
                                    eig[1] * eig[2]), float(np.prod(eig)))


def veronese(u, tol=1e-9):
    """The quadratic immersion S² → S⁴ ⊂ H2: e_k(u) for the H2 basis."""
    exact = all(is_exact(c) for c in u)
    norm = g2form(u)
    if (exact and norm != ONE) or (not exact and abs(norm - 1.0) > tol):
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('u', list(u), 'a unit vector'))
    if exact:
        return np.array([b.evaluate([_fs(c) for c in u])
                         for b in H2.basis], dtype=object)
    return np.array([b.to_float().evaluate(u) for b in H2.basis])


def membership_residual(v):
    """max |N² - (3/2)N| with N = matrix_of(v) + I/2.

    N² = (3/2)N holds exactly when matrix_of(v) = (3/2)uuᵀ - I/2 for a
    unit u, i.e. on the SO(3)-orbit of e1.
    """
    m = matrix_of(v)
    if is_exact_array(m):
        n = m + exact_identity(3) * HALF
        diff = n.dot(n) - n * FieldScalar(Fraction(3, 2))
        return diff
    n = m + 0.5 * np.eye(3)
    return n.dot(n) - 1.5 * n


def veronese_membership(v, tol=1e-9):
    """(on Σ0?, Υ(v)) for a unit vector v of H2."""
    diff = membership_residual(v)
    if is_exact_array(diff):
        inside = all(is_zero(x) for x in diff.ravel())
    else:
        inside = float(np.max(np.abs(diff))) <= tol
    return inside, upsilon(v)


def veronese_point(v, tol=1e-9):
    """A unit u with veronese(u) = v, for v on Σ0 (float)."""
    n = float_array(matrix_of(v)) + 0.5 * np.eye(3)
    vals, vecs = np.linalg.eigh(n)
    if abs(vals[-1] - 1.5) > np.sqrt(tol) or abs(vals[1]) > np.sqrt(tol):
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('v', list(v), 'a point of Σ0'))
    u = vecs[:, -1]
    return u if u[np.argmax(np.abs(u))] > 0 else -u


def rotation_from_rho2(r):
    """Recover ±g ∈ SO(3) from rho_2(g) (float)."""
    r = float_array(r)

    def act(s):
        trace = np.trace(s) / 3.0
        return matrix_of(r.dot(vector_of(s))) + trace * np.eye(3)

    cols = []
    e = np.eye(3)
    p00 = act(np.outer(e[0], e[0]))
    vals, vecs = np.linalg.eigh(p00)
    g0 = vecs[:, -1] * np.sqrt(max(vals[-1], 0.0))
    cols.append(g0)
    for j in (1, 2):
        sym = (np.outer(e[0], e[j]) + np.outer(e[j], e[0])) / 2
        cols.append(2 * act(sym).dot(g0))
    g = np.column_stack(cols)
    if np.linalg.det(g) < 0:
        g = -g
    return g


def ad(frame, x):
    """Ad(frame) x = frame · x · frame⁻¹ for orthogonal frames."""
    frame = np.asarray(frame)
    return frame.dot(x).dot(frame.T)


# -- report -------------------------------------------------------------------
def _exact_samples():
    perm = exact_array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    flip = exact_array([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    samples = [rotation_x(Fraction(k, 12)) for k in (1, 2, 3, 4, 7)]
    samples += [perm, flip, perm.dot(rotation_x(Fraction(1, 4))),
                rotation_x(Fraction(1, 6)).dot(perm)]
    return samples


def _max_abs(arr):
    arr = np.asarray(arr)
    return max((magnitude(x) for x in arr.ravel()), default=0.0)


def rep_report(mode=EXACT, samples=100, seed=0):
    rng = np.random.default_rng(seed)
    tol = 0.0 if mode.exact else 1e-12
    if mode.exact:
        rotations = _exact_samples()
        vectors = [exact_array(rng.integers(-3, 4, size=5).tolist())
                   for _ in range(min(samples, 20))]
    else:
        rotations = [random_rotation(rng.integers(2 ** 31))
                     for _ in range(samples)]
        vectors = [rng.normal(size=5) for _ in range(samples)]

    entries = []
    for n in (1, 2, 3):
        timer = Timer()
        worst = 0.0
        for g, h in zip(rotations, rotations[1:] + rotations[:1]):
            lhs = rho_n(g, n).dot(rho_n(h, n))
            worst = max(worst, _max_abs(lhs - rho_n(g.dot(h), n)))
            r = rho_n(g, n)
            ident = exact_identity(r.shape[0]) if mode.exact else \
                np.eye(r.shape[0])
            worst = max(worst, _max_abs(r.T.dot(r) - ident))
        entries.append(entry('rep.rho%d.homomorphism' % n,
                             'rho_%d is an orthogonal representation' % n,
                             worst, tol, timer))

    timer = Timer()
    worst = 0.0
    for g, v in zip(itertools.cycle(rotations), vectors):
        worst = max(worst, magnitude(upsilon(rho_2(g).dot(v)) - upsilon(v)))
        worst = max(worst, magnitude(g2form(rho_2(g).dot(v)) - g2form(v)))
        m = matrix_of(rho_2(g).dot(v))
        worst = max(worst, _max_abs(m - g.dot(matrix_of(v)).dot(g.T)))
        det = eigen_invariants(v)[2]
        worst = max(worst, magnitude(upsilon(v) - 4 * det))
    entries.append(entry('rep.invariants',
                         'g and Υ = 4 det are SO(3)-invariant; matrix_of is '
                         'equivariant', worst, max(tol, 1e-10), timer))

    timer = Timer()
    e = (exact_identity(3) if mode.exact else np.eye(3))
    lam = [lambda_so3(hat(list(e[i]))) for i in range(3)]
    gammas = [gamma_matrix(*row) for row in np.eye(3, dtype=int).tolist()]
    if not mode.exact:
        gammas = [float_array(g) for g in gammas]
    worst = max(_max_abs(a - b) for a, b in zip(lam, gammas))
    for i, j in itertools.combinations(range(3), 2):
        xy = bracket(hat(list(e[i])), hat(list(e[j])))
        worst = max(worst, _max_abs(lambda_so3(xy) -
                                    bracket(lam[i], lam[j])))
    entries.append(entry('rep.lambda', 'lambda_so3 is the γ-block of the '
                         'Maurer-Cartan form', worst, tol, timer))

    timer = Timer()
    worst = 0.0
    basis = BERGER.basis[3:] if mode.exact else \
        [float_array(b) for b in BERGER.basis[3:]]
    for g in rotations[:20]:
        r2, r3 = rho_2(g), rho_3(g)
        for k in range(7):
            moved = ad(r2, basis[k])
            expected = basis[0] * r3[0, k]
            for i in range(1, 7):
                expected = expected + basis[i] * r3[i, k]
            worst = max(worst, _max_abs(moved - expected))
    entries.append(entry('rep.ad-equivariance',
                         'Ad(rho_2(g)) on the H3 block is rho_3(g)', worst,
                         max(tol, 1e-12), timer))

    timer = Timer()
    worst = 0.0
    if mode.exact:
        points = [exact_array(p) for p in
                  ([1, 0, 0], [0, 1, 0], [0, 0, 1],
                   [0, Fraction(3, 5), Fraction(4, 5)],
                   [Fraction(2, 3), Fraction(1, 3), Fraction(2, 3)],
                   [HALF, HALF, SQRT2 * HALF])]
    else:
        raw = rng.normal(size=(samples, 3))
        points = list(raw / np.linalg.norm(raw, axis=1)[:, None])
    members = 0
    for u in points:
        v = veronese(u)
        inside, ups = veronese_membership(v)
        members += inside
        worst = max(worst, magnitude(ups - 1), magnitude(g2form(v) - 1))
        worst = max(worst, _max_abs(veronese([-c for c in u]) - v))
    entries.append(entry('rep.veronese', 'the Borůvka image is the orbit '
                         'Σ0 of e1, with Υ = 1', worst, max(tol, 1e-12),
                         timer, 'members=%d/%d' % (members, len(points)),
                         status=None if members == len(points) else FAIL))
    return entries
