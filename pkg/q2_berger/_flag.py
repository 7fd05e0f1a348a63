# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""The flag manifold Gr₂⁺(TS⁴) = SO(5)/T² and its almost complex structure.

Everything here is a left-invariant form on SO(5), written over the
μ-entry coframe (μ_ij is the (i, j) entry of g⁻¹dg). The complex coframe

    (ζ1, ζ2, ζ3, ζ4, ζ̄1, ζ̄2, ζ̄3, ζ̄4, ρ1, ρ2)

is a second basis of the same space; ``ComplexCoframe.to_flag`` rewrites a
form in it, which is how congruences modulo ζ1..ζ4 are decided.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from q2_berger._scalar import (
    EXACT, ONE, HALF, SQRT2, SQRT6, SQRT10, FieldScalar, ComplexScalar, I,
    exact_array, exact_inverse, exact_rank, is_exact,
    magnitude, to_float)
from q2_berger._liealg import (
    BERGER, MU, InvariantForm, mu_index, residual, subalgebra)
from q2_berger._berger import CASES
from q2_berger._report import MEASURED, Timer, entry, assertion


logger = logging.getLogger(__name__)

FLAG_LABELS = ('ζ1', 'ζ2', 'ζ3', 'ζ4', 'ζ̄1', 'ζ̄2', 'ζ̄3', 'ζ̄4', 'ρ1', 'ρ2')
ZETA = (0, 1, 2, 3)
U2_DIRECTIONS = (3, 7, 8, 9)
REAL_LABELS = ('ℜζ1', 'ℜζ2', 'ℜζ3', 'ℜζ4', 'ℑζ1', 'ℑζ2', 'ℑζ3', 'ℑζ4',
               'ρ1', 'ρ2')

_NEG_I = ComplexScalar(0, -1)


def _c(re=0, im=0):
    return ComplexScalar(re, im)


def _mu_form(coefficients):
    """Σ c μ_ij over the μ-entry coframe, from {(i, j): c} (1-based)."""
    return InvariantForm(MU.dim, [((mu_index(i, j),), c)
                                  for (i, j), c in coefficients.items()])


def _convert(form, exact):
    return form if exact else form.to_float()


class ComplexCoframe:
    """ζ1..ζ4, their conjugates and ρ1, ρ2 as 1-forms over μ."""

    def __init__(self):
        r = SQRT2 * HALF
        h = HALF
        self.zeta = [
            _mu_form({(1, 2): _c(r), (1, 3): _c(0, -r)}),
            _mu_form({(1, 4): _c(r), (1, 5): _c(0, -r)}),
            _mu_form({(2, 4): _c(h), (3, 5): _c(-h),
                      (2, 5): _c(0, h), (3, 4): _c(0, h)}),
            _mu_form({(2, 4): _c(h), (3, 5): _c(h),
                      (2, 5): _c(0, -h), (3, 4): _c(0, h)}),
        ]
        self.rho = [_mu_form({(2, 3): h, (4, 5): h}),
                    _mu_form({(2, 3): -h, (4, 5): h})]
        self.forms = (self.zeta + [z.conjugate() for z in self.zeta] +
                      self.rho)
        self.matrix = np.empty((MU.dim, MU.dim), dtype=object)
        for a, form in enumerate(self.forms):
            for k in range(MU.dim):
                self.matrix[a, k] = form.coefficient((k,))
        self.inverse = exact_inverse(self.matrix)
        self.images = [InvariantForm.linear(MU.dim, self.inverse[k, :])
                       for k in range(MU.dim)]
        self._float_images = [im.to_float() for im in self.images]

    @property
    def rank(self):
        return exact_rank(self.matrix)

    def real_matrix(self):
        """Rows ℜζ1..ℜζ4, ℑζ1..ℑζ4, ρ1, ρ2 over μ (float)."""
        m = np.array([[complex(to_float(c)) for c in row]
                      for row in self.matrix])
        return np.vstack([m[:4].real, m[:4].imag, m[8:].real])

    def to_flag(self, form):
        """Rewrite a form over μ in the complex coframe."""
        images = self.images if form.is_exact() else self._float_images
        return form.substitute(images)

    def to_mu(self, form):
        return form.substitute(self.forms if form.is_exact() else
                               [f.to_float() for f in self.forms])

    def real_images(self):
        """μ_ij over the real coframe (ℜζ, ℑζ, ρ)."""
        out = []
        for k in range(MU.dim):
            terms = []
            for j in range(4):
                a, b = self.inverse[k, j], self.inverse[k, j + 4]
                terms.append(((j,), a + b))
                terms.append(((j + 4,), I * (a - b)))
            terms.append(((8,), self.inverse[k, 8]))
            terms.append(((9,), self.inverse[k, 9]))
            out.append(InvariantForm(MU.dim, terms))
        return out


_COFRAME = None


def flag_coframe():
    global _COFRAME
    if _COFRAME is None:
        _COFRAME = ComplexCoframe()
    return _COFRAME


def ideal_residual(form, coframe=None):
    """The part of a μ-form outside the ideal generated by ζ1..ζ4."""
    coframe = flag_coframe() if coframe is None else coframe
    return coframe.to_flag(form).drop(ZETA)


def modulo_u2(form, coframe=None):
    """A μ-form in the complex coframe with ζ4, ζ̄4, ρ1, ρ2 set to zero."""
    coframe = flag_coframe() if coframe is None else coframe
    return coframe.to_flag(form).drop(U2_DIRECTIONS)


def evaluate(form, matrix):
    """A 1-form over μ on the so(5) element ``matrix``."""
    values = MU.coordinates(matrix)
    return sum((form.coefficient((k,)) * values[k] for k in range(MU.dim)),
               0)


# -- the structure equations --------------------------------------------------
def structure_rhs(coframe=None):
    """Right-hand sides of dζ1..dζ4, dρ1, dρ2 over μ."""
    f = flag_coframe() if coframe is None else coframe
    z1, z2, z3, z4 = f.zeta
    c1, c2, c3, c4 = (z.conjugate() for z in f.zeta)
    r1, r2 = f.rho
    half_i = _c(0, -HALF)
    return [
        (r1 - r2).wedge(z1) * _NEG_I + z2.wedge(c4) + c2.wedge(c3),
        (r1 + r2).wedge(z2) * _NEG_I - z1.wedge(z4) + c3.wedge(c1),
        r1.wedge(z3) * _c(0, 2) + c1.wedge(c2),
        r2.wedge(z4) * _c(0, -2) + c1.wedge(z2),
        (z1.wedge(c1) + z2.wedge(c2) - z3.wedge(c3) * 2) * half_i,
        (z2.wedge(c2) - z1.wedge(c1) + z4.wedge(c4) * 2) * half_i,
    ]


_STRUCTURE_NAMES = ('dzeta1', 'dzeta2', 'dzeta3', 'dzeta4', 'drho1', 'drho2')


def verify_structflag(mode=EXACT):
    f = flag_coframe()
    tol = 0.0 if mode.exact else mode.tol
    out = []
    expected = structure_rhs(f)
    for name, form, rhs in zip(_STRUCTURE_NAMES, f.zeta + f.rho, expected):
        timer = Timer()
        computed = MU.ce_d(_convert(form, mode.exact))
        rhs = _convert(rhs, mode.exact)
        r = residual(computed, rhs)
        out.append(entry('flag.structure.%s' % name,
                         'structure equations of the flag manifold', r, tol,
                         timer, '' if r <= tol else
                         f.to_flag(computed - rhs).format(FLAG_LABELS)))
    timer = Timer()
    worst = max(MU.ce_d(_convert(rhs, mode.exact)).max_coefficient()
                for rhs in expected)
    out.append(entry('flag.structure.d-squared', 'the displayed right-hand '
                     'sides are closed', worst, tol, timer))
    return out


_CONGRUENCES = (('zeta1', 0, (1, 2)), ('zeta2', 1, (2, 0)),
                ('zeta3', 2, (0, 1)), ('zeta4', 3, None))


def verify_jstruct(mode=EXACT):
    """dζ_i ≡ ζ̄_j ∧ ζ̄_k modulo ζ1..ζ4, and dζ4 ≡ 0."""
    f = flag_coframe()
    tol = 0.0 if mode.exact else mode.tol
    out = []
    conj = [z.conjugate() for z in f.zeta]
    for name, i, pair in _CONGRUENCES:
        timer = Timer()
        form = MU.ce_d(_convert(f.zeta[i], mode.exact))
        if pair is not None:
            form = form - _convert(conj[pair[0]].wedge(conj[pair[1]]),
                                   mode.exact)
        left = ideal_residual(form, f)
        r = left.max_coefficient()
        out.append(entry('flag.jstruct.%s' % name, 'J is well defined: '
                         'dζ mod ζ1..ζ4', r, tol, timer,
                         '' if r <= tol else left.format(FLAG_LABELS)))
    timer = Timer()
    left = ideal_residual(MU.ce_d(_convert(f.zeta[0], mode.exact)), f)
    out.append(assertion('flag.jstruct.negative-control', 'dζ1 itself is not '
                         'in the ideal of ζ', left.max_coefficient() > tol,
                         timer, left.format(FLAG_LABELS),
                         residual=left.max_coefficient()))
    return out


# -- γ and ω in terms of ζ ----------------------------------------------------
def lift_matrix():
    """(ω2+iω3, ω4+iω5, ω6-iω7, γ2-iγ3) = lift_matrix() · (ζ1, ..., ζ4)."""
    t = FieldScalar(Fraction(1, 10))
    z = _c()
    return np.array([
        [_c(-6 * t), z, z, _c(3 * SQRT6 * t)],
        [z, _c(-3 * SQRT10 * t), z, z],
        [z, z, _c(-3 * SQRT10 * t), z],
        [_c(0, 2 * SQRT6 * t), z, z, _c(0, 4 * t)],
    ], dtype=object)


def _adapted_targets():
    g = BERGER.coframe_images(MU)
    gamma, w = g[:3], g[3:]
    return [w[1] + w[2] * I, w[3] + w[4] * I, w[5] - w[6] * I,
            gamma[1] - gamma[2] * I]


def verify_omegazeta(mode=EXACT):
    f = flag_coframe()
    tol = 0.0 if mode.exact else mode.tol
    a = lift_matrix()
    timer = Timer()
    worst, rows = 0.0, []
    for r, target in enumerate(_adapted_targets()):
        combination = InvariantForm(MU.dim)
        for k in range(4):
            combination = combination + f.zeta[k] * a[r, k]
        d = residual(_convert(target, mode.exact),
                     _convert(combination, mode.exact))
        worst = max(worst, d)
        if d > tol:
            rows.append('row %d' % (r + 1))
    out = [entry('flag.omegazeta', 'γ and ω in terms of ζ', worst, tol,
                 timer, ', '.join(rows))]
    timer = Timer()
    rank = exact_rank(a)
    out.append(assertion('flag.omegazeta.rank', 'the ζ-to-(ω, γ) matrix is '
                         'invertible', rank == 4, timer, 'rank %d' % rank))
    return out


def verify_coframe():
    f = flag_coframe()
    timer = Timer()
    rank = f.rank
    det = float(np.linalg.det(f.real_matrix()))
    return assertion('flag.coframe', 'ζ, ζ̄ and ρ form a complex coframe',
                     rank == MU.dim and abs(det) > 1e-12, timer,
                     'rank %d, real determinant %.12g' % (rank, det))


# -- the nearly-Kähler CP³ ----------------------------------------------------
def nk_forms(coframe=None):
    """(Ω_NK, Ψ) over μ, with Ω_NK = (i/2) Σ ζk ∧ ζ̄k and Ψ = ζ1 ∧ ζ2 ∧ ζ3."""
    f = flag_coframe() if coframe is None else coframe
    omega = InvariantForm(MU.dim)
    for z in f.zeta[:3]:
        omega = omega + z.wedge(z.conjugate())
    omega = omega * _c(0, HALF)
    psi = f.zeta[0].wedge(f.zeta[1]).wedge(f.zeta[2])
    return omega, psi


def proportionality(a, b):
    """(c, |a - c·b|) with c read off the largest coefficient of b."""
    exact = a.is_exact() and b.is_exact()
    if not exact:
        a, b = a.to_float(), b.to_float()
    if not b:
        return None, a.max_coefficient()
    key, cb = max(b.items(), key=lambda kv: magnitude(kv[1]))
    ca = a.coefficient(key)
    if not exact:
        ca, cb = complex(to_float(ca)), complex(cb)
    c = ca / cb
    return c, (a - b * c).max_coefficient()


def format_constant(c):
    if c is None:
        return 'undefined'
    z = complex(to_float(c))
    if abs(z.imag) <= 1e-12:
        return '%.12g' % z.real
    return '%.12g%+.12gi' % (z.real, z.imag)


def real_constant(c):
    return float('nan') if c is None else complex(to_float(c)).real


def nk_constants(mode=EXACT, rotated=True):
    """Measured constants of the nearly-Kähler equations, modulo u(2).

    With ``rotated`` the phase is Ψ' = iΨ and the equations read
    dΩ = c1 ℜΨ', dℑΨ' = c2 Ω∧Ω; otherwise dΩ = c1 ℑΨ, dℜΨ = c2 Ω∧Ω.
    Returns ((c1, residual), (c2, residual), |Ω ∧ Ψ|).
    """
    f = flag_coframe()
    omega, psi = nk_forms(f)
    omega, psi = _convert(omega, mode.exact), _convert(psi, mode.exact)
    if rotated:
        psi = psi * I
        target, closed = psi.real_part(), psi.imag_part()
    else:
        target, closed = psi.imag_part(), psi.real_part()
    d_omega = modulo_u2(MU.ce_d(omega), f)
    d_closed = modulo_u2(MU.ce_d(closed), f)
    omega_sq = modulo_u2(omega.wedge(omega), f)
    first = proportionality(d_omega, modulo_u2(target, f))
    second = proportionality(d_closed, omega_sq)
    return first, second, omega.wedge(psi).max_coefficient()


def verify_nk_cp3(mode=EXACT):
    tol = 0.0 if mode.exact else mode.tol
    out = []
    timer = Timer()
    (c1, r1), (c2, r2), cross = nk_constants(mode)
    out.append(entry('flag.nk.d-omega', 'dΩ_NK is proportional to ℜΨ', r1,
                     tol, timer, 'constant %s' % format_constant(c1)))
    out.append(entry('flag.nk.d-psi', 'dℑΨ is proportional to Ω_NK∧Ω_NK',
                     r2, tol, timer, 'constant %s' % format_constant(c2)))
    out.append(entry('flag.nk.type', 'Ω_NK ∧ Ψ = 0', cross, tol, timer))
    out.append(entry('flag.nk.constant.d-omega', 'dΩ_NK = c1 ℜ(iΨ)',
                     real_constant(c1), 0.0, timer,
                     format_constant(c1), status=MEASURED))
    out.append(entry('flag.nk.constant.d-psi', 'dℑ(iΨ) = c2 Ω_NK∧Ω_NK',
                     real_constant(c2), 0.0, timer,
                     format_constant(c2), status=MEASURED))

    timer = Timer()
    (c1, r1), (c2, r2), _ = nk_constants(mode, rotated=False)
    out.append(entry('flag.nk.phase-zero', 'dΩ_NK = c ℑΨ and dℜΨ = c′ '
                     'Ω_NK∧Ω_NK', max(r1, r2), tol, timer,
                     'c = %s, c′ = %s' % (format_constant(c1),
                                          format_constant(c2))))
    return out


# -- ruled associatives -------------------------------------------------------
class RuledPointData:
    """(W1, W2, W3, W4) with ζk = Wk σ along a J-holomorphic curve."""

    def __init__(self, w1, w2, w3, w4, tol=1e-9):
        self.w = tuple(complex(to_float(x)) if is_exact(x) else complex(x)
                       for x in (w1, w2, w3, w4))
        norm = sum(abs(x) ** 2 for x in self.w)
        if abs(norm - 1) > tol:
            raise ValueError('Argument to %r was %r, should be %s.'
                             % ('w', self.w, 'of unit norm'))

    @classmethod
    def normal_lift(cls, theta):
        return cls(0, math.cos(theta), -1j * math.sin(theta), 0)

    @classmethod
    def veronese_gauss_lift(cls):
        return cls(math.sqrt(3 / 5), 0, 0, math.sqrt(2 / 5))

    def __iter__(self):
        return iter(self.w)

    def __repr__(self):
        return 'RuledPointData(%s)' % ', '.join('%.6g%+.6gi' % (x.real,
                                                                 x.imag)
                                                  for x in self.w)


def lift_omega(w):
    """Coefficients of (ω2+iω3, ω4+iω5, ω6-iω7, γ2-iγ3) on σ."""
    a = np.array([[complex(to_float(c)) for c in row]
                  for row in lift_matrix()])
    return a.dot(np.array(list(w), dtype=complex))


def immersion_criterion(w, tol=1e-9):
    """False exactly where 2W1 - √6 W4, W2 and W3 all vanish."""
    if not isinstance(w, RuledPointData):
        w = RuledPointData(*w)
    w1, w2, w3, w4 = w.w
    return not (abs(2 * w1 - math.sqrt(6) * w4) <= tol and abs(w2) <= tol
                and abs(w3) <= tol)


def _z5_pattern():
    re2, re3, im2, im3, r1, r2 = 1, 2, 5, 6, 8, 9

    def lin(terms):
        return InvariantForm(MU.dim, [((k,), c) for k, c in terms])

    return {
        (1, 2): lin([]), (1, 3): lin([]),
        (1, 4): lin([(re2, SQRT2)]), (1, 5): lin([(im2, -SQRT2)]),
        (2, 3): lin([(r1, ONE), (r2, -ONE)]),
        (2, 4): lin([(re3, ONE)]), (2, 5): lin([(im3, ONE)]),
        (3, 4): lin([(im3, ONE)]), (3, 5): lin([(re3, -ONE)]),
        (4, 5): lin([(r1, ONE), (r2, ONE)]),
    }


Z5_ANNIHILATED = (0, 3, 4, 7)


def z5_annihilator():
    """Coefficient rows over μ of ℜζ1, ℑζ1, ℜζ4, ℑζ4."""
    f = flag_coframe()
    forms = [f.zeta[0].real_part(), f.zeta[0].imag_part(),
             f.zeta[3].real_part(), f.zeta[3].imag_part()]
    return exact_array([[form.coefficient((k,)) for k in range(MU.dim)]
                        for form in forms])


def z5_expected_annihilator():
    rows = []
    for entries in ({(1, 2): 1}, {(1, 3): 1}, {(2, 4): 1, (3, 5): 1},
                    {(2, 5): 1, (3, 4): -1}):
        row = [0] * MU.dim
        for ij, c in entries.items():
            row[mu_index(*ij)] = c
        rows.append(row)
    return exact_array(rows)


def z5_normal_lift_check():
    f = flag_coframe()
    out = []

    timer = Timer()
    images = f.real_images()
    pattern = _z5_pattern()
    worst, wrong = 0.0, []
    for (i, j), expected in pattern.items():
        got = images[mu_index(i, j)].drop(Z5_ANNIHILATED)
        r = residual(got, expected)
        worst = max(worst, r)
        if r > 0:
            wrong.append('μ%d%d: %s' % (i, j, got.format(REAL_LABELS)))
    out.append(entry('flag.z5.pattern', 'Maurer-Cartan form on ζ1 = ζ4 = 0',
                     worst, 0.0, timer, '; '.join(wrong)))

    timer = Timer()
    got, want = z5_annihilator(), z5_expected_annihilator()
    ranks = (exact_rank(got), exact_rank(want),
             exact_rank(np.vstack([got, want])))
    out.append(assertion('flag.z5.annihilator', 'ζ1 = ζ4 = 0 cuts out μ12, '
                         'μ13, μ24+μ35 and μ25-μ34', ranks == (4, 4, 4),
                         timer, 'ranks %d, %d, %d' % ranks))

    timer = Timer()
    thetas = np.linspace(0, 2 * math.pi, 100)
    worst = max(abs(abs(w.w[1]) ** 2 + abs(w.w[2]) ** 2 - 1)
                for w in map(RuledPointData.normal_lift, thetas))
    out.append(entry('flag.z5.normalization', '|W2|² + |W3|² = 1 when '
                     'ζ1 = ζ4 = 0', worst, 1e-12, timer))

    timer = Timer()
    case = CASES['o145']
    frame = case.h.T
    values = []
    for x in subalgebra(case.subalgebra):
        y = frame.T.dot(x.matrix).dot(frame)
        values += [evaluate(f.zeta[0], y), evaluate(f.zeta[3], y)]
    worst = max(magnitude(v) for v in values)
    out.append(entry('flag.z5.witness', 'ζ1 and ζ4 vanish on the 145-orbit '
                     'directions', worst, 0.0, timer))
    return out


def _immersion_entries():
    out = []
    timer = Timer()
    out.append(assertion('flag.immersion.veronese', 'the Gauss lift of the '
                         'Veronese surface is degenerate',
                         not immersion_criterion(
                             RuledPointData.veronese_gauss_lift()), timer))
    timer = Timer()
    thetas = np.linspace(0, 2 * math.pi, 100)
    good = sum(immersion_criterion(RuledPointData.normal_lift(t))
               for t in thetas)
    out.append(assertion('flag.immersion.normal-lift', 'normal-lift data is '
                         'never degenerate', good == len(thetas), timer,
                         '%d/%d grid points' % (good, len(thetas))))
    timer = Timer()
    out.append(assertion('flag.immersion.generic', 'W = (1, 0, 0, 0) gives '
                         'an immersion', immersion_criterion((1, 0, 0, 0)),
                         timer))
    timer = Timer()
    rng = np.random.default_rng(0)
    mismatch = 0
    for _ in range(100):
        w = rng.normal(size=4) + 1j * rng.normal(size=4)
        w /= np.linalg.norm(w)
        if rng.random() < 0.3:
            w[1] = w[2] = 0
            w[0] = math.sqrt(6) / 2 * w[3]
            w /= np.linalg.norm(w)
        omega = lift_omega(w)[:3]
        if immersion_criterion(w) != bool(np.max(np.abs(omega)) > 1e-9):
            mismatch += 1
    out.append(assertion('flag.immersion.lift', 'degenerate exactly where '
                         'the ω-part of the lift vanishes', mismatch == 0,
                         timer, '%d mismatches' % mismatch))
    return out


def flag_report(config):
    mode = config.scalar_mode
    entries = [verify_coframe()]
    entries += verify_jstruct(mode)
    entries += verify_omegazeta(mode)
    entries += verify_structflag(mode)
    entries += verify_nk_cp3(mode)
    entries += _immersion_entries()
    entries += z5_normal_lift_check()
    logger.info('flag suite: %d entries', len(entries))
    return entries
