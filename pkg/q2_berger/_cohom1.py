# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""The cohomogeneity-one action of SO(4) on the Berger space.

SO(4) is the stabilizer of e1 in SO(5). The curve u(t) = exp(-t L14) meets
every orbit; the orbit through u(t)SO(3) is parametrized by A ↦ A u(t), so
the Berger coframe pulls back to

    Ad(u(t)⁻¹)(A⁻¹dA) + u(t)⁻¹u′(t) dt

which is expressed over (dt, μ1, μ2, μ3, ν1, ν2, ν3). Forms at fixed t are
left-invariant on SO(4); their exterior derivative along the orbit is the
Chevalley-Eilenberg differential of so(4).
"""

import collections
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq
from scipy.stats import unitary_group

from q2_berger._scalar import (
    EXACT, FLOAT, ZERO, SQRT2, SQRT3, SQRT5, SQRT10, FieldScalar,
    angle_cos_sin, exact_array, exact_identity, exact_rank, float_array,
    is_exact, is_exact_array, is_zero, magnitude, to_float)
from q2_berger._liealg import (
    BERGER, GAMMA_LABELS, OMEGA, OMEGA_LABELS, SO4, InvariantForm, residual,
    rotation_generator)
from q2_berger._rep import check_orthogonal, eigen_invariants, rho_2
from q2_berger._g2 import PHI, ThreePlane, phi_value
from q2_berger._flag import format_constant, proportionality, real_constant
from q2_berger._report import (
    MEASURED, Timer, assertion, contradiction, entry)


logger = logging.getLogger(__name__)

DT = 0
ORBIT_LABELS = ('dt',) + SO4.labels
PULLBACK_LABELS = GAMMA_LABELS + OMEGA_LABELS

# s = ARC_SCALE * t, where s is the arclength of the section
ARC_SCALE = FieldScalar(Fraction(3, 10)) * SQRT5
PHASE = math.atan(2 / math.sqrt(3))

NEARLY_HALF_FLAT_CONSTANT = -2
NK_CONSTANTS = (3, -3)


def _omega_form(terms):
    return InvariantForm(BERGER.dim, [
        (tuple(OMEGA[int(ch) - 1] for ch in key), c)
        for key, c in terms.items()])


OMEGA_SU3 = _omega_form({'15': -1, '26': -1, '37': -1})
RE_UPSILON = _omega_form({'123': 1, '167': -1, '257': 1, '356': -1})
IM_UPSILON = _omega_form({'567': 1, '235': -1, '136': 1, '127': -1})

OrbitStructure = collections.namedtuple(
    'OrbitStructure', ['t', 'omega', 're_upsilon', 'im_upsilon'])


def _is_exact_angle(t, mode):
    return (mode.exact and isinstance(t, Fraction) and
            12 % t.denominator == 0)


def _radians(t):
    """Angles are radians, or Fractions read as multiples of π."""
    return float(t) * math.pi if isinstance(t, Fraction) else float(t)


def geodesic(t, mode=EXACT):
    """u(t), the rotation by t in the (e1, e4) plane."""
    c, s = angle_cos_sin(t, mode)
    if is_exact(c):
        u = exact_identity(5)
    else:
        u = np.eye(5)
        c, s = float(c), float(s)
    u[0, 0], u[0, 3] = c, -s
    u[3, 0], u[3, 3] = s, c
    return u


def _velocity(exact):
    """u(t)⁻¹u′(t), constant along the curve."""
    v = -rotation_generator(1, 4)
    return v if exact else float_array(v)


def pullback_coframe(t, mode=EXACT):
    """(γ1..γ3, ω1..ω7) pulled back to SO(4) × {t}, over ORBIT_LABELS.

    Exact whenever t is a Fraction of π with denominator dividing 12 and
    ``mode`` is exact.
    """
    u = geodesic(t, mode)
    exact = is_exact_array(u)
    columns = [BERGER.coordinates(_velocity(exact))]
    for x in SO4.basis:
        x = x if exact else float_array(x)
        columns.append(BERGER.coordinates(u.T.dot(x).dot(u)))
    if not exact:
        columns = [[float(c) for c in col] for col in columns]
    return [InvariantForm.linear(len(ORBIT_LABELS),
                                 [col[k] for col in columns])
            for k in range(BERGER.dim)]


def _orbit_form(entries, exact):
    coeffs = [ZERO if exact else 0.0] * len(ORBIT_LABELS)
    for label, c in entries.items():
        coeffs[ORBIT_LABELS.index(label)] = c
    return InvariantForm.linear(len(ORBIT_LABELS), coeffs)


def expected_omegas(t, mode=EXACT, printed=False):
    """ω1..ω7 along the section in closed form.

    Float evaluation keeps the √7 cos(t ∓ φ) shape with φ = arctan(2/√3);
    exact evaluation expands it to √3 cos t ± 2 sin t. ``printed`` swaps in
    the misprinted ω5 with (μ1 - ν1).
    """
    exact = _is_exact_angle(t, mode)
    c, s = angle_cos_sin(t, mode if exact else FLOAT)
    if exact:
        k = lambda x: x  # noqa: E731
        r3 = SQRT3
        minus, plus = r3 * c + 2 * s, r3 * c - 2 * s
    else:
        k = to_float
        r3 = math.sqrt(3)
        a = _radians(t)
        minus = math.sqrt(7) * math.cos(a - PHASE)
        plus = math.sqrt(7) * math.cos(a + PHASE)
    a1 = k(FieldScalar(Fraction(3, 20)))
    a2 = k(FieldScalar(Fraction(3, 40)) * SQRT2)
    a4 = k(ARC_SCALE)
    a5 = k(FieldScalar(Fraction(3, 20)) * SQRT5)
    a6 = k(FieldScalar(Fraction(3, 40)) * SQRT10)
    sign = -1 if printed else 1
    return [
        _orbit_form({'μ1': a1 * (2 - c), 'ν1': -a1 * (2 + c)}, exact),
        _orbit_form({'μ2': a2 * (r3 - minus), 'ν2': a2 * (r3 + minus)}, exact),
        _orbit_form({'μ3': a2 * (r3 - plus), 'ν3': -a2 * (r3 + plus)}, exact),
        _orbit_form({'dt': a4}, exact),
        _orbit_form({'μ1': -a5 * s, 'ν1': -a5 * s * sign}, exact),
        _orbit_form({'μ2': a6 * (1 + c), 'ν2': a6 * (1 - c)}, exact),
        _orbit_form({'μ3': a6 * (-1 - c), 'ν3': a6 * (1 - c)}, exact),
    ]


def pullback_mismatch(t, mode=EXACT, printed=False):
    """Largest residual between the computed and closed-form ω1..ω7."""
    computed = pullback_coframe(t, mode)[OMEGA[0]:]
    expected = expected_omegas(t, mode, printed)
    return max(residual(a, b) for a, b in zip(computed, expected))


def _on_orbit(form):
    """Restrict a form over ORBIT_LABELS to the orbit (dt = 0)."""
    return InvariantForm(SO4.dim, [(tuple(k - 1 for k in key), c)
                                   for key, c in form.drop([DT]).items()])


def orbit_coframe(t, mode=EXACT):
    """The Berger coframe restricted to the orbit, over SO(4)'s coframe."""
    return [_on_orbit(f) for f in pullback_coframe(t, mode)]


def _substitute(form, images):
    if not all(f.is_exact() for f in images):
        form = form.to_float()
    return form.substitute(images)


def pullback_form(form, t, mode=EXACT, on_orbit=True):
    images = orbit_coframe(t, mode) if on_orbit else pullback_coframe(t, mode)
    return _substitute(form, images)


def coframe_matrix(t, mode=EXACT):
    """Rows ω1..ω7 on the orbit, columns μ1..ν3."""
    forms = orbit_coframe(t, mode)[OMEGA[0]:]
    rows = [[f.coefficient((k,)) for k in range(SO4.dim)] for f in forms]
    return exact_array(rows) if all(f.is_exact() for f in forms) else \
        float_array(rows)


def coframe_rank(t, mode=EXACT, tol=1e-9):
    m = coframe_matrix(t, mode)
    if is_exact_array(m):
        return exact_rank(m)
    return int(np.linalg.matrix_rank(m, tol=tol))


def _orbit_determinant(t):
    """det of the ω-part of the orbit coframe, ω4 left out."""
    m = coframe_matrix(float(t), FLOAT)
    return float(np.linalg.det(np.delete(m, 3, axis=0)))


def singular_parameters(t_max=math.pi, samples=600, tol=1e-12):
    """Parameters in [0, t_max] where the orbit coframe drops rank.

    The determinant is scanned on a grid that overhangs both ends and each
    sign change is refined with brentq.
    """
    if not t_max > 0:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('t_max', t_max, 'greater than zero'))
    pad = t_max / samples
    grid = np.linspace(-pad / 2, t_max + pad / 2, samples + 2)
    values = [_orbit_determinant(t) for t in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(brentq(_orbit_determinant, a, b, xtol=tol))
    roots = [r for r in roots if -1e-9 <= r <= t_max + 1e-9]
    logger.debug('singular parameters in [0, %g]: %s', t_max, roots)
    return roots


def principal_period(t_max=math.pi):
    """Spacing of consecutive singular orbits along the section."""
    roots = singular_parameters(t_max)
    if len(roots) < 2:
        raise RuntimeError('Fewer than two singular orbits in [0, %g].'
                           % t_max)
    return float(np.min(np.diff(roots)))


def stabilized_vector(t, mode=EXACT):
    """u(t)⁻¹e1 in H2; its SO(3)-stabilizer is the orbit's stabilizer."""
    return geodesic(t, mode)[0, :]


def orbit_stabilizer_order(t, mode=EXACT, tol=1e-9):
    """4 on principal orbits, math.inf (an O(2)) on singular ones."""
    _, sigma2, det = eigen_invariants(list(stabilized_vector(t, mode)))
    discriminant = -4 * sigma2 * sigma2 * sigma2 - 27 * det * det
    if is_exact(discriminant):
        repeated = is_zero(discriminant)
    else:
        repeated = abs(float(discriminant)) <= tol
    return math.inf if repeated else 4


def orbit_su3(t, mode=EXACT):
    """Ω and ℜΥ, ℑΥ on the principal orbit through u(t)."""
    if coframe_rank(t, mode) < SO4.dim:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('t', t, 'a principal orbit parameter'))
    images = orbit_coframe(t, mode)
    return OrbitStructure(t, _substitute(OMEGA_SU3, images),
                          _substitute(RE_UPSILON, images),
                          _substitute(IM_UPSILON, images))


def omega_cubed(structure):
    """Coefficient of μ1∧μ2∧μ3∧ν1∧ν2∧ν3 in Ω³."""
    omega = structure.omega
    return omega.wedge(omega).wedge(omega).coefficient(tuple(range(SO4.dim)))


def orbit_phi_restriction(t, mode=EXACT):
    """|φ - ℜΥ| on the orbit; ω4 vanishes there."""
    images = orbit_coframe(t, mode)
    return residual(_substitute(PHI, images),
                    _substitute(RE_UPSILON, images))


def d_commutation_defect(t, mode=EXACT):
    """Largest |d(ι*θ) - ι*(dθ)| over the Berger coframe."""
    images = orbit_coframe(t, mode)
    exact = all(f.is_exact() for f in images)
    out = 0.0
    for k, image in enumerate(images):
        intrinsic = SO4.ce_d(image)
        ambient = BERGER.d_basis(k, exact).substitute(images)
        out = max(out, residual(intrinsic, ambient))
    return out


def nearly_half_flat_constant(t, mode=EXACT):
    """(c, residual) for d ℜΥ = c Ω∧Ω on the orbit."""
    su3 = orbit_su3(t, mode)
    return proportionality(SO4.ce_d(su3.re_upsilon),
                           su3.omega.wedge(su3.omega))


def _span_residual(target, forms):
    """Norm of target minus its least-squares projection onto span(forms)."""
    keys = sorted(set(target.terms).union(*(f.terms for f in forms)))
    a = np.array([[to_float(f.coefficient(k)) for f in forms] for k in keys])
    b = np.array([to_float(target.coefficient(k)) for k in keys])
    coeffs, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(np.linalg.norm(a.dot(coeffs) - b)), coeffs


def nk_defect(t, mode=EXACT):
    """Distance from the nearly-Kähler equation dΩ = ±3ℑΥ.

    Returns (matched, free) where ``matched`` minimizes over the two signs
    and ``free`` allows any combination of ℜΥ and ℑΥ.
    """
    su3 = orbit_su3(t, mode)
    d_omega = SO4.ce_d(su3.omega)
    matched = min((d_omega - su3.im_upsilon * c).to_float().norm()
                  for c in NK_CONSTANTS)
    free, _ = _span_residual(d_omega, [su3.re_upsilon, su3.im_upsilon])
    return matched, free


def verify_nearly_half_flat(t, mode=EXACT):
    timer = Timer()
    tol = 0.0 if _is_exact_angle(t, mode) else mode.tol
    c, res = nearly_half_flat_constant(t, mode)
    return entry('cohom1.half-flat.%s' % _label(t),
                 'd ℜΥ is proportional to Ω∧Ω on the principal orbit', res,
                 tol, timer, 'constant %s' % format_constant(c))


def verify_not_nearly_kahler(t, mode=EXACT):
    timer = Timer()
    matched, free = nk_defect(t, mode)
    check_id = 'cohom1.not-nk.%s' % _label(t)
    holds = min(matched, free) > mode.tol
    if not holds:
        contradiction(check_id, 'principal orbit at t = %s is nearly Kähler'
                      % _label(t))
    return assertion(check_id, 'principal orbits are never nearly Kähler',
                     holds, timer, 'defect ±3: %.6g, free phase: %.6g'
                     % (matched, free), residual=free)


def _label(t):
    if isinstance(t, Fraction):
        return '%spi' % t
    return '%.6f' % t


# -- special Lagrangian planes ------------------------------------------------
def _complex_to_h3(z):
    """z_k = ω(4+k) + i ω(k) for k = 1, 2, 3, and ω4 = 0."""
    z = np.asarray(z, dtype=complex)
    return np.array([z[0].imag, z[1].imag, z[2].imag, 0.0,
                     z[0].real, z[1].real, z[2].real])


def special_lagrangian_plane(rng):
    """A random 3-plane of ω4⊥ on which ℜΥ is the volume form."""
    theta = rng.uniform(0, 2 * math.pi, size=2)
    theta = np.append(theta, -math.pi / 2 - theta.sum())
    g = unitary_group.rvs(3, random_state=rng)
    g = g / np.linalg.det(g) ** (1 / 3)
    columns = g.dot(np.diag(np.exp(1j * theta)))
    return ThreePlane([_complex_to_h3(columns[:, k]) for k in range(3)],
                      'slag')


def orbit_tangent_residual(t, vectors):
    """Distance of ``vectors`` (rows in H3) from the orbit tangent space."""
    m = coframe_matrix(_radians(t), FLOAT)
    u, sv, _ = np.linalg.svd(m)
    q = u[:, :int(np.sum(sv > 1e-9))]
    v = float_array(vectors)
    return float(np.max(np.abs(v - v.dot(q).dot(q.T))))


def slag_implies_assoc(t, plane, tol=1e-9):
    """(ℜΥ-calibrated?, φ-calibrated?) for a 3-plane tangent to the orbit."""
    if not isinstance(plane, ThreePlane):
        plane = ThreePlane(plane)
    off = orbit_tangent_residual(t, plane.vectors)
    if off > tol:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('plane', plane, 'tangent to the orbit'))
    b = plane.basis
    slag = magnitude(phi_value(*b, form=RE_UPSILON) - 1) <= tol
    assoc = magnitude(phi_value(*b) - 1) <= tol
    return slag, assoc


def slag_sweep(t, samples=100, seed=0, tol=1e-9):
    """Counterexamples to ℜΥ-calibrated ⇒ φ-calibrated among random planes.

    Half the samples are special Lagrangian, half are arbitrary planes of
    ω4⊥. Returns (counterexamples, calibrated).
    """
    rng = np.random.default_rng(seed)
    bad = calibrated = 0
    for i in range(samples):
        if i % 2 == 0:
            plane = special_lagrangian_plane(rng)
        else:
            v = rng.normal(size=(3, 7))
            v[:, 3] = 0.0
            plane = ThreePlane(v, 'random')
        slag, assoc = slag_implies_assoc(t, plane, tol)
        calibrated += slag
        bad += slag and not assoc
    return bad, calibrated


# -- report -------------------------------------------------------------------
EXACT_PARAMETERS = tuple(Fraction(k, 12) for k in (1, 2, 3, 6, 9, 10))


def _parameters(mode):
    if mode.exact:
        return EXACT_PARAMETERS
    return tuple(_radians(t) for t in EXACT_PARAMETERS)


def _random_principal(rng, n, margin=0.05):
    """n parameters in (0, π) at least ``margin`` from (π/3)Z."""
    out = []
    while len(out) < n:
        t = rng.uniform(0, math.pi)
        r = t % (math.pi / 3)
        if margin < r < math.pi / 3 - margin:
            out.append(float(t))
    return out


def _sweep(fn, values, threads):
    """fn over values, results in input order."""
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(fn, values))


def _pullback_entries(mode, seed, threads):
    out = []
    timer = Timer()
    exact_res = max(pullback_mismatch(t, mode) for t in _parameters(mode))
    out.append(entry('cohom1.pullback.exact', 'ω1..ω7 along the section '
                     'match the closed form', exact_res,
                     0.0 if mode.exact else mode.tol, timer,
                     '%d parameters' % len(EXACT_PARAMETERS)))

    timer = Timer()
    rng = np.random.default_rng(seed)
    values = list(rng.uniform(0, 2 * math.pi, size=100))
    worst = max(_sweep(lambda t: pullback_mismatch(t, FLOAT), values,
                       threads))
    out.append(entry('cohom1.pullback.random', 'ω1..ω7 match at random t',
                     worst, 1e-12, timer, '100 parameters'))

    timer = Timer()
    dt = [f.coefficient((DT,)) for f in pullback_coframe(Fraction(1, 4))]
    expected = [ZERO] * BERGER.dim
    expected[OMEGA[3]] = ARC_SCALE
    out.append(assertion('cohom1.pullback.dt', 'ω4 = (3√5/10)dt and no '
                         'other form sees dt', dt == expected, timer))

    timer = Timer()
    printed = pullback_mismatch(Fraction(1, 4), mode, printed=True)
    out.append(assertion('cohom1.pullback.printed-omega5', 'ω5 with '
                         '(μ1 - ν1) does not match the pullback',
                         printed > mode.tol, timer,
                         'residual %.6g' % printed, residual=printed))

    timer = Timer()
    defect = max(d_commutation_defect(t, mode) for t in _parameters(mode))
    out.append(entry('cohom1.pullback.d-commutes', 'the orbit differential '
                     'agrees with the Berger structure equations', defect,
                     0.0 if mode.exact else mode.tol, timer))

    timer = Timer()
    u = geodesic(Fraction(1, 4), mode)
    check_orthogonal(u, mode.tol, 'u')
    speed = BERGER.coordinates(_velocity(True))[OMEGA[3]]
    out.append(entry('cohom1.geodesic.speed', 'ω4(u⁻¹u′) = 3√5/10, so '
                     's = (3√5/10)t is arclength',
                     magnitude(speed - ARC_SCALE), 0.0, timer))
    return out


def _orbit_entries(mode, seed, threads):
    out = []
    params = _parameters(mode)

    timer = Timer()
    structures = [orbit_su3(t, mode) for t in params]
    cubes = [magnitude(omega_cubed(s)) for s in structures]
    out.append(assertion('cohom1.su3.nondegenerate', 'Ω³ ≠ 0 on principal '
                         'orbits', min(cubes) > mode.tol, timer,
                         'min |Ω³| %.6g' % min(cubes)))

    timer = Timer()
    mixed = max(max(s.omega.wedge(s.re_upsilon).max_coefficient(),
                    s.omega.wedge(s.im_upsilon).max_coefficient())
                for s in structures)
    out.append(entry('cohom1.su3.compatible', 'Ω∧ℜΥ = Ω∧ℑΥ = 0', mixed,
                     0.0 if mode.exact else mode.tol, timer))

    timer = Timer()
    full = pullback_form(OMEGA_SU3, Fraction(1, 4), mode, on_orbit=False)
    out.append(assertion('cohom1.su3.no-dt', 'Ω has no dt component',
                         not full.interior(DT), timer))

    timer = Timer()
    res = max(orbit_phi_restriction(t, mode) for t in params)
    out.append(entry('cohom1.su3.phi-restriction', 'φ restricts to ℜΥ on '
                     'the orbit', res, 0.0 if mode.exact else mode.tol,
                     timer))

    timer = Timer()
    singular = [Fraction(k, 3) for k in range(4)]
    ranks = [coframe_rank(t, mode) for t in singular]
    generic = [coframe_rank(t, mode) for t in params]
    out.append(assertion('cohom1.singular.rank', 'the orbit coframe drops '
                         'rank exactly on singular orbits',
                         all(r < SO4.dim for r in ranks) and
                         all(r == SO4.dim for r in generic), timer,
                         'singular ranks %s' % ranks))

    timer = Timer()
    period = principal_period()
    out.append(entry('cohom1.singular.period', 'singular orbits recur every '
                     'π/3', abs(period - math.pi / 3), 1e-9, timer,
                     'period %.12g' % period))

    timer = Timer()
    orders = [orbit_stabilizer_order(t, mode) for t in singular + list(
        params)]
    ok = (all(o == math.inf for o in orders[:len(singular)]) and
          all(o == 4 for o in orders[len(singular):]))
    diagonal = [exact_array(np.diag(d).tolist())
                for d in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))]
    v = float_array(stabilized_vector(params[0], mode))
    fixed = max(float(np.max(np.abs(float_array(rho_2(g)).dot(v) - v)))
                for g in diagonal)
    out.append(assertion('cohom1.singular.stabilizer', 'stabilizer O(2) on '
                         'singular orbits and Z2×Z2 otherwise',
                         ok and fixed <= mode.tol, timer,
                         'orders %s' % orders, residual=fixed))

    timer = Timer()
    rng = np.random.default_rng(seed)
    bad, calibrated = slag_sweep(_radians(params[0]), 100, seed)
    out.append(assertion('cohom1.slag-assoc', 'special Lagrangian planes of '
                         'a principal orbit are associative',
                         bad == 0 and calibrated > 0, timer,
                         '%d calibrated, %d counterexamples'
                         % (calibrated, bad)))

    timer = Timer()
    values = _random_principal(rng, 20)
    constants = _sweep(lambda t: nearly_half_flat_constant(t, FLOAT), values,
                       threads)
    spread = max(abs(real_constant(c) - real_constant(constants[0][0]))
                 for c, _ in constants)
    worst = max(r for _, r in constants)
    out.append(entry('cohom1.half-flat.t-independent', 'one constant for '
                     'd ℜΥ = c Ω∧Ω on every principal orbit',
                     max(spread, worst), mode.tol, timer,
                     '20 random parameters'))
    c, _ = nearly_half_flat_constant(params[0], mode)
    out.append(entry('cohom1.half-flat.constant', 'd ℜΥ = c Ω∧Ω',
                     real_constant(c), 0.0, timer, format_constant(c),
                     status=MEASURED))
    return out


def _nk_entries(mode, sweep, threads):
    out = []
    timer = Timer()
    step = (math.pi / 3) / sweep
    values = [(k + 0.5) * step for k in range(sweep)]
    defects = _sweep(lambda t: nk_defect(t, FLOAT), values, threads)
    matched = [m for m, _ in defects]
    free = [f for _, f in defects]
    lowest = min(free)
    holds = lowest > mode.tol
    if not holds:
        contradiction('cohom1.not-nk.sweep', 'nearly-Kähler principal orbit '
                      'found in the sweep')
    out.append(assertion('cohom1.not-nk.sweep', 'the nearly-Kähler defect '
                         'stays away from zero', holds, timer,
                         'min free-phase defect %.6g over %d parameters'
                         % (lowest, sweep), residual=lowest))
    out.append(entry('cohom1.not-nk.min-defect', 'min of |dΩ ∓ 3ℑΥ|',
                     min(matched), 0.0, timer, '%.12g' % min(matched),
                     status=MEASURED))
    slope = max(abs(b - a) / step for a, b in zip(matched[:-1], matched[1:]))
    out.append(entry('cohom1.not-nk.slope', 'largest change of the defect '
                     'per unit t', slope, 0.0, timer, '%.6g' % slope,
                     status=MEASURED))
    return out


def cohom1_report(config):
    mode = config.scalar_mode
    entries = _pullback_entries(mode, config.seed, config.threads)
    entries += _orbit_entries(mode, config.seed, config.threads)
    for t in _parameters(mode)[:2]:
        entries.append(verify_nearly_half_flat(t, mode))
        entries.append(verify_not_nearly_kahler(t, mode))
    entries += _nk_entries(mode, config.sweep, config.threads)
    logger.info('cohom1 suite: %d entries', len(entries))
    return entries
