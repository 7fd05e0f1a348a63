# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import collections
import functools
import itertools
import logging
import math
import re
from fractions import Fraction

import numpy as np
import pandas as pd
from mpmath import mp
from scipy.optimize import least_squares, minimize_scalar
from scipy.spatial.transform import Rotation

from q2_berger._format import CLASSIFICATION_HEADER
from q2_berger._scalar import (
    EXACT, FLOAT, ONE, HALF, RADICANDS, TAU, ZERO, FieldScalar, exact_array,
    exact_identity, exact_inverse, exact_kernel, exact_rank, exact_zeros,
    float_array, is_exact_array, magnitude)
from q2_berger._rep import (
    check_orthogonal, hat, lambda_n, rho_3, rotation_x, random_rotation)
from q2_berger._g2 import (
    FAMILIES, ISOLATED, ThreePlane, plane_families, random_plane, unit)
from q2_berger._report import MEASURED, Timer, entry, assertion


logger = logging.getLogger(__name__)

CAP = 10 ** 4


def _key(m):
    if is_exact_array(m):
        return tuple(m.ravel())
    return tuple(np.round(m, 9).ravel() + 0.0)


class FiniteRotationGroup:
    """A finite subgroup of SO(3), stored as its full element list."""

    def __init__(self, name, generators, elements, conjugator=None):
        self.name = name
        self.generators = list(generators)
        self.elements = list(elements)
        self.conjugator = conjugator
        self._keys = {_key(g) for g in self.elements}
        self._rho3_float = None

    @property
    def exact(self):
        return all(is_exact_array(g) for g in self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return '<FiniteRotationGroup %s of order %d>' % (self.name,
                                                          self.order)

    def contains(self, g):
        g = np.asarray(g)
        if is_exact_array(g) != self.exact:
            g = float_array(g)
            return _key(g) in {_key(float_array(e)) for e in self.elements}
        return _key(g) in self._keys

    def generator_images(self, exact=True):
        """rho_3 of the generators, exact when possible and requested."""
        if exact and self.exact:
            return [rho_3(g) for g in self.generators]
        return [rho_3(float_array(g)) for g in self.generators]

    def rho3_float(self):
        if self._rho3_float is None:
            self._rho3_float = [rho_3(float_array(g)) for g in self.elements]
        return self._rho3_float


def group_closure(generators, name='G', cap=CAP):
    """All products of the generators; exact matrix equality when exact."""
    gens = [np.asarray(g) for g in generators]
    for g in gens:
        check_orthogonal(g, name='generators')
        if np.linalg.det(float_array(g)) < 0:
            raise ValueError('Argument to %r was %r, should be %s.'
                             % ('generators', g.tolist(),
                                'a rotation (determinant 1)'))
    exact = all(is_exact_array(g) for g in gens)
    if not exact:
        gens = [float_array(g) for g in gens]
    identity = exact_identity(3) if exact else np.eye(3)
    elements, seen, frontier = [identity], {_key(identity)}, [identity]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                b = g.dot(a)
                k = _key(b)
                if k in seen:
                    continue
                seen.add(k)
                elements.append(b)
                fresh.append(b)
                if len(elements) > cap:
                    raise RuntimeError('Closure of %s exceeded %d elements; '
                                       'the generators do not generate a '
                                       'finite group.' % (name, cap))
        frontier = fresh
    logger.debug('closure of %s: %d elements', name, len(elements))
    return FiniteRotationGroup(name, gens, elements)


def conjugate(group, h):
    """The group h G h⁻¹ for a rotation h."""
    h = np.asarray(h)
    check_orthogonal(h, name='h')
    if not (is_exact_array(h) and group.exact):
        h = float_array(h)
        gens = [float_array(g) for g in group.generators]
        elements = [float_array(g) for g in group.elements]
    else:
        gens, elements = group.generators, group.elements
    ht = h.T
    if group.conjugator is None:
        conj = h
    elif is_exact_array(h):
        conj = h.dot(group.conjugator)
    else:
        conj = h.dot(float_array(group.conjugator))
    return FiniteRotationGroup(group.name,
                               [h.dot(g).dot(ht) for g in gens],
                               [h.dot(g).dot(ht) for g in elements],
                               conjugator=conj)


# -- catalogue ----------------------------------------------------------------
FLIP = exact_array([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
CYCLE = exact_array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
QUARTER = exact_array([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
OCT_SWAP = exact_array([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])


def _ico_generator():
    t, ti = TAU, TAU - 1
    return exact_array([[ONE, -t, ti], [t, ti, -ONE], [ti, ONE, t]]) * HALF


def _dodeca_generator():
    t, ti = TAU, TAU - 1
    return exact_array([[ONE, -ti, -t], [-ti, t, -ONE], [t, ONE, ti]]) * HALF


ICO_GENERATOR = _ico_generator()
DODECA_GENERATOR = _dodeca_generator()

GROUP_NAMES = ('Ico', 'Ico_dodeca', 'Oct', 'Tet', 'trivial', 'Z<n>', 'D<n>')
_CYCLIC = re.compile(r'^([ZD])(\d+)$')


@functools.lru_cache(maxsize=None)
def is_group_name(name):
    if name in ('Ico', 'Ico_dodeca', 'Oct', 'Tet', 'trivial'):
        return True
    match = _CYCLIC.match(name) if isinstance(name, str) else None
    return match is not None and int(match.group(2)) >= 1


def catalogue_group(name):
    """Ico, Ico_dodeca, Oct, Tet, trivial, Z<n> or D<n> (about the x-axis).

    Z<n> and D<n> are exact when n divides 24.
    """
    if name == 'Ico':
        return group_closure([FLIP, CYCLE, ICO_GENERATOR], name)
    if name == 'Ico_dodeca':
        return group_closure([FLIP, CYCLE, DODECA_GENERATOR], name)
    if name == 'Oct':
        return group_closure([QUARTER, CYCLE, OCT_SWAP], name)
    if name == 'Tet':
        return group_closure([FLIP, CYCLE], name)
    if name == 'trivial':
        return FiniteRotationGroup(name, [], [exact_identity(3)])
    match = _CYCLIC.match(name)
    if match is None or int(match.group(2)) < 1:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('group', name, 'one of %s' % ', '.join(
                             GROUP_NAMES)))
    n = int(match.group(2))
    gens = [rotation_x(Fraction(2, n))]
    if match.group(1) == 'D':
        c = FLIP if is_exact_array(gens[0]) else float_array(FLIP)
        gens.append(c)
    return group_closure(gens, name)


def cyclic_order(name):
    match = _CYCLIC.match(name)
    return int(match.group(2)) if match else None


# -- isotypic decomposition ---------------------------------------------------
Block = collections.namedtuple(
    'Block', ['basis', 'pieces', 'irreducible_dim', 'multiplicity',
              'kernel'], defaults=(None,))

# working precision for recognizing eigenvalues in Q(√2, √3, √5)
_DPS = 100


class IsotypicDecomposition:
    """H3 split into blocks of isomorphic irreducible pieces.

    When ``exact`` is set every block also carries ``kernel``, an exact
    column basis of the block as the kernel of a central element of the
    group algebra.
    """

    def __init__(self, group, blocks, exact=False):
        self.group = group
        self.blocks = blocks
        self.exact = exact

    @property
    def dims(self):
        return [b.basis.shape[1] for b in self.blocks]

    def projector(self, i):
        b = self.blocks[i].basis
        return b.dot(b.T)

    def exact_projector(self, i):
        """Orthogonal projector onto block i over the field."""
        k = self.blocks[i].kernel
        if k is None:
            raise ValueError('Block %d of %s has no exact basis.'
                             % (i, self.group.name))
        return k.dot(exact_inverse(k.T.dot(k))).dot(k.T)

    def invariance_residual(self):
        """max over g and blocks of |rho_3(g)P - P rho_3(g)|."""
        worst = 0.0
        for r in self.group.rho3_float():
            for i in range(len(self.blocks)):
                p = self.projector(i)
                worst = max(worst, float(np.max(np.abs(r.dot(p) -
                                                       p.dot(r)))))
        return worst

    def __repr__(self):
        return '<IsotypicDecomposition of %s: %s>' % (
            self.group.name, ', '.join('%dx%d' % (b.multiplicity,
                                                  b.irreducible_dim)
                                       for b in self.blocks))


def _clusters(values, tol):
    groups, current = [], [0]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tol:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    groups.append(current)
    return groups


def _snap(basis, tol=1e-9):
    """Replace a block basis by coordinate vectors when they span it."""
    p = basis.dot(basis.T)
    inside = [k for k in range(7)
              if np.linalg.norm(p[:, k] - np.eye(7)[:, k]) <= tol]
    if len(inside) == basis.shape[1]:
        return np.eye(7)[:, inside]
    return basis


def _first_index(basis):
    diag = np.einsum('ij,ij->i', basis, basis)
    return int(np.argmax(diag > 1e-9))


def _commutant_sample(mats, rng):
    s = rng.normal(size=(7, 7))
    s = s + s.T
    return sum(r.dot(s).dot(r.T) for r in mats) / len(mats)


def _separated(values, tol):
    clusters = _clusters(values, tol)
    means = [values[c].mean() for c in clusters]
    return clusters, len(means) < 2 or min(np.diff(means)) > 1e-5


def _group_pieces(pieces, mats, rng):
    """Merge irreducible pieces into blocks of isomorphic ones.

    Two pieces are isomorphic when a group-averaged map between them is
    nonzero.
    """
    link_sample = rng.normal(size=(7, 7))
    labels = list(range(len(pieces)))
    for i, j in itertools.combinations(range(len(pieces)), 2):
        if pieces[i].shape[1] != pieces[j].shape[1]:
            continue
        link = pieces[j].dot(pieces[j].T).dot(link_sample).dot(
            pieces[i]).dot(pieces[i].T)
        intertwiner = sum(r.dot(link).dot(r.T) for r in mats)
        if np.linalg.norm(intertwiner) > 1e-8:
            old, new = labels[j], labels[i]
            labels = [new if x == old else x for x in labels]

    blocks = []
    for label in sorted(set(labels)):
        members = [pieces[k] for k in range(len(pieces)) if labels[k] == label]
        basis = _snap(np.hstack(members))
        blocks.append(Block(basis, members, members[0].shape[1],
                            len(members)))
    return blocks


def _float_blocks(mats, rng, tol):
    """Blocks from the eigenspaces of a random symmetric commutant element,
    or None when the sample left two pieces unresolved."""
    values, vectors = np.linalg.eigh(_commutant_sample(mats, rng))
    clusters, ok = _separated(values, tol)
    if not ok:
        return None
    return _group_pieces([vectors[:, c] for c in clusters], mats, rng)


# -- exact decomposition ------------------------------------------------------
def exact_images(group):
    """rho_3 of every element over the field, by closure over the
    generators, in the order of ``group.elements``."""
    gens = list(zip(group.generators, group.generator_images(exact=True)))
    identity = exact_identity(3)
    images = {_key(identity): exact_identity(7)}
    frontier = [(identity, images[_key(identity)])]
    while frontier:
        fresh = []
        for a, ra in frontier:
            for g, rg in gens:
                b = g.dot(a)
                k = _key(b)
                if k not in images:
                    images[k] = rg.dot(ra)
                    fresh.append((b, images[k]))
        frontier = fresh
    return [images[_key(g)] for g in group.elements]


def conjugacy_classes(group):
    """Element indices grouped by conjugacy class."""
    index = {_key(g): i for i, g in enumerate(group.elements)}
    seen, classes = set(), []
    for i, g in enumerate(group.elements):
        if i in seen:
            continue
        members = sorted({index[_key(h.dot(g).dot(h.T))]
                          for h in group.elements})
        seen.update(members)
        classes.append(members)
    return classes


def _central_element(images, classes, rng):
    """A random real class sum; it acts by a scalar on each block."""
    weights = rng.integers(1, 100, size=len(classes))
    total = exact_zeros((7, 7))
    for w, members in zip(weights, classes):
        for i in members:
            total = total + (images[i] + images[i].T) * int(w)
    return total


def _to_mpf(x):
    return mp.fsum(mp.mpf(c.numerator) / c.denominator * mp.sqrt(r)
                   for c, r in zip(x.coeffs, RADICANDS) if c)


def field_eigenvalues(matrix):
    """Distinct eigenvalues of a symmetric exact matrix as FieldScalars.

    The eigenvalues are computed to high precision and recognized by an
    integer relation against the basis radicals; None when one of them
    is not found in the field. Callers confirm each value exactly.
    """
    with mp.workdps(_DPS):
        m = mp.matrix([[_to_mpf(x) for x in row] for row in matrix])
        spectrum = mp.eigsy(m, eigvals_only=True)
        values = sorted(spectrum[i] for i in range(spectrum.rows))
        radicals = [mp.sqrt(r) for r in RADICANDS]
        gap = mp.mpf(10) ** (-_DPS // 2)
        out, last = [], None
        for v in values:
            if last is not None and v - last < gap:
                continue
            last = v
            if abs(v) < gap:
                out.append(ZERO)
                continue
            relation = mp.pslq([v] + radicals, maxcoeff=10 ** 8,
                               maxsteps=10 ** 5)
            if relation is None or relation[0] == 0:
                return None
            out.append(FieldScalar([Fraction(-a, relation[0])
                                    for a in relation[1:]]))
    return out


def character_norm(kernel, images):
    """<χ, χ> of the block spanned by ``kernel``, over the field."""
    p = kernel.dot(exact_inverse(kernel.T.dot(kernel))).dot(kernel.T)
    total = ZERO
    for r in images:
        chi = np.sum(p * r.T)
        total = total + chi * chi
    return total / len(images)


def _split_block(basis, mats, rng, tol):
    """Irreducible pieces of one isotypic block, or None."""
    if basis.shape[1] == 1:
        return [basis]
    restricted = basis.T.dot(_commutant_sample(mats, rng)).dot(basis)
    values, vectors = np.linalg.eigh(restricted)
    clusters, ok = _separated(values, tol)
    if not ok:
        return None
    return [basis.dot(vectors[:, c]) for c in clusters]


def _exact_blocks(images, classes, mats, rng, tol):
    """Blocks as exact kernels of a central element, or None when the
    sample merged two isotypic blocks or missed the field."""
    central = _central_element(images, classes, rng)
    values = field_eigenvalues(central)
    if values is None:
        return None
    kernels = [exact_kernel(central - exact_identity(7) * lam)
               for lam in values]
    if sum(k.shape[1] for k in kernels) != 7 or \
            any(k.shape[1] == 0 for k in kernels):
        return None

    blocks = []
    for kernel in kernels:
        basis = np.linalg.qr(float_array(kernel))[0]
        pieces = _split_block(basis, mats, rng, tol)
        if pieces is None:
            return None
        m = len(pieces)
        norm = character_norm(kernel, images)
        if norm != m * m and norm != 2 * m * m:
            return None
        blocks.append(Block(_snap(basis), pieces, basis.shape[1] // m, m,
                            kernel))
    return blocks


def invariant_subspaces(group, seed=0, attempts=5, tol=1e-10):
    """Isotypic decomposition of H3 under rho_3(group).

    Exact groups are split by the kernels of a central element of the
    group algebra, confirmed over the field; the irreducible pieces inside
    a block and all of a float group's decomposition come from the
    eigenspaces of a random symmetric element of the commutant.
    """
    mats = group.rho3_float()
    rng = np.random.default_rng(seed)
    if group.exact:
        images, classes = exact_images(group), conjugacy_classes(group)
    for attempt in range(attempts):
        if group.exact:
            blocks = _exact_blocks(images, classes, mats, rng, tol)
        else:
            blocks = _float_blocks(mats, rng, tol)
        if blocks is not None:
            break
        logger.debug('sample %d did not separate the pieces of %s; '
                     'resampling', attempt, group.name)
    else:
        raise RuntimeError('No sample separated the pieces of %s in %d '
                           'attempts.' % (group.name, attempts))
    blocks.sort(key=lambda b: (_first_index(b.basis), b.basis.shape[1]))
    return IsotypicDecomposition(group, blocks, exact=group.exact)


# -- invariant planes ---------------------------------------------------------
class PlaneFamily:
    """A positive-dimensional family of invariant 3-planes.

    Registered families delegate to g2.plane_families; unregistered ones
    carry a representative member built from the decomposition.
    """

    def __init__(self, name, group, spec=None, representative=None,
                 conjugator=None, dimension=None):
        self.name = name
        self.group = group
        self.spec = spec
        self.representative = representative
        self.conjugator = conjugator
        self.dimension = dimension

    @property
    def registered(self):
        return self.spec is not None

    def member(self, *params, mode=EXACT):
        if not self.registered:
            raise ValueError('Family %r has no parametrization; use its '
                             'representative.' % self.name)
        plane = plane_families(self.name, *params, mode=mode)
        if self.conjugator is not None:
            h = self.conjugator
            if not (plane.exact and is_exact_array(h)):
                plane, h = plane.to_float(), float_array(h)
            plane = plane.transformed(rho_3(h))
        return plane

    def __repr__(self):
        return '<PlaneFamily %s for %s>' % (self.name, self.group)


_GENERIC_PARAMS = {
    'Q5': (0.3,),
    'Q4a': (0.3,),
    'Q4b': (0.3, 0.7),
    'Q3': (0.3, (0.48, 0.6, 0.64)),
    'P': (0.3,),
}


def _block_traces(plane, decomposition):
    u = float_array(plane.basis).T
    p = u.dot(u.T)
    return [float(np.trace(p.dot(decomposition.projector(i))))
            for i in range(len(decomposition.blocks))]


def _conjugated(plane, group):
    if group.conjugator is None:
        return plane
    h = group.conjugator
    if not (plane.exact and is_exact_array(h)):
        plane, h = plane.to_float(), float_array(h)
    return plane.transformed(rho_3(h))


def _name_plane(plane, group):
    for name in ISOLATED:
        named = _conjugated(plane_families(name), group)
        if named.to_float().same_subspace(plane.to_float(), 1e-8):
            return named
    rows = float_array(plane.basis)
    support = [k for k in range(7) if np.any(np.abs(rows[:, k]) > 1e-9)]
    if len(support) == 3:
        coords = ThreePlane([unit(k + 1) for k in support],
                            'span(%s)' % ','.join('e%d' % (k + 1)
                                                  for k in support))
        if coords.to_float().same_subspace(plane.to_float(), 1e-8):
            return coords
    return ThreePlane(rows, 'invariant')


def _coordinate_lines(basis):
    return [k for k in range(7)
            if np.linalg.norm(basis.dot(basis.T)[:, k] -
                              np.eye(7)[:, k]) <= 1e-9]


def invariant_three_planes(group, seed=0):
    """Invariant 3-planes: isolated ThreePlanes and PlaneFamily entries."""
    deco = invariant_subspaces(group, seed)
    blocks = deco.blocks
    out = []
    for counts in itertools.product(*[range(b.multiplicity + 1)
                                      for b in blocks]):
        if sum(k * b.irreducible_dim for k, b in zip(counts, blocks)) != 3:
            continue
        full = [b.basis for k, b in zip(counts, blocks)
                if k and k == b.multiplicity]
        partial = [i for i, (k, b) in enumerate(zip(counts, blocks))
                   if 0 < k < b.multiplicity]
        if not partial:
            out.append(_name_plane(ThreePlane(np.hstack(full).T), group))
            continue
        out.extend(_families(group, deco, counts, full, partial))
    logger.info('%s: %d invariant 3-plane entries', group.name, len(out))
    return out


def _families(group, deco, counts, full, partial):
    target = [k * b.irreducible_dim for k, b in zip(counts, deco.blocks)]
    for spec in FAMILIES.values():
        if spec.group != group.name:
            continue
        family = PlaneFamily(spec.name, group.name, spec,
                             conjugator=group.conjugator)
        member = family.member(*_GENERIC_PARAMS[spec.name], mode=FLOAT)
        traces = _block_traces(member, deco)
        if np.allclose(traces, target, atol=1e-8) and \
                stabilizer_contains(member, group):
            return [family]

    blocks = deco.blocks
    if len(partial) == 1 and counts[partial[0]] == 1 and \
            blocks[partial[0]].irreducible_dim == 1:
        lines = _coordinate_lines(blocks[partial[0]].basis)
        if lines:
            return [_name_plane(ThreePlane(np.hstack(
                full + [np.eye(7)[:, [k]]]).T), group) for k in lines]

    pieces = list(full)
    dimension = 0
    for i in partial:
        k, b = counts[i], blocks[i]
        pieces.extend(b.pieces[:k])
        dimension += k * (b.multiplicity - k)
    representative = ThreePlane(np.hstack(pieces).T, 'representative')
    return [PlaneFamily('invariant-family', group.name,
                        representative=representative,
                        dimension=dimension)]


# -- stabilizers --------------------------------------------------------------
def stabilizer_contains(plane, group):
    """Does rho_3(g) preserve the plane for every g in the group?"""
    if group.order == 1:
        return True
    exact = plane.exact and group.exact
    plane = plane if exact else plane.to_float()
    for r in group.generator_images(exact):
        if not plane.transformed(r).same_subspace(plane, 1e-8):
            return False
    return True


def invariance_residual(plane, group):
    """max over generators of |rho_3(g)P - P rho_3(g)|, exact if possible."""
    exact = plane.exact and group.exact
    p = plane.projector() if exact else float_array(
        plane.to_float().projector())
    worst = 0.0
    for r in group.generator_images(exact):
        diff = r.dot(p) - p.dot(r)
        worst = max(worst, max(magnitude(x) for x in diff.ravel()))
    return worst


def lie_stabilizer_dim(plane):
    """dim {X ∈ so(3) : lambda_3(X) E ⊆ E}."""
    exact = plane.exact
    axes = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    u = plane.vectors.T if exact else float_array(plane.vectors).T
    if exact:
        complement = exact_identity(7) - plane.projector()
    else:
        complement = np.eye(7) - plane.to_float().projector()
    columns = []
    for axis in axes:
        lam = lambda_n(hat(axis if exact else [float(a) for a in axis]), 3)
        columns.append(complement.dot(lam).dot(u).ravel())
    if exact:
        return 3 - exact_rank(np.array(columns, dtype=object).T)
    return 3 - int(np.linalg.matrix_rank(np.array(columns).T, tol=1e-9))


def _half_turn(beta):
    a = np.array([0.0, math.cos(beta), math.sin(beta)])
    return 2 * np.outer(a, a) - np.eye(3)


def _half_turn_defect(plane, beta):
    u = float_array(plane.basis).T
    moved = rho_3(_half_turn(beta)).dot(u)
    return float(np.linalg.norm(moved - u.dot(u.T.dot(moved))))


def dihedral_extension(plane, grid=180, tol=1e-8):
    """Angles β of π-rotations about (0, cos β, sin β) preserving the plane."""
    plane = plane.to_float()
    step = math.pi / grid
    betas = step * np.arange(grid)
    defects = [_half_turn_defect(plane, b) for b in betas]
    found = []
    for i in range(grid):
        left, right = defects[i - 1], defects[(i + 1) % grid]
        if defects[i] > left or defects[i] > right:
            continue
        res = minimize_scalar(lambda b: _half_turn_defect(plane, b),
                              bounds=(betas[i] - step, betas[i] + step),
                              method='bounded',
                              options={'xatol': 1e-12})
        if res.fun <= tol:
            beta = res.x % math.pi
            if not any(min(abs(beta - f), math.pi - abs(beta - f)) < 1e-6
                       for f in found):
                found.append(beta)
    return sorted(found)


def cyclic_orders(plane, max_order=12):
    """n such that the rotation by 2π/n about x preserves the plane."""
    plane = plane.to_float()
    return [n for n in range(2, max_order + 1)
            if stabilizer_contains(plane, catalogue_group('Z%d' % n))]


def orbit_residual(plane, target, starts=6, seed=0):
    """min over rotations h of |P_plane - rho_3(h) P_target rho_3(h)ᵀ|."""
    p = plane.to_float().projector()
    q = target.to_float().projector()
    rng = np.random.default_rng(seed)

    def misfit(v):
        r = rho_3(Rotation.from_rotvec(v).as_matrix())
        return (p - r.dot(q).dot(r.T)).ravel()

    best = np.inf
    for _ in range(starts):
        fit = least_squares(misfit, rng.normal(size=3), xtol=1e-14,
                            ftol=1e-14, gtol=1e-14)
        best = min(best, float(np.linalg.norm(misfit(fit.x))))
        if best < 1e-10:
            break
    return best


def _family_plane(name, theta, mode=FLOAT):
    if name == 'Q3':
        return plane_families('Q3', theta, mode=mode)
    return plane_families(name, theta, mode=mode)


def verify_family_stabilizer(name, theta):
    """Z_n ⊂ Stab, and neither Z_2n, Z_3n, a dihedral extension nor a
    circle also stabilizes the member at θ."""
    n = cyclic_order(FAMILIES[name].group)
    plane = _family_plane(name, theta)
    if not stabilizer_contains(plane, catalogue_group('Z%d' % n)):
        return False
    if lie_stabilizer_dim(plane) != 0:
        return False
    if any(stabilizer_contains(plane, catalogue_group('Z%d' % (k * n)))
           for k in (2, 3)):
        return False
    return not dihedral_extension(plane)


def measure_excluded_parameters(name):
    """Stabilizer data of a family at its excluded parameter values."""
    spec = FAMILIES.get(name)
    if spec is None or not spec.excluded:
        raise ValueError('Argument to %r was %r, should be %s.'
                         % ('name', name, 'a family with excluded values '
                            '(Q5, Q4a or Q3)'))
    a_ico = plane_families('A_Ico', mode=FLOAT)
    a_oct = plane_families('A_Oct', mode=FLOAT)
    rows = []
    for theta in spec.excluded:
        plane = _family_plane(name, theta)
        rows.append((name, theta, plane.calibration_value(),
                     lie_stabilizer_dim(plane),
                     ' '.join(str(n) for n in cyclic_orders(plane)),
                     len(dihedral_extension(plane)),
                     orbit_residual(plane, a_ico),
                     orbit_residual(plane, a_oct)))
    return pd.DataFrame(rows, columns=[
        'family', 'theta', 'calibration', 'lie-stabilizer-dim',
        'cyclic-orders', 'dihedral-axes', 'ico-orbit-residual',
        'oct-orbit-residual'])


# -- classification -----------------------------------------------------------
_SAMPLES = {
    'Q5': [(Fraction(1, 6),), (Fraction(1, 3),), (Fraction(3, 4),)],
    'Q4a': [(Fraction(1, 6),), (Fraction(1, 3),), (Fraction(3, 4),)],
    'Q4b': [(Fraction(1, 6), Fraction(1, 4)),
            (Fraction(1, 3), Fraction(3, 4)),
            (Fraction(1, 2), Fraction(1, 12))],
    'Q3': [(Fraction(1, 6),), (Fraction(1, 3),), (Fraction(3, 4),)],
    'P': [(Fraction(0),), (Fraction(2, 3),), (Fraction(4, 3),),
          (Fraction(1, 6),)],
}

_ASSOCIATIVE = {True: 'yes', False: 'no', None: 'partial'}


def _format_params(params):
    return ';'.join('%sπ' % p if isinstance(p, Fraction) else '%r' % (p,)
                    for p in params)


def _expected_stabilizer(plane, group):
    if not stabilizer_contains(plane, group):
        return False
    if plane.name in ('A123', 'A145', 'A167'):
        return lie_stabilizer_dim(plane) == 1
    if plane.name == 'A_Ico':
        return lie_stabilizer_dim(plane) == 0
    if plane.name == 'A_Oct':
        return (lie_stabilizer_dim(plane) == 0 and
                not stabilizer_contains(plane, catalogue_group('Ico')))
    return True


def _plane_row(group, plane, kind, params=''):
    value = plane.oriented().calibration_value()
    associative = 'yes' if plane.oriented().is_associative(1e-10) else 'no'
    return [group.name, plane.name, kind, params, float(value), associative]


def classify(group, seed=0):
    """The invariant 3-plane table of a group, one row per plane/sample."""
    if isinstance(group, str):
        group = catalogue_group(group)
    rows = []
    for item in invariant_three_planes(group, seed):
        if isinstance(item, ThreePlane):
            rows.append(_plane_row(group, item, 'isolated') +
                        [_expected_stabilizer(item, group)])
            continue
        if not item.registered:
            rows.append([group.name, item.name, 'family',
                         'dimension=%d' % item.dimension, float('nan'), '',
                         stabilizer_contains(item.representative, group)])
            continue
        samples = []
        for params in _SAMPLES[item.name]:
            plane = item.member(*params)
            verified = stabilizer_contains(plane, group)
            if item.spec.associative and item.conjugator is None:
                verified = verified and verify_family_stabilizer(
                    item.name, float(params[0]) * math.pi)
            samples.append(_plane_row(group, plane, 'sample',
                                      _format_params(params)) + [verified])
        rows.append([group.name, item.name, 'family', item.spec.description,
                     float('nan'), _ASSOCIATIVE[item.spec.associative],
                     all(s[-1] for s in samples)])
        rows.extend(samples)
    df = pd.DataFrame(rows, columns=CLASSIFICATION_HEADER[1:])
    df.index = pd.Index(['%s-%d' % (group.name, i + 1)
                         for i in range(len(df))], name='row-id')
    return df


# -- report -------------------------------------------------------------------
_ORDERS = (('Ico', 60), ('Ico_dodeca', 60), ('Oct', 24), ('Tet', 12),
           ('trivial', 1), ('Z8', 8), ('D6', 12), ('Z7', 7))


def _order_entries():
    out = []
    for name, expected in _ORDERS:
        timer = Timer()
        group = catalogue_group(name)
        out.append(assertion('stab.order.%s' % name,
                             '%s has order %d' % (name, expected),
                             group.order == expected, timer,
                             'order=%d exact=%s' % (group.order, group.exact)))
    return out


def _subspace_distance(basis, plane):
    p = basis.dot(basis.T)
    q = float_array(plane.to_float().projector())
    return float(np.max(np.abs(p - q)))


def _decomposition_entries(seed):
    out = []
    timer = Timer()
    deco = invariant_subspaces(catalogue_group('Ico'), seed)
    dims = sorted(deco.dims)
    three = [b.basis for b in deco.blocks if b.basis.shape[1] == 3]
    r = (_subspace_distance(three[0], plane_families('A_Ico'))
         if dims == [3, 4] else float('inf'))
    out.append(entry('stab.decomposition.Ico', 'H3 = A_Ico ⊕ C under Ico',
                     max(r, deco.invariance_residual()), 1e-12, timer,
                     'dims=%s' % dims))

    timer = Timer()
    deco = invariant_subspaces(catalogue_group('Oct'), seed)
    dims = sorted(deco.dims)
    lines = [b.basis for b in deco.blocks if b.basis.shape[1] == 1]
    ok = dims == [1, 3, 3] and np.allclose(np.abs(lines[0][:, 0]),
                                           np.eye(7)[3], atol=1e-12)
    out.append(assertion('stab.decomposition.Oct',
                         'H3 = A_Oct ⊕ span(e4) ⊕ W under Oct', ok, timer,
                         'dims=%s' % dims,
                         residual=deco.invariance_residual()))

    timer = Timer()
    deco = invariant_subspaces(catalogue_group('trivial'), seed)
    out.append(assertion('stab.decomposition.trivial',
                         'a single 7-dimensional block for the trivial group',
                         deco.dims == [7], timer, 'dims=%s' % deco.dims))
    return out


def _exact_invariance_entries():
    cases = (('Ico', 'A_Ico'), ('Oct', 'A_Oct'), ('Oct', 'W'),
             ('Tet', 'A_Oct'), ('Tet', 'A_Ico'), ('Z8', 'A123'),
             ('Z8', 'A145'), ('Z8', 'A167'))
    timer = Timer()
    worst, detail = 0.0, []
    for group_name, plane_name in cases:
        r = invariance_residual(plane_families(plane_name),
                                catalogue_group(group_name))
        worst = max(worst, r)
        if r:
            detail.append('%s/%s: %.3g' % (group_name, plane_name, r))
    return [entry('stab.invariance', 'catalogued planes commute with their '
                  'groups exactly', worst, 0.0, timer, '; '.join(detail))]


def _names(items):
    return sorted(item.name for item in items)


def _plane_list_entries(seed):
    expected = {
        'Z7': ['A123', 'A145', 'A167'],
        'Z8': ['A123', 'A145', 'A167'],
        'Z6': ['A123', 'A145', 'A167', 'span(e2,e3,e6)', 'span(e2,e3,e7)',
               'span(e4,e5,e6)', 'span(e4,e5,e7)'],
        'Z5': ['A123', 'Q5'],
        'Z4': ['A145', 'Q4a', 'Q4b'],
        'Z3': ['A167', 'Q3'],
        'Tet': ['P'],
        'Oct': ['A_Oct', 'W'],
        'Ico': ['A_Ico'],
    }
    out = []
    for name, names in expected.items():
        timer = Timer()
        items = invariant_three_planes(catalogue_group(name), seed)
        found = _names(items)
        out.append(assertion('stab.planes.%s' % name,
                             'invariant 3-planes of %s' % name,
                             found == sorted(names), timer,
                             'found %s' % ', '.join(found)))
    timer = Timer()
    table = classify('Z6', seed)
    assoc = int((table['associative'] == 'yes').sum())
    out.append(assertion('stab.planes.Z6-associative', 'only the O(2)-fixed '
                         'planes are associative among the Z6 planes',
                         len(table) == 7 and assoc == 3, timer,
                         '%d planes, %d associative' % (len(table), assoc)))
    return out


def _stabilizer_entries(seed):
    rng = np.random.default_rng(seed)
    out = []
    timer = Timer()
    dims = (lie_stabilizer_dim(plane_families('A123')),
            lie_stabilizer_dim(plane_families('A_Ico')),
            lie_stabilizer_dim(random_plane(rng)))
    out.append(assertion('stab.lie-dim', 'infinitesimal stabilizers: A123 → '
                         '1, A_Ico → 0, random → 0', dims == (1, 0, 0),
                         timer, 'dims=%s' % (dims,)))
    timer = Timer()
    a_oct = plane_families('A_Oct')
    checks = (stabilizer_contains(a_oct, catalogue_group('Oct')),
              not stabilizer_contains(a_oct, catalogue_group('Ico')),
              stabilizer_contains(a_oct, catalogue_group('trivial')))
    out.append(assertion('stab.contains', 'A_Oct is Oct- but not '
                         'Ico-invariant', all(checks), timer,
                         'checks=%s' % (checks,)))
    for name in ('Q5', 'Q4a', 'Q3'):
        timer = Timer()
        excluded = FAMILIES[name].excluded
        thetas = [t for t in rng.uniform(0.05, math.pi - 0.05, 5)
                  if min(abs(t - e) for e in excluded) > 0.05]
        ok = all(verify_family_stabilizer(name, t) for t in thetas)
        out.append(assertion('stab.family.%s' % name,
                             'generic %s planes have stabilizer exactly %s'
                             % (name, FAMILIES[name].group), ok, timer,
                             '%d parameters' % len(thetas)))
    return out


def _excluded_entries():
    out = []
    for name in ('Q5', 'Q4a', 'Q3'):
        timer = Timer()
        table = measure_excluded_parameters(name)
        for _, row in table.iterrows():
            out.append(entry(
                'stab.excluded.%s.%.6f' % (name, row['theta']),
                'stabilizer of %s at an excluded parameter' % name,
                row['lie-stabilizer-dim'], 0.0, timer,
                'cyclic orders [%s], %d dihedral axes, O_Ico residual %.3g, '
                'O_Oct residual %.3g' % (row['cyclic-orders'],
                                         row['dihedral-axes'],
                                         row['ico-orbit-residual'],
                                         row['oct-orbit-residual']),
                status=MEASURED))
    return out


def _conjugation_entries(samples, seed):
    rng = np.random.default_rng(seed)
    timer = Timer()
    oct_group = catalogue_group('Oct')
    worst = 0.0
    for _ in range(samples):
        h = random_rotation(rng.integers(2 ** 31))
        moved = conjugate(oct_group, h)
        planes = [p for p in invariant_three_planes(moved, seed)
                  if isinstance(p, ThreePlane)]
        for p in planes:
            target = plane_families(p.name, mode=FLOAT).transformed(rho_3(h))
            worst = max(worst, float(np.max(np.abs(
                p.to_float().projector() - target.projector()))))
        if _names(planes) != ['A_Oct', 'W']:
            worst = float('inf')
    return [entry('stab.conjugation', 'invariant planes of hGh⁻¹ are '
                  'rho_3(h) applied to those of G', worst, 1e-9, timer,
                  '%d conjugations' % samples)]


def stab_report(config):
    entries = _order_entries()
    entries += _decomposition_entries(config.seed)
    entries += _exact_invariance_entries()
    entries += _plane_list_entries(config.seed)
    entries += _stabilizer_entries(config.seed)
    entries += _excluded_entries()
    entries += _conjugation_entries(5, config.seed)
    logger.info('stab suite: %d entries', len(entries))
    return entries
