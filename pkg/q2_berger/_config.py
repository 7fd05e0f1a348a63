# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import os

from q2_berger._scalar import ScalarMode
from q2_berger._stab import GROUP_NAMES, is_group_name
from q2_berger._berger import CASES


SUITES = ('all', 'structure', 'g2', 'flag', 'cohom1', 'rep', 'stab',
          'berger')

_NAT_NUM = (lambda x: x > 0, 'greater than zero')
_WHOLE_NUM = (lambda x: x >= 0, 'non-negative')
_SKIP = (lambda x: True, '')
_valid_inputs = {
    'mode': (lambda x: x in (ScalarMode.EXACT, ScalarMode.FLOAT),
             "'exact' or 'float'"),
    'tol': _NAT_NUM,
    'threads': _NAT_NUM,
    'seed': _WHOLE_NUM,
    'family_samples': _NAT_NUM,
    'grid_side': _NAT_NUM,
    'cone_grid': _NAT_NUM,
    'sweep': (lambda x: x > 1, 'greater than one'),
    'orbit_samples': _NAT_NUM,
    'dodeca_grid': (lambda x: len(x) == 2 and min(x) > 1,
                    'a pair of grid sizes greater than one'),
    'suite': (lambda x: x in SUITES, 'one of %s' % ', '.join(SUITES)),
    'group': (is_group_name, 'one of %s' % ', '.join(GROUP_NAMES)),
    'case': (lambda x: x in CASES, 'one of %s' % ', '.join(CASES)),
    'samples': _NAT_NUM,
    'timing': _SKIP,
}


def _check_inputs(**kwargs):
    for param, arg in kwargs.items():
        check_is_valid, explanation = _valid_inputs[param]
        if not check_is_valid(arg):
            raise ValueError('Argument to %r was %r, should be %s.'
                             % (param, arg, explanation))


class Config:
    """Run settings shared by every suite."""

    FIELDS = ('mode', 'tol', 'threads', 'seed', 'family_samples',
              'grid_side', 'cone_grid', 'sweep', 'orbit_samples',
              'dodeca_grid')

    def __init__(self, mode='exact', tol=1e-9, threads=None, seed=0,
                 family_samples=50, grid_side=20, cone_grid=10000, sweep=50,
                 orbit_samples=20, dodeca_grid=(256, 512)):
        if threads is None:
            threads = os.cpu_count() or 1
        dodeca_grid = tuple(dodeca_grid)
        _check_inputs(mode=mode, tol=tol, threads=threads, seed=seed,
                      family_samples=family_samples, grid_side=grid_side,
                      cone_grid=cone_grid, sweep=sweep,
                      orbit_samples=orbit_samples, dodeca_grid=dodeca_grid)
        self.mode = mode
        self.tol = tol
        self.threads = threads
        self.seed = seed
        self.family_samples = family_samples
        self.grid_side = grid_side
        self.cone_grid = cone_grid
        self.sweep = sweep
        self.orbit_samples = orbit_samples
        self.dodeca_grid = dodeca_grid

    @property
    def scalar_mode(self):
        return ScalarMode(self.mode, self.tol)

    def to_dict(self, threads=True):
        """Settings for the report header; thread count is optional since
        it does not change results."""
        out = {name: getattr(self, name) for name in self.FIELDS}
        out['dodeca_grid'] = list(self.dodeca_grid)
        if not threads:
            del out['threads']
        return out

    def __repr__(self):
        return 'Config(%s)' % ', '.join('%s=%r' % (k, getattr(self, k))
                                        for k in self.FIELDS)
