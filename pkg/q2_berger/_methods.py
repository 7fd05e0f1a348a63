# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import collections
import logging

import pandas as pd

from q2_berger._config import Config, _check_inputs
from q2_berger._report import VerificationReport
from q2_berger._liealg import structure_report
from q2_berger._rep import rep_report
from q2_berger._g2 import g2_report
from q2_berger._stab import stab_report, classify as _classify
from q2_berger._berger import (
    berger_report, homogeneous_case, orbit_points, points_dataframe,
    vectors_dataframe, dodeca_intersection)
from q2_berger._flag import flag_report
from q2_berger._cohom1 import cohom1_report


logger = logging.getLogger(__name__)

SUITE_RUNNERS = collections.OrderedDict([
    ('structure', lambda config: structure_report(config.scalar_mode)),
    ('rep', lambda config: rep_report(config.scalar_mode, seed=config.seed)),
    ('g2', g2_report),
    ('stab', stab_report),
    ('berger', berger_report),
    ('flag', flag_report),
    ('cohom1', cohom1_report),
])


def run_suite(suite, config):
    """All entries of one suite, or of every suite for 'all'."""
    _check_inputs(suite=suite)
    names = list(SUITE_RUNNERS) if suite == 'all' else [suite]
    report = VerificationReport()
    for name in names:
        logger.info('running the %s suite', name)
        report.extend(SUITE_RUNNERS[name](config))
    return report


def verify(suite: str = 'all', mode: str = 'exact', tol: float = 1e-9,
           seed: int = 0) -> pd.DataFrame:
    config = Config(mode=mode, tol=tol, seed=seed)
    return run_suite(suite, config).to_dataframe()


def classify(group: str, seed: int = 0) -> pd.DataFrame:
    _check_inputs(group=group, seed=seed)
    return _classify(group, seed)


def orbit(case: str, samples: int = 20, seed: int = 0) -> pd.DataFrame:
    _check_inputs(case=case, samples=samples, seed=seed)
    points = orbit_points(homogeneous_case(case), samples, seed)
    return points_dataframe(points, case)


def intersect_veronese() -> pd.DataFrame:
    found = dodeca_intersection()
    return vectors_dataframe(found.points, 'dodecahedron')
