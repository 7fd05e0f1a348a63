# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import collections
import logging
import math
import time
import warnings

import pandas as pd

from q2_berger._format import REPORT_HEADER


logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
MEASURED = 'measured'

Entry = collections.namedtuple(
    'Entry', ['check_id', 'anchor', 'status', 'residual', 'runtime_ms',
              'details'])


class Timer:
    """Wall clock for one check, in milliseconds."""

    def __init__(self):
        self._start = time.perf_counter()

    def elapsed_ms(self):
        return (time.perf_counter() - self._start) * 1000.0


def entry(check_id, anchor, residual, tol, timer=None, details='',
          status=None):
    """Build an Entry; status defaults to pass iff residual <= tol."""
    if status is None:
        status = PASS if residual <= tol else FAIL
    runtime = timer.elapsed_ms() if timer is not None else 0.0
    if status == FAIL:
        logger.warning('%s failed: residual %.3e (%s)', check_id, residual,
                       details)
    else:
        logger.info('%s %s: residual %.3e', check_id, status, residual)
    return Entry(check_id, anchor, status, float(residual), runtime, details)


def assertion(check_id, anchor, holds, timer=None, details='',
              residual=0.0):
    """An Entry for a boolean claim."""
    return entry(check_id, anchor, residual, 0.0, timer=timer,
                 details=details, status=PASS if holds else FAIL)


def contradiction(check_id, message):
    """Loudly flag a computed value that contradicts a known theorem."""
    logger.warning('%s: %s', check_id, message)
    warnings.warn('%s: %s' % (check_id, message), RuntimeWarning)


def _finite_or_none(value):
    """JSON has no NaN or infinity; undefined residuals become null."""
    return value if math.isfinite(value) else None


class VerificationReport:
    def __init__(self, entries=()):
        self.entries = []
        self._ids = set()
        self.extend(entries)

    def add(self, item):
        if item.check_id in self._ids:
            raise ValueError('Duplicate check id %r in report.'
                             % item.check_id)
        self._ids.add(item.check_id)
        self.entries.append(item)

    def extend(self, items):
        if isinstance(items, Entry):
            items = [items]
        for item in items:
            self.add(item)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, check_id):
        for item in self.entries:
            if item.check_id == check_id:
                return item
        raise KeyError(check_id)

    @property
    def passed(self):
        return all(e.status != FAIL for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    def to_dataframe(self, timing=True):
        rows = [(e.check_id, e.anchor, e.status, e.residual,
                 e.runtime_ms if timing else 0.0, e.details)
                for e in self.entries]
        df = pd.DataFrame(rows, columns=REPORT_HEADER)
        return df.set_index('check-id')

    def to_json_dict(self, timing=True):
        return [{'check_id': e.check_id,
                 'paper_anchor': e.anchor,
                 'status': e.status,
                 'residual': _finite_or_none(e.residual),
                 'runtime_ms': round(e.runtime_ms, 3) if timing else 0.0,
                 'details': e.details}
                for e in self.entries]
