# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from ._methods import verify, classify, orbit, intersect_veronese, run_suite
from ._viz_report import visualize_report
from ._config import Config
from ._report import VerificationReport

from ._version import get_versions


__version__ = get_versions()['version']
del get_versions

__all__ = ['verify', 'classify', 'orbit', 'intersect_veronese',
           'visualize_report', 'run_suite', 'Config', 'VerificationReport']
