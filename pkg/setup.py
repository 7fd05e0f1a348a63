# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from setuptools import setup, find_packages

import versioneer


setup(
    name="q2-berger",
    version=versioneer.get_version(),
    cmdclass=versioneer.get_cmdclass(),
    license='BSD-3-Clause',
    packages=find_packages(),
    description="Verification suites for the G2 geometry of the Berger "
                "space SO(5)/SO(3)",
    entry_points={
        "qiime2.plugins":
        ["q2-berger=q2_berger.plugin_setup:plugin"],
        "console_scripts":
        ["q2-berger-verify=q2_berger._cli:main"],
    },
    package_data={
        "q2_berger": ["assets/*", 'citations.bib'],
        'q2_berger.tests': ['data/*'],
    },
    zip_safe=False,
)
