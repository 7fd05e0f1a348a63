# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------
import qiime2.plugin
import importlib
from qiime2.plugin import Str, Int, Float, Choices, Range

import q2_berger

from q2_berger._type import (VerificationResults, PlaneClassification,
                             BergerPoints)
from q2_berger._format import (
    VerificationResultsFmt, VerificationResultsDirFmt,
    PlaneClassificationFmt, PlaneClassificationDirFmt,
    BergerPointsFmt, BergerPointsDirFmt)
from q2_berger._config import SUITES
from q2_berger._berger import CASES


citations = qiime2.plugin.Citations.load('citations.bib',
                                         package='q2_berger')

plugin = qiime2.plugin.Plugin(
    name='berger',
    version=q2_berger.__version__,
    website='https://qiime2.org',
    package='q2_berger',
    citations=[citations['bolyen2019reproducible']],
    description=('This QIIME 2 plugin verifies the G2 geometry of the '
                 'Berger space SO(5)/SO(3): structure equations, the '
                 'nearly parallel 3-form, associative 3-planes and their '
                 'stabilizers, homogeneous and ruled associatives, and '
                 'the cohomogeneity-one SO(4) action.'),
    short_description='Verification suites for the Berger space.'
)


plugin.register_formats(VerificationResultsFmt, VerificationResultsDirFmt,
                        PlaneClassificationFmt, PlaneClassificationDirFmt,
                        BergerPointsFmt, BergerPointsDirFmt)
plugin.register_semantic_types(VerificationResults, PlaneClassification,
                               BergerPoints)
plugin.register_semantic_type_to_format(
    VerificationResults, artifact_format=VerificationResultsDirFmt)
plugin.register_semantic_type_to_format(
    PlaneClassification, artifact_format=PlaneClassificationDirFmt)
plugin.register_semantic_type_to_format(
    BergerPoints, artifact_format=BergerPointsDirFmt)


plugin.methods.register_function(
    function=q2_berger.verify,
    inputs={},
    parameters={
        'suite': Str % Choices(list(SUITES)),
        'mode': Str % Choices(['exact', 'float']),
        'tol': Float % Range(0, None, inclusive_start=False),
        'seed': Int % Range(0, None),
    },
    outputs=[('report', VerificationResults)],
    parameter_descriptions={
        'suite': 'The verification suite to run, or all of them.',
        'mode': ('Exact arithmetic in Q(√2, √3, √5), or floating point '
                 'with the given tolerance.'),
        'tol': 'Equality tolerance for floating point checks.',
        'seed': 'Seed for every random sample drawn by the suites.',
    },
    output_descriptions={
        'report': 'One row per check with its status and residual.'
    },
    name='Run verification suites.',
    description=('Check the structure equations, the G2 and flag '
                 'identities, the plane classification, the homogeneous '
                 'associatives and the cohomogeneity-one orbits, and '
                 'report every residual.')
)


plugin.methods.register_function(
    function=q2_berger.classify,
    inputs={},
    parameters={
        'group': Str,
        'seed': Int % Range(0, None),
    },
    outputs=[('planes', PlaneClassification)],
    parameter_descriptions={
        'group': ('A finite subgroup of SO(3): Ico, Ico_dodeca, Oct, Tet, '
                  'trivial, Z<n> or D<n>.'),
        'seed': 'Seed for the sampled family members.',
    },
    output_descriptions={
        'planes': 'The invariant 3-planes of the group.'
    },
    name='Classify invariant 3-planes.',
    description=('List the 3-planes of H3 invariant under a finite group, '
                 'with calibration values and verified stabilizers.')
)


plugin.methods.register_function(
    function=q2_berger.orbit,
    inputs={},
    parameters={
        'case': Str % Choices(list(CASES)),
        'samples': Int % Range(1, None),
        'seed': Int % Range(0, None),
    },
    outputs=[('points', BergerPoints)],
    parameter_descriptions={
        'case': 'The homogeneous associative to sample.',
        'samples': 'Number of points to sample along the orbit.',
        'seed': 'Seed for the random group elements.',
    },
    output_descriptions={
        'points': 'The sampled points as invariant cubic coefficients.'
    },
    name='Sample a homogeneous associative.',
    description='Sample points of a homogeneous associative orbit.'
)


plugin.methods.register_function(
    function=q2_berger.intersect_veronese,
    inputs={},
    parameters={},
    outputs=[('points', BergerPoints)],
    output_descriptions={
        'points': 'Unit vectors u with ν(u) in both Veronese surfaces.'
    },
    name='Intersect two Veronese surfaces.',
    description=('Solve for the unit vectors whose Veronese images lie on '
                 'Σ0 and on its icosahedral translate; these are the '
                 'vertices of a dodecahedron.')
)


plugin.visualizers.register_function(
    function=q2_berger.visualize_report,
    inputs={'report': VerificationResults},
    parameters={},
    input_descriptions={
        'report': 'Results of a verification run.'
    },
    parameter_descriptions={},
    name='Visualize a verification report.',
    description='Display every check with its status and residual.'
)

importlib.import_module('q2_berger._transformer')
