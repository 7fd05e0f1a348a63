# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import qiime2.plugin.model as model


REPORT_HEADER = ['check-id',

                 # short statement of the identity or claim being checked
                 'anchor',

                 # pass, fail, or measured (value recorded, nothing asserted)
                 'status',

                 # max coefficient residual, or the measured value for
                 # measured entries
                 'residual',
                 'runtime-ms',
                 'details']

REPORT_DESCRIPTIONS = {
    'check-id': 'The unique identifier of the check',
    'anchor': 'The identity, claim or construction being verified',
    'status': ('pass or fail for asserted checks; measured when the value '
               'is recorded without being asserted'),
    'residual': ('The largest absolute coefficient residual of the check. '
                 'For measured entries this is the measured value.'),
    'runtime-ms': 'Wall-clock runtime of the check in milliseconds',
    'details': 'Offending terms, constants and other diagnostics',
}

CLASSIFICATION_HEADER = ['row-id',
                         'group',
                         'plane',

                         # isolated, family or sample
                         'kind',
                         'parameters',
                         'calibration',
                         'associative',
                         'stabilizer-verified']

CLASSIFICATION_DESCRIPTIONS = {
    'row-id': 'Row identifier',
    'group': 'The finite rotation group whose invariant 3-planes are listed',
    'plane': 'The name of the invariant 3-plane or plane family',
    'kind': ('isolated for a single invariant plane, family for a '
             'positive-dimensional family, sample for a family member'),
    'parameters': 'Family parameters of the row, empty for isolated planes',
    'calibration': 'The value of the 3-form on an oriented orthonormal basis',
    'associative': 'Whether the plane (with some orientation) is calibrated',
    'stabilizer-verified': ('Whether the plane is invariant under the group '
                            'and the expected stabilizer type was confirmed'),
}

POINTS_HEADER = ['point-id', 'label'] + ['x%d' % i for i in range(1, 36)]

POINTS_DESCRIPTIONS = dict(
    [('point-id', 'Point identifier'),
     ('label', 'The orbit or construction the point was sampled from')] +
    [('x%d' % i, 'Coefficient %d of the pushed-forward invariant cubic, or '
      'of a unit vector padded with zeros' % i) for i in range(1, 36)])


class _HeaderFmt(model.TextFileFormat):
    HEADER = None

    def sniff(self):
        line = open(str(self)).readline()
        hdr = line.strip().split(',')

        return hdr == self.HEADER


class VerificationResultsFmt(_HeaderFmt):
    HEADER = REPORT_HEADER


class PlaneClassificationFmt(_HeaderFmt):
    HEADER = CLASSIFICATION_HEADER


class BergerPointsFmt(_HeaderFmt):
    HEADER = POINTS_HEADER


VerificationResultsDirFmt = model.SingleFileDirectoryFormat(
    'VerificationResultsDirFmt', 'report.csv', VerificationResultsFmt)

PlaneClassificationDirFmt = model.SingleFileDirectoryFormat(
    'PlaneClassificationDirFmt', 'planes.csv', PlaneClassificationFmt)

BergerPointsDirFmt = model.SingleFileDirectoryFormat(
    'BergerPointsDirFmt', 'points.csv', BergerPointsFmt)
