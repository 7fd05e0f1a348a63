# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from qiime2.plugin import SemanticType

VerificationResults = SemanticType('VerificationResults')
PlaneClassification = SemanticType('PlaneClassification')
BergerPoints = SemanticType('BergerPoints')
