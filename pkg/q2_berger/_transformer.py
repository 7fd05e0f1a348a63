# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import pandas as pd

from .plugin_setup import plugin
from ._format import (VerificationResultsFmt, PlaneClassificationFmt,
                      BergerPointsFmt)


@plugin.register_transformer
def _1(data: pd.DataFrame) -> VerificationResultsFmt:
    ff = VerificationResultsFmt()
    data.to_csv(str(ff))
    return ff


@plugin.register_transformer
def _2(ff: VerificationResultsFmt) -> pd.DataFrame:
    df = pd.read_csv(str(ff), index_col='check-id')
    df['details'] = df['details'].fillna('')
    return df


@plugin.register_transformer
def _3(data: pd.DataFrame) -> PlaneClassificationFmt:
    ff = PlaneClassificationFmt()
    data.to_csv(str(ff))
    return ff


@plugin.register_transformer
def _4(ff: PlaneClassificationFmt) -> pd.DataFrame:
    df = pd.read_csv(str(ff), index_col='row-id')
    df['parameters'] = df['parameters'].fillna('')
    df['associative'] = df['associative'].fillna('')
    return df


@plugin.register_transformer
def _5(data: pd.DataFrame) -> BergerPointsFmt:
    ff = BergerPointsFmt()
    data.to_csv(str(ff))
    return ff


@plugin.register_transformer
def _6(ff: BergerPointsFmt) -> pd.DataFrame:
    return pd.read_csv(str(ff), index_col='point-id')
