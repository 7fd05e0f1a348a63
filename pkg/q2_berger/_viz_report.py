# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import os
import re
import pkg_resources

import pandas as pd
import q2templates

from q2_berger._format import REPORT_DESCRIPTIONS
from q2_berger._report import FAIL, MEASURED, PASS

TEMPLATES = pkg_resources.resource_filename('q2_berger', 'assets')

STATUS_ORDER = {FAIL: 0, MEASURED: 1, PASS: 2}


def _with_tooltips(html, descriptions):
    """Put the column descriptions on the table header cells."""
    htmlparts = html.splitlines()
    headstart = None
    headend = None
    for idx, line in enumerate(htmlparts):
        if '<thead>' in line:
            headstart = idx
        elif '</thead>' in line:
            headend = idx

    regex = re.compile("<th>(.*?)</th>")
    new_header = []
    for line in htmlparts[headstart:headend]:
        new_line = line[:]
        if '<th>' in line and line.strip() != '<th></th>':
            label = regex.findall(line)[0]
            if label in descriptions:
                new_line = ('<th data-toggle="tooltip" title="%s">%s</th>'
                            % (descriptions[label], label))
        new_header.append(new_line)
    htmlparts[headstart:headend] = new_header
    return '\n'.join(htmlparts)


def visualize_report(output_dir: str, report: pd.DataFrame) -> None:
    report = report.copy()
    counts = report['status'].value_counts()

    # failures first, then measured values, then passes
    report['order'] = report['status'].map(STATUS_ORDER)
    report = report.sort_values('order', kind='mergesort')
    report = report.drop(columns='order').reset_index()

    html = q2templates.df_to_html(report, index=False)
    html = html.replace('table-hover"', 'table-hover" id="report"')
    html = _with_tooltips(html, REPORT_DESCRIPTIONS)

    index = os.path.join(TEMPLATES, 'index.html')
    failures = report.loc[report['status'] == FAIL, 'check-id']
    context = {
        'result': html,
        'passed': int(counts.get(PASS, 0)),
        'failed': int(counts.get(FAIL, 0)),
        'measured': int(counts.get(MEASURED, 0)),
        'failures': ', '.join(failures),
    }
    q2templates.render(index, output_dir, context=context)
