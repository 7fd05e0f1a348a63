# ----------------------------------------------------------------------------
# Copyright (c) 2016-2021, QIIME 2 development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

"""``q2-berger-verify``: run verification suites outside of QIIME 2.

Exit status is 0 when every asserted check passes, 1 when one fails and 2
for a configuration error.
"""

import argparse
import json
import logging
import sys

from q2_berger._config import SUITES, Config, _check_inputs
from q2_berger._report import VerificationReport, Timer, assertion
from q2_berger._methods import run_suite
from q2_berger._g2 import scan_grassmannian
from q2_berger._stab import classify
from q2_berger._berger import (
    CASES, dodeca_entries, dodeca_intersection, homogeneous_case,
    orbit_points, points_dataframe, vectors_dataframe,
    verify_homogeneous_case)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _common(parser):
    parser.add_argument('--mode', choices=('exact', 'float'),
                        default='exact', help='Scalar arithmetic.')
    parser.add_argument('--tol', type=float, default=1e-9,
                        help='Float equality tolerance.')
    parser.add_argument('--threads', type=int, default=None,
                        help='Worker threads for parameter sweeps.')
    parser.add_argument('--seed', type=int, default=0,
                        help='Seed for every random sample.')
    parser.add_argument('--json', metavar='PATH',
                        help='Write the report as JSON.')
    parser.add_argument('--csv', metavar='PATH',
                        help='Write the table (or the report) as CSV.')
    parser.add_argument('--no-timing', dest='timing', action='store_false',
                        help='Zero the runtimes so repeated reports are '
                             'byte-identical.')
    parser.add_argument('--verbose', '-v', action='count', default=0)
    parser.add_argument('--family-samples', type=int, default=50)
    parser.add_argument('--grid-side', type=int, default=20)
    parser.add_argument('--cone-grid', type=int, default=10000)
    parser.add_argument('--t-samples', dest='sweep', type=int, default=50,
                        help='Sweep size along the cohomogeneity-one '
                             'section.')
    parser.add_argument('--orbit-samples', type=int, default=20)
    parser.add_argument('--dodeca-grid', type=int, nargs=2,
                        default=(256, 512), metavar=('THETA', 'PHI'))


def build_parser():
    parser = argparse.ArgumentParser(
        prog='q2-berger-verify',
        description='Verify the G2 geometry of the Berger space '
                    'SO(5)/SO(3).')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('verify', help='Run a verification suite.')
    p.add_argument('suite', nargs='?', default='all', choices=SUITES)
    _common(p)

    p = sub.add_parser('classify',
                       help='Invariant 3-planes of a finite group.')
    p.add_argument('--group', required=True)
    _common(p)

    p = sub.add_parser('scan-grassmannian',
                       help='Calibration inequality over random planes.')
    p.add_argument('--samples', type=int, default=1000)
    _common(p)

    p = sub.add_parser('orbit', help='Sample a homogeneous associative.')
    p.add_argument('--case', required=True, choices=list(CASES))
    _common(p)

    p = sub.add_parser('intersect-veronese',
                       help='Σ0 ∩ h_Ico⁻¹·Σ0 and the dodecahedron.')
    _common(p)
    return parser


def _config(args):
    return Config(mode=args.mode, tol=args.tol, threads=args.threads,
                  seed=args.seed, family_samples=args.family_samples,
                  grid_side=args.grid_side, cone_grid=args.cone_grid,
                  sweep=args.sweep, orbit_samples=args.orbit_samples,
                  dodeca_grid=args.dodeca_grid)


def _validate(args):
    """Command arguments that Config does not cover."""
    if args.command == 'classify':
        _check_inputs(group=args.group)
    elif args.command == 'scan-grassmannian':
        _check_inputs(samples=args.samples)


def _verify(args, config):
    return run_suite(args.suite, config), None


def _classify(args, config):
    timer = Timer()
    table = classify(args.group, config.seed)
    verified = bool(table['stabilizer-verified'].all())
    report = VerificationReport([assertion(
        'classify.%s' % args.group, 'every invariant 3-plane of the group '
        'has its stabilizer confirmed', verified, timer,
        '%d rows' % len(table))])
    return report, table


def _scan(args, config):
    entries, table = scan_grassmannian(args.samples, config.seed)
    return VerificationReport(entries), table


def _orbit(args, config):
    case = homogeneous_case(args.case)
    report = VerificationReport([verify_homogeneous_case(
        case, config.scalar_mode, config.orbit_samples, config.seed)])
    points = orbit_points(case, config.orbit_samples, config.seed)
    return report, points_dataframe(points, case.name)


def _intersect(args, config):
    found = dodeca_intersection(grid=config.dodeca_grid)
    report = VerificationReport(dodeca_entries(
        config.scalar_mode, config.dodeca_grid, found))
    return report, vectors_dataframe(found.points, 'dodecahedron')


COMMANDS = {
    'verify': _verify,
    'classify': _classify,
    'scan-grassmannian': _scan,
    'orbit': _orbit,
    'intersect-veronese': _intersect,
}


def report_payload(report, config, timing=True):
    from q2_berger import __version__
    return {'version': __version__,
            'config': config.to_dict(threads=False),
            'entries': report.to_json_dict(timing)}


def write_json(payload, path):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(payload, fh, sort_keys=True, indent=2, ensure_ascii=False)
        fh.write('\n')


def _summary(report, timing):
    df = report.to_dataframe(timing)
    columns = ['status', 'residual'] + (['runtime-ms'] if timing else [])
    print(df[columns].to_string())
    print('%d checks, %d failed' % (len(report), len(report.failures)))


def run(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                      logging.DEBUG)
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        config = _config(args)
        _validate(args)
    except ValueError as err:
        logger.error('%s', err)
        print('error: %s' % err, file=sys.stderr)
        return EXIT_CONFIG
    report, table = COMMANDS[args.command](args, config)

    if args.json:
        write_json(report_payload(report, config, args.timing), args.json)
    if args.csv:
        out = table if table is not None else report.to_dataframe(
            args.timing)
        out.to_csv(args.csv)
    _summary(report, args.timing)
    return EXIT_OK if report.passed else EXIT_FAILED


def main():
    sys.exit(run())
