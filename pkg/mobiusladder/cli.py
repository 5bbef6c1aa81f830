"""
Command-line front end.

    mobiusladder <experiment> --config <path> [--out <dir>] [--format csv|json]

Exit status is 0 on success, 1 for a bad command line or configuration and
2 when a computation fails.
"""
import argparse
import logging
import sys

from . import __version__
from .config import ConfigInvalidData, ConfigInvalidType, RunConfig
from .dynamics import CoherenceOutOfRange, WavepacketInvalidData
from .lattice import LadderInvalidData, LadderInvalidType, OperatorNotHermitian
from .runner import ExperimentRunner
from .spectra import NearDegeneracy
from .transport import DecimationNotConverged, SingularMatrix

logger = logging.getLogger(__name__)

EXPERIMENTS = ('spectrum', 'stark', 'optical', 'transmission', 'decoherence')

EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

CONFIG_ERRORS = (ConfigInvalidData, ConfigInvalidType, LadderInvalidData, OSError)
NUMERICAL_ERRORS = (NearDegeneracy, SingularMatrix, DecimationNotConverged,
                    CoherenceOutOfRange, LadderInvalidType, OperatorNotHermitian,
                    WavepacketInvalidData)


class _ArgumentParser(argparse.ArgumentParser):
    # Usage errors are configuration errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    parser = _ArgumentParser(prog='mobiusladder',
                             description='Tight-binding experiments on Moebius and '
                                         'ordinary ladder rings.')
    parser.add_argument('experiment', choices=EXPERIMENTS)
    parser.add_argument('--config', required=True, help='path to a key = value run file')
    parser.add_argument('--out', help='output directory (overrides output_dir)')
    parser.add_argument('--format', choices=('csv', 'json'),
                        help='output format (overrides format)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debugging output')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    return parser


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')


def main(argv=None):
    """
    Runs the command line and returns the exit status.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        config = RunConfig.from_file(args.config, experiment=args.experiment)
        if args.out is not None:
            config.output_dir = args.out
        if args.format is not None:
            config.format = args.format
        with ExperimentRunner(config) as runner:
            written = runner.run()
    except CONFIG_ERRORS as e:
        print('{}: configuration error: {}'.format(parser.prog, e), file=sys.stderr)
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as e:
        print('{}: numerical error: {}'.format(parser.prog, e), file=sys.stderr)
        return EXIT_NUMERICAL

    for path, table in written:
        print('wrote {} ({} rows)'.format(path, len(table)))
    return 0
