"""The ``ultravec`` command.

Exit status: 0 when every check holds, 1 when a suite fails, 2 for configuration,
argument and I/O errors.
"""
import argparse
import io
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .._assocweight import AssociatedWeight, omega_values
from .._exceptions import ArgumentTypeError, BudgetExceeded, ValidationError
from .._kernel import FlatKernel, moment_rows, write_moments_csv
from .._log import log
from .._meta import __version__
from .._metivier import verify_vector_growth
from .._weightseq import WeightSequence, classify
from ._config import SUITE_NAMES, RunConfig, load_config, parse_config, resolve_sequence
from ._report import dumps, write_iterates_csv, write_json
from ._suites import SuiteRunner, run

__all__ = ('build_parser', 'main')

_MOMENT_KMAX = 30
_ITERATE_KMAX = 12


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per entry point."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help='JSON run configuration.')
    common.add_argument('--seed', type=int, help='Seed of every sampler (overrides the configuration).')
    common.add_argument('--out', metavar='DIR', help='Output directory; reports go to stdout when omitted.')
    common.add_argument('--kmax', type=int, help='Largest order (clamped to the range of each check).')
    common.add_argument('--truncation', type=int, metavar='K', help='Truncation of sequences without "K".')
    common.add_argument('--verbose', action='store_true', help='Log at DEBUG level.')

    parser = argparse.ArgumentParser(
        prog='ultravec',
        description='Weight sequences, flat kernels and ultradifferentiable vectors of non-elliptic operators.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    classify_cmd = commands.add_parser('classify', parents=[common], help='Classify a weight sequence.')
    classify_cmd.add_argument('sequence', help='A configured name or gevrey:S, qpower:Q,R, logpower:SIGMA.')
    omega_cmd = commands.add_parser('omega', parents=[common], help='Tabulate the associated weight.')
    omega_cmd.add_argument('sequence')
    omega_cmd.add_argument('--logt', type=float, nargs='+', required=True, help='Values of log t.')
    moments_cmd = commands.add_parser('moments', parents=[common], help='Moment table of the flat kernel (CSV).')
    moments_cmd.add_argument('sequence')
    commands.add_parser('construct-u', parents=[common], help='Build the instance and write its JSON record.')
    commands.add_parser('iterates', parents=[common], help='Norms of the iterates P^k u (CSV).')
    verify_cmd = commands.add_parser('verify', parents=[common], help='Run one suite.')
    verify_cmd.add_argument('suite', choices=SUITE_NAMES)
    commands.add_parser('run', parents=[common], help='Run the configured suites.')
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {'seed': args.seed, 'truncation': args.truncation, 'kmax': args.kmax, 'output': args.out}
    if args.config is None:
        return parse_config('{}', **overrides)
    return load_config(args.config, **overrides)


def _sequence(args: argparse.Namespace, config: RunConfig) -> WeightSequence:
    return resolve_sequence(args.sequence, config.sequences, config.truncation, 'sequence')


def _emit(text: str, args: argparse.Namespace, name: str, stdout: TextIO) -> None:
    if args.out is None:
        stdout.write(text)
        return
    path = Path(args.out) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')


def _classify(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    m_seq = _sequence(args, config)
    result = classify(m_seq)
    gamma = result.gamma
    if gamma is None:
        gamma_text = 'unavailable'
    elif gamma.infinite:
        gamma_text = 'inf'
    else:
        gamma_text = f'{gamma.gamma:.6g} [{gamma.lower:.6g}, {gamma.upper:.6g}]'
    rows = [
        ('sequence', str(m_seq)),
        ('quasianalyticity', result.quasianalyticity.value),
        ('strongly non-quasianalytic', result.strongly_nonquasianalytic.value),
        ('analytic inclusion', result.analytic_inclusion.value),
        ('derivation closed', result.derivation_closed.value),
        ('gamma', gamma_text),
    ]
    width = max(len(label) for label, _ in rows)
    _emit(''.join(f'{label:<{width}}  {value}\n' for label, value in rows), args, 'classify.txt', stdout)
    return 0


def _omega(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    values = omega_values(AssociatedWeight(_sequence(args, config)), args.logt)
    lines = ['logt,omega\n'] + [f'{logt!r},{float(value)!r}\n' for logt, value in zip(args.logt, values)]
    _emit(''.join(lines), args, 'omega.csv', stdout)
    return 0


def _moments(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    kmax = config.kmax if config.kmax is not None else _MOMENT_KMAX
    buffer = io.StringIO()
    write_moments_csv(moment_rows(FlatKernel(_sequence(args, config)), kmax), buffer)
    _emit(buffer.getvalue(), args, 'moments.csv', stdout)
    return 0


def _construct(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _emit(dumps(SuiteRunner(config).instance_record()), args, 'instance.json', stdout)
    return 0


def _iterates(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    runner = SuiteRunner(config)
    inst = runner.instance('config', config.regime)
    growth = verify_vector_growth(inst, runner.kmax(_ITERATE_KMAX, 3, 12), runner.grid(inst))
    buffer = io.StringIO()
    write_iterates_csv(growth, buffer)
    _emit(buffer.getvalue(), args, 'iterates.csv', stdout)
    return 0


def _verify(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    result = SuiteRunner(config).run_suite(args.suite)
    if args.out is None:
        stdout.write(dumps(result.record()))
    else:
        write_json(result.record(), Path(args.out) / f'{args.suite}.json')
    return 0 if result.holds else 1


def _run(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    del args
    out = Path(config.output) if config.output is not None else None
    status, results = run(config, out)
    if out is None:
        stdout.write(dumps([result.record() for result in results]))
    return status


_COMMANDS = {
    'classify': _classify,
    'omega': _omega,
    'moments': _moments,
    'construct-u': _construct,
    'iterates': _iterates,
    'verify': _verify,
    'run': _run,
}


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run the command line.

    :param argv: Arguments without the program name; default ``sys.argv[1:]``.
    :param stdout: Stream of the reports; default ``sys.stdout``.
    :return int: The exit status.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    stdout = sys.stdout if stdout is None else stdout
    try:
        config = _config(args)
        return _COMMANDS[args.command](args, config, stdout)
    except (ValidationError, ArgumentTypeError, BudgetExceeded, OSError) as err:
        log.error("%s", err)
        print(f'ultravec: error: {err}', file=sys.stderr)
        return 2
