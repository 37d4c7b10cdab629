"""
gbmlab command line.

Subcommands are registered with `register_command` and dispatched by `main`.
Exit codes: 0 on success, 1 on invalid input, 2 on runtime failure.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
from dataclasses import dataclass
from functools import wraps
from typing import Any, Callable, Dict, Optional, Sequence

from .core.dump import read_graph_dump, write_graph_dump
from .core.errors import ConfigError, GbmError, GraphFormatError, InfeasibleCellError, ParameterError
from .core.graph import build_adjacency, sample_graph
from .core.params import require_finite, require_int, validate_params
from .core.renderer import render
from .experiments.config import load_config
from .experiments.figures import write_figures
from .experiments.progress import ProgressEvent, ProgressNotifier
from .experiments.runner import plan_cells, run_experiment, summarize_convergence, write_convergence_csv, write_records_csv
from .oracle.quadrature import DEFAULT_ANCHOR_TOLERANCE, DEFAULT_TOLERANCE, run_oracle_suite
from .stats.clustering import compute_stats
from .theory.limits import evaluate_lambda_limits, evaluate_limits

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILURE = 2

THREADS_ENV = 'GBM_LAB_THREADS'


class UsageError(ParameterError):
    """Malformed command line."""
    pass


class LabArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit 1."""

    def error(self, message: str):
        raise UsageError(message)


@dataclass(frozen=True)
class Command:
    """A registered subcommand."""
    name: str
    help: str
    handler: Callable[[argparse.Namespace], int]
    configure: Callable[[argparse.ArgumentParser], None]


# Store subcommands
command_handlers: Dict[str, Command] = {}


def register_command(name: str, help: str, configure: Callable[[argparse.ArgumentParser], None]) -> Callable:
    """
    Register a subcommand handler.

    Args:
        name (str): Subcommand name
        help (str): One-line description
        configure (Callable): Adds the subcommand's flags to its parser

    Returns:
        Callable: Decorator registering the handler

    Example:
        @register_command("limits", "Evaluate limits", _limits_arguments)
        def cmd_limits(args) -> int:
            ...
    """
    def decorator(handler: Callable[[argparse.Namespace], int]) -> Callable:
        @wraps(handler)
        def wrapper(args: argparse.Namespace) -> int:
            try:
                return handler(args)
            except Exception as e:
                logger.debug(f"Error in command {name}: {str(e)}")
                raise

        command_handlers[name] = Command(name, help, wrapper, configure)
        return wrapper
    return decorator


def _emit(args: argparse.Namespace, template: str, payload: Dict[str, Any], **context) -> None:
    if getattr(args, 'json', False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        sys.stdout.write(render(template, **context))


def _add_model_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument('--n', required=required, help='Node count')
    parser.add_argument('--tau', required=required, help='Community-one fraction in [0, 1]')
    parser.add_argument('--rs', required=required, help='Within-community radius r_s')
    parser.add_argument('--rd', required=required, help='Between-community radius r_d')
    parser.add_argument('--seed', default='0', help='Unsigned 64-bit seed (default 0)')


def _params_from(args: argparse.Namespace):
    return validate_params({'n': args.n, 'tau': args.tau, 'r_s': args.rs, 'r_d': args.rd, 'seed': args.seed})


def _mean_degree(adjacency) -> float:
    return 2.0 * adjacency.edge_count / adjacency.n if adjacency.n else 0.0


def _sample_arguments(parser: argparse.ArgumentParser) -> None:
    _add_model_flags(parser, required=True)
    parser.add_argument('--out', required=True, help='Graph dump path')
    parser.add_argument('--json', action='store_true', help='Print a JSON object')


@register_command('sample', 'Sample one graph and write its node/edge dump', _sample_arguments)
def cmd_sample(args: argparse.Namespace) -> int:
    params = _params_from(args)
    graph = sample_graph(params)
    adjacency = build_adjacency(graph)
    write_graph_dump(graph, adjacency, args.out)
    mean_degree = _mean_degree(adjacency)
    payload = {'n': params.n, 'edges': adjacency.edge_count, 'mean_degree': mean_degree, 'path': args.out}
    _emit(args, 'sample.txt.j2', payload, n=params.n, edges=adjacency.edge_count, mean_degree=mean_degree,
          path=args.out)
    return EXIT_OK


def _stats_arguments(parser: argparse.ArgumentParser) -> None:
    _add_model_flags(parser, required=False)
    parser.add_argument('--graph', help='Load a graph dump instead of sampling')
    parser.add_argument('--json', action='store_true', help='Print a JSON object')


@register_command('stats', 'Exact clustering statistics of one graph next to the limits', _stats_arguments)
def cmd_stats(args: argparse.Namespace) -> int:
    if args.graph:
        graph, adjacency = read_graph_dump(args.graph)
    else:
        missing = [flag for flag in ('n', 'tau', 'rs', 'rd') if getattr(args, flag) is None]
        if missing:
            raise UsageError(f"stats needs --graph or --{missing[0]}", field=missing[0])
        graph = sample_graph(_params_from(args))
        adjacency = build_adjacency(graph)

    stats = compute_stats(adjacency)
    params = graph.params
    limits = evaluate_limits(params.r_s, params.r_d, params.tau) if params.r_d > 0 else None
    mean_degree = _mean_degree(adjacency)
    payload = {
        'n': stats.n,
        'edges': adjacency.edge_count,
        'mean_degree': mean_degree,
        'triangle_count': stats.triangle_count,
        'twopath_sum': stats.twopath_sum,
        'global_cc': stats.global_cc,
        'global_undefined': stats.global_undefined,
        'average_cc': stats.average_cc,
        'limits': limits.to_dict() if limits is not None else None,
    }
    _emit(args, 'stats.txt.j2', payload, stats=stats, edges=adjacency.edge_count, mean_degree=mean_degree,
          limits=limits)
    return EXIT_OK


def _limits_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--lambda', dest='lam', help='Community strength r_s / r_d (>= 1)')
    parser.add_argument('--tau', required=True, help='Community-one fraction in [0, 1]')
    parser.add_argument('--rs', help='Within-community radius r_s')
    parser.add_argument('--rd', help='Between-community radius r_d')
    parser.add_argument('--json', action='store_true', help='Print a JSON object')


@register_command('limits', 'Evaluate the closed-form clustering limits', _limits_arguments)
def cmd_limits(args: argparse.Namespace) -> int:
    tau = require_finite('tau', args.tau)
    if args.lam is not None:
        if args.rs is not None or args.rd is not None:
            raise UsageError("use either --lambda or --rs/--rd, not both", field='lambda')
        limits = evaluate_lambda_limits(require_finite('lambda', args.lam), tau)
    else:
        if args.rs is None or args.rd is None:
            raise UsageError("limits needs --lambda or both --rs and --rd", field='lambda')
        limits = evaluate_limits(require_finite('r_s', args.rs), require_finite('r_d', args.rd), tau)
    _emit(args, 'limits.txt.j2', limits.to_dict(), limits=limits)
    return EXIT_OK


def _oracle_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--grid-m', default='8192', help='Midpoint grid points per axis (>= 64)')
    parser.add_argument('--tolerance', default=str(DEFAULT_TOLERANCE), help='Allowed probability deviation')
    parser.add_argument('--anchor-tolerance', default=str(DEFAULT_ANCHOR_TOLERANCE),
                        help='Allowed spread across anchors')
    parser.add_argument('--json', action='store_true', help='Print a JSON object')


@register_command('oracle-check', 'Check the probability formulas by quadrature', _oracle_arguments)
def cmd_oracle_check(args: argparse.Namespace) -> int:
    report = run_oracle_suite(
        grid_m=require_int('grid_m', args.grid_m),
        tolerance=require_finite('tolerance', args.tolerance),
        anchor_tolerance=require_finite('anchor_tolerance', args.anchor_tolerance),
    )
    _emit(args, 'oracle_report.txt.j2', report.to_dict(), report=report)
    if not report.passed:
        for case in report.failures:
            logger.error(f"Oracle breach: {case.kind} r_s={case.r_s} r_d={case.r_d} labels={case.labels} "
                         f"deviation {case.deviation:.3g} > {case.tolerance:.3g}")
        return EXIT_FAILURE
    return EXIT_OK


def resolve_threads(flag: Optional[str]) -> Optional[int]:
    """Worker count from GBM_LAB_THREADS, else --threads, else None."""
    raw = os.environ.get(THREADS_ENV) or flag
    if raw in (None, ''):
        return None
    threads = require_int('threads', raw)
    if threads < 1:
        raise ParameterError(f"threads must be >= 1, got {threads}", field='threads')
    return threads


def _experiment_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', required=True, help='key=value experiment config file')
    parser.add_argument('--out', help='Records CSV path (overrides output_path)')
    parser.add_argument('--convergence-out', help='Also write the per-cell convergence table')
    parser.add_argument('--threads', help=f'Worker processes (default: available parallelism; {THREADS_ENV} wins)')


def _log_progress(event: ProgressEvent) -> None:
    cell = event.cell
    logger.info(f"[{event.completed}/{event.total}] n={cell.n} lambda={cell.lam} tau={cell.tau} done")


@register_command('experiment', 'Run a Monte Carlo experiment grid', _experiment_arguments)
def cmd_experiment(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.out:
        config = dataclasses.replace(config, output_path=args.out)
    threads = resolve_threads(args.threads)

    feasible, infeasible = plan_cells(config)
    if not feasible:
        raise InfeasibleCellError(f"all {len(infeasible)} cell(s) are infeasible (r_s above 0.5)",
                                  field='lambda_values')

    progress = ProgressNotifier()
    progress.subscribe(_log_progress)
    records = run_experiment(config, threads=threads, progress=progress)
    write_records_csv(records, config.output_path)
    if args.convergence_out:
        write_convergence_csv(summarize_convergence(records), args.convergence_out)

    sys.stdout.write(render(
        'experiment.txt.j2',
        feasible=len(feasible),
        infeasible=len(infeasible),
        records=len(records),
        undefined=sum(1 for record in records if record.undefined),
        path=config.output_path,
        convergence_path=args.convergence_out,
    ))
    return EXIT_OK


def _figures_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--out-dir', default='.', help='Directory for fig1.csv and fig2.csv')


@register_command('figures', 'Write the f(lambda) and h/g tables', _figures_arguments)
def cmd_figures(args: argparse.Namespace) -> int:
    paths = write_figures(args.out_dir)
    sys.stdout.write(render('figures.txt.j2', paths=paths))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(prog='gbm-lab', description='Clustering coefficients of the Geometric Block Model')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true', help='Debug logging')
    verbosity.add_argument('--quiet', action='store_true', help='Warnings and errors only')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for command in command_handlers.values():
        subparser = subparsers.add_parser(command.name, help=command.help, description=command.help)
        command.configure(subparser)
        subparser.set_defaults(handler=command.handler)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as e:
        print(f"gbm-lab: error: {e}", file=sys.stderr)
        return EXIT_INVALID

    configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except InfeasibleCellError as e:
        print(f"gbm-lab: error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (ParameterError, ConfigError, GraphFormatError, OSError) as e:
        message = f"{e.strerror}: {e.filename}" if isinstance(e, OSError) and e.filename else str(e)
        print(f"gbm-lab: error: {message}", file=sys.stderr)
        return EXIT_INVALID
    except GbmError as e:
        print(f"gbm-lab: error: {e}", file=sys.stderr)
        return EXIT_FAILURE
