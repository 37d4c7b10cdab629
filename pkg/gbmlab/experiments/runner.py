"""
Runner Module

This module runs the Monte Carlo harness: every (n, lambda, tau) cell is
sampled `replicates` times, each replicate gets exact clustering statistics
and the matching closed-form limits, and the results become one record each.

Each replicate draws from its own stream derived from
(base_seed, cell index, replicate index), and records are sorted by
(cell, replicate) before anything is aggregated or written. Worker count and
completion order therefore never change the output.
"""

import csv
import math
import os
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.graph import build_adjacency, sample_graph
from ..core.params import MAX_RADIUS, Community, GbmParams, radius_for_rule, validate_params
from ..stats.clustering import compute_stats, empirical_sums
from ..theory.expectations import expected_degree, expected_node_triangle_sum, expected_ordered_sums
from ..theory.limits import avg_cc_limit, global_cc_limit
from .config import ExperimentConfig
from .progress import ProgressEvent, ProgressNotifier

# Configure logging
logger = logging.getLogger(__name__)

RECORD_FIELDS = (
    'n', 'tau', 'lambda', 'r_s', 'r_d', 'replicate', 'seed',
    'empirical_global_cc', 'empirical_average_cc', 'global_limit', 'average_limit',
    'global_abs_error', 'average_abs_error', 'undefined',
)
CONVERGENCE_FIELDS = (
    'n', 'lambda', 'tau', 'replicates', 'undefined_count', 'mean_global_abs_error', 'mean_average_abs_error',
)


@dataclass(frozen=True)
class Cell:
    """One (n, lambda, tau) grid point with its radii."""
    index: int
    n: int
    lam: float
    tau: float
    r_s: float
    r_d: float

    @property
    def feasible(self) -> bool:
        return 0.0 < self.r_d and self.r_s <= MAX_RADIUS


@dataclass(frozen=True)
class ExperimentRecord:
    """
    One Monte Carlo replicate.

    The global coefficient and its error are None when the sampled graph
    has no 2-path; `undefined` flags those rows.
    """
    n: int
    tau: float
    lam: float
    r_s: float
    r_d: float
    replicate: int
    seed: int
    empirical_global_cc: Optional[float]
    empirical_average_cc: float
    global_limit: float
    average_limit: float
    global_abs_error: Optional[float]
    average_abs_error: float
    undefined: bool
    cell_index: int = 0

    def as_row(self) -> List[str]:
        return [
            str(self.n), _fmt(self.tau), _fmt(self.lam), _fmt(self.r_s), _fmt(self.r_d),
            str(self.replicate), str(self.seed),
            _fmt(self.empirical_global_cc), _fmt(self.empirical_average_cc),
            _fmt(self.global_limit), _fmt(self.average_limit),
            _fmt(self.global_abs_error), _fmt(self.average_abs_error),
            '1' if self.undefined else '0',
        ]


def _fmt(value: Optional[float]) -> str:
    return '' if value is None else format(float(value), '.17g')


def derive_seed(base_seed: int, cell_index: int, replicate: int) -> int:
    """Unsigned 64-bit seed of one replicate stream."""
    sequence = np.random.SeedSequence(base_seed, spawn_key=(cell_index, replicate))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def plan_cells(config: ExperimentConfig) -> Tuple[List[Cell], List[Cell]]:
    """
    Enumerate cells in (n, lambda, tau) order.

    Returns:
        (feasible cells, infeasible cells with r_s > 0.5 or r_d = 0)
    """
    feasible, infeasible = [], []
    index = 0
    for n in config.n_values:
        r_d = radius_for_rule(config.radius_rule, n, config.r_d, config.radius_alpha)
        for lam in config.lambda_values:
            for tau in config.tau_values:
                cell = Cell(index=index, n=n, lam=lam, tau=tau, r_s=lam * r_d, r_d=r_d)
                (feasible if cell.feasible else infeasible).append(cell)
                index += 1
    return feasible, infeasible


def run_replicate(cell: Cell, replicate: int, base_seed: int) -> ExperimentRecord:
    """Sample one graph of a cell and compare its coefficients with the limits."""
    seed = derive_seed(base_seed, cell.index, replicate)
    params = validate_params({'n': cell.n, 'tau': cell.tau, 'r_s': cell.r_s, 'r_d': cell.r_d, 'seed': seed})
    stats = compute_stats(build_adjacency(sample_graph(params)))
    global_limit = global_cc_limit(cell.r_s, cell.r_d, cell.tau)
    average_limit = avg_cc_limit(cell.r_s, cell.r_d, cell.tau)
    if stats.global_undefined:
        logger.warning(f"Cell {cell.index} replicate {replicate}: no 2-paths, global coefficient undefined")
    return ExperimentRecord(
        n=cell.n,
        tau=cell.tau,
        lam=cell.lam,
        r_s=cell.r_s,
        r_d=cell.r_d,
        replicate=replicate,
        seed=seed,
        empirical_global_cc=stats.global_cc,
        empirical_average_cc=stats.average_cc,
        global_limit=global_limit,
        average_limit=average_limit,
        global_abs_error=None if stats.global_undefined else abs(stats.global_cc - global_limit),
        average_abs_error=abs(stats.average_cc - average_limit),
        undefined=stats.global_undefined,
        cell_index=cell.index,
    )


def _run_task(task: Tuple[Cell, int, int]) -> ExperimentRecord:
    return run_replicate(*task)


def default_threads() -> int:
    return os.cpu_count() or 1


def run_experiment(config: ExperimentConfig, threads: Optional[int] = None,
                   progress: Optional[ProgressNotifier] = None) -> List[ExperimentRecord]:
    """
    Run every feasible cell of a config.

    Infeasible cells are logged and skipped; the run continues.

    Args:
        config (ExperimentConfig): Cell grid and seeds
        threads (Optional[int]): Worker processes; falls back to config.threads, then to the CPU count
        progress (Optional[ProgressNotifier]): Told about every finished cell

    Returns:
        List[ExperimentRecord]: Sorted by (cell, replicate)
    """
    feasible, infeasible = plan_cells(config)
    for cell in infeasible:
        logger.warning(f"Skipping infeasible cell n={cell.n} lambda={cell.lam} tau={cell.tau}: "
                       f"r_s={cell.r_s:.6g}, r_d={cell.r_d:.6g} outside (0, {MAX_RADIUS}]")

    tasks = [(cell, replicate, config.base_seed) for cell in feasible for replicate in range(config.replicates)]
    workers = max(1, min(threads or config.threads or default_threads(), len(tasks) or 1))
    logger.info(f"Running {len(tasks)} replicate(s) over {len(feasible)} cell(s) with {workers} worker(s)")

    remaining = {cell.index: config.replicates for cell in feasible}
    by_index = {cell.index: cell for cell in feasible}
    completed = 0
    records: List[ExperimentRecord] = []

    def collect(record: ExperimentRecord) -> None:
        nonlocal completed
        records.append(record)
        remaining[record.cell_index] -= 1
        if remaining[record.cell_index] == 0:
            completed += 1
            if progress is not None:
                progress.notify(ProgressEvent(by_index[record.cell_index], completed, len(feasible)))

    if workers == 1:
        for task in tasks:
            collect(_run_task(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for record in executor.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))):
                collect(record)

    records.sort(key=lambda record: (record.cell_index, record.replicate))
    return records


@dataclass(frozen=True)
class ConvergenceRow:
    """Mean absolute errors of one (n, lambda, tau) cell; undefined replicates excluded."""
    n: int
    lam: float
    tau: float
    replicates: int
    undefined_count: int
    mean_global_abs_error: Optional[float]
    mean_average_abs_error: Optional[float]

    def as_row(self) -> List[str]:
        return [
            str(self.n), _fmt(self.lam), _fmt(self.tau), str(self.replicates), str(self.undefined_count),
            _fmt(self.mean_global_abs_error), _fmt(self.mean_average_abs_error),
        ]


def summarize_convergence(records: Sequence[ExperimentRecord]) -> List[ConvergenceRow]:
    """
    Aggregate records per cell with compensated sums, ordered by (lambda, tau, n).

    Cells are told apart by their index, so a repeated n value gives its own row.
    """
    groups: Dict[int, List[ExperimentRecord]] = {}
    for record in sorted(records, key=lambda record: (record.cell_index, record.replicate)):
        groups.setdefault(record.cell_index, []).append(record)

    def order(group: List[ExperimentRecord]):
        first = group[0]
        return first.lam, first.tau, first.n, first.cell_index

    rows = []
    for members in sorted(groups.values(), key=order):
        lam, tau, n = members[0].lam, members[0].tau, members[0].n
        defined = [record for record in members if not record.undefined]
        undefined_count = len(members) - len(defined)
        if undefined_count:
            logger.warning(f"n={n} lambda={lam} tau={tau}: {undefined_count} undefined replicate(s) excluded")
        rows.append(ConvergenceRow(
            n=n,
            lam=lam,
            tau=tau,
            replicates=len(defined),
            undefined_count=undefined_count,
            mean_global_abs_error=math.fsum(r.global_abs_error for r in defined) / len(defined) if defined else None,
            mean_average_abs_error=math.fsum(r.average_abs_error for r in defined) / len(defined) if defined else None,
        ))
    return rows


def convergence_study(config: ExperimentConfig, threads: Optional[int] = None,
                      progress: Optional[ProgressNotifier] = None) -> List[ConvergenceRow]:
    """
    Mean absolute error per node count for both coefficients.

    Intended for three or more geometrically spaced n values at fixed
    (lambda, tau); fewer still produce a table.
    """
    if len(set(config.n_values)) < 3:
        logger.warning(f"Convergence study with {len(set(config.n_values))} n value(s); 3 or more recommended")
    return summarize_convergence(run_experiment(config, threads=threads, progress=progress))


def _write_csv(path: str, header: Sequence[str], rows) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def write_records_csv(records: Sequence[ExperimentRecord], path: str) -> None:
    _write_csv(path, RECORD_FIELDS, (record.as_row() for record in records))
    logger.info(f"Wrote {len(records)} record(s) to {path}")


def write_convergence_csv(rows: Sequence[ConvergenceRow], path: str) -> None:
    _write_csv(path, CONVERGENCE_FIELDS, (row.as_row() for row in rows))
    logger.info(f"Wrote {len(rows)} convergence row(s) to {path}")


@dataclass
class SumCheck:
    """
    Empirical sums of several replicates next to their expected values.

    Per-community entries are keyed by Community and averaged over the
    community's nodes and over replicates.
    """
    params: GbmParams
    replicates: int
    empirical_triangle_sum: float
    empirical_twopath_sum: float
    expected_triangle_sum: float
    expected_twopath_sum: float
    node_triangles: Dict[Community, float] = field(default_factory=dict)
    expected_node_triangles: Dict[Community, float] = field(default_factory=dict)
    degree_means: Dict[Community, float] = field(default_factory=dict)
    degree_standard_errors: Dict[Community, float] = field(default_factory=dict)
    expected_degrees: Dict[Community, float] = field(default_factory=dict)

    @property
    def triangle_relative_error(self) -> float:
        return abs(self.empirical_triangle_sum - self.expected_triangle_sum) / self.expected_triangle_sum

    @property
    def twopath_relative_error(self) -> float:
        return abs(self.empirical_twopath_sum - self.expected_twopath_sum) / self.expected_twopath_sum

    def node_triangle_relative_error(self, community: Community) -> float:
        expected = self.expected_node_triangles[community]
        return abs(self.node_triangles[community] - expected) / expected

    def degree_z_score(self, community: Community) -> float:
        """Deviation of the mean degree from its expectation in standard errors."""
        return abs(self.degree_means[community] - self.expected_degrees[community]) / self.degree_standard_errors[community]


def sum_checks(params: GbmParams, replicates: int, base_seed: int = 0) -> SumCheck:
    """
    Compare empirical ordered sums, per-node triangle sums and mean degrees
    with their expectations over `replicates` independent graphs.
    """
    triangle_sums, twopath_sums = [], []
    node_triangles: Dict[Community, List[float]] = {community: [] for community in Community}
    degrees: Dict[Community, List[float]] = {community: [] for community in Community}

    for replicate in range(replicates):
        graph = sample_graph(params.with_seed(derive_seed(base_seed, 0, replicate)))
        adjacency = build_adjacency(graph)
        ordered_triangles, ordered_twopaths = empirical_sums(adjacency)
        triangle_sums.append(ordered_triangles)
        twopath_sums.append(ordered_twopaths)
        stats = compute_stats(adjacency)
        for community, value in stats.node_triangles_by_community(graph.labels).items():
            node_triangles[community].append(value)
        for community, value in stats.mean_degree_by_community(graph.labels).items():
            degrees[community].append(value)

    expected_triangles, expected_twopaths = expected_ordered_sums(params)
    check = SumCheck(
        params=params,
        replicates=replicates,
        empirical_triangle_sum=math.fsum(triangle_sums) / replicates,
        empirical_twopath_sum=math.fsum(twopath_sums) / replicates,
        expected_triangle_sum=expected_triangles,
        expected_twopath_sum=expected_twopaths,
    )
    for community in Community:
        if not degrees[community]:
            continue
        check.node_triangles[community] = math.fsum(node_triangles[community]) / replicates
        check.expected_node_triangles[community] = expected_node_triangle_sum(params, community)
        check.degree_means[community] = math.fsum(degrees[community]) / replicates
        spread = float(np.std(degrees[community], ddof=1)) if replicates > 1 else math.nan
        check.degree_standard_errors[community] = spread / math.sqrt(replicates)
        check.expected_degrees[community] = expected_degree(params, community)
    return check
