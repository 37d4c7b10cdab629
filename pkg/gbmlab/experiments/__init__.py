"""
Monte Carlo experiments and figure tables.
"""

from .config import ExperimentConfig, load_config, parse_config_text
from .progress import ProgressEvent, ProgressNotifier
from .runner import (
    Cell,
    ExperimentRecord,
    ConvergenceRow,
    SumCheck,
    plan_cells,
    derive_seed,
    run_replicate,
    run_experiment,
    summarize_convergence,
    convergence_study,
    write_records_csv,
    write_convergence_csv,
    sum_checks,
)
from .figures import (
    Figure1Row,
    Figure2Row,
    figure1_data,
    figure2_data,
    write_figure_csv,
    write_figures,
)

__all__ = [
    'ExperimentConfig',
    'load_config',
    'parse_config_text',
    'ProgressEvent',
    'ProgressNotifier',
    'Cell',
    'ExperimentRecord',
    'ConvergenceRow',
    'SumCheck',
    'plan_cells',
    'derive_seed',
    'run_replicate',
    'run_experiment',
    'summarize_convergence',
    'convergence_study',
    'write_records_csv',
    'write_convergence_csv',
    'sum_checks',
    'Figure1Row',
    'Figure2Row',
    'figure1_data',
    'figure2_data',
    'write_figure_csv',
    'write_figures',
]
