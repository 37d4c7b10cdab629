"""
Tests for experiment configs, the Monte Carlo runner and figure tables.
"""

import csv
import logging
import math

import pytest

from gbmlab.core.errors import ConfigError, ParameterError
from gbmlab.core.params import MAX_SEED
from gbmlab.experiments.config import ExperimentConfig, load_config, parse_config_text
from gbmlab.experiments.figures import (
    DEFAULT_LAMBDA_SET,
    FIGURE1_HEADER,
    figure1_data,
    figure2_data,
    write_figures,
)
from gbmlab.experiments.progress import ProgressNotifier
from gbmlab.experiments.runner import (
    RECORD_FIELDS,
    ExperimentRecord,
    convergence_study,
    derive_seed,
    plan_cells,
    run_experiment,
    summarize_convergence,
    write_convergence_csv,
    write_records_csv,
)
from gbmlab.theory.limits import h_of

CONFIG_TEXT = """
# small grid
n_values = 256, 512
lambda_values = 1, 2.5
tau_values = 0.5
r_d = 0.03
replicates = 2
base_seed = 12345
output_path = out.csv
"""


def _small_config(**overrides):
    values = dict(n_values=(200, 400), lambda_values=(1.0, 3.0), tau_values=(0.3, 0.5), r_d=0.03,
                  replicates=2, base_seed=42)
    values.update(overrides)
    return ExperimentConfig(**values)


def test_parse_config_text():
    config = ExperimentConfig.from_dict(parse_config_text(CONFIG_TEXT))
    assert config.n_values == (256, 512)
    assert config.lambda_values == (1.0, 2.5)
    assert config.tau_values == (0.5,)
    assert config.r_d == 0.03
    assert config.replicates == 2
    assert config.base_seed == 12345
    assert config.output_path == 'out.csv'
    assert config.radius_rule == 'fixed'
    assert config.threads is None


def test_load_config(tmp_path):
    path = tmp_path / 'grid.cfg'
    path.write_text(CONFIG_TEXT, encoding='utf-8')
    assert load_config(str(path)).n_values == (256, 512)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / 'absent.cfg'))


@pytest.mark.parametrize("text", [
    "n_values = 10\nlambda_values = 1\ntau_values = 0.5\ncolour = red\n",
    "n_values = 10\nlambda_values = 1\n",
    "n_values = 10\nn_values = 20\nlambda_values = 1\ntau_values = 0.5\n",
    "n_values 10\n",
])
def test_malformed_config_text(text):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(parse_config_text(text))


@pytest.mark.parametrize("text", [
    "n_values = 10\nlambda_values = 0.5\ntau_values = 0.5\n",
    "n_values = 10\nlambda_values = 1\ntau_values = 1.5\n",
    "n_values = 10\nlambda_values = nan\ntau_values = 0.5\n",
    "n_values = 10, \nlambda_values = 1\ntau_values = 0.5\n",
    "n_values = 10\nlambda_values = 1\ntau_values = 0.5\nreplicates = 0\n",
    "n_values = 10\nlambda_values = 1\ntau_values = 0.5\nradius_rule = cubic\n",
    "n_values = 10\nlambda_values = 1\ntau_values = 0.5\nr_d = 0\n",
])
def test_invalid_config_values(text):
    with pytest.raises(ParameterError):
        ExperimentConfig.from_dict(parse_config_text(text))


def test_derive_seed():
    seed = derive_seed(7, 3, 1)
    assert seed == derive_seed(7, 3, 1)
    assert 0 <= seed <= MAX_SEED
    assert len({derive_seed(7, cell, replicate) for cell in range(5) for replicate in range(5)}) == 25
    assert derive_seed(8, 3, 1) != seed


def test_plan_cells_order_and_feasibility():
    config = _small_config(n_values=(100,), lambda_values=(1.0, 20.0), tau_values=(0.2, 0.8))
    feasible, infeasible = plan_cells(config)
    assert [cell.index for cell in feasible] == [0, 1]
    assert [cell.index for cell in infeasible] == [2, 3]
    assert feasible[1].tau == 0.8
    assert infeasible[0].r_s == pytest.approx(0.6)


def test_plan_cells_radius_rule():
    config = _small_config(n_values=(100, 400), lambda_values=(2.0,), tau_values=(0.5,), r_d=2.0,
                           radius_rule='power', radius_alpha=1.0)
    feasible, _ = plan_cells(config)
    assert [cell.r_d for cell in feasible] == pytest.approx([0.02, 0.005])
    assert [cell.r_s for cell in feasible] == pytest.approx([0.04, 0.01])


def test_records_carry_errors_and_limits():
    records = run_experiment(_small_config(), threads=1)
    assert len(records) == 2 * 2 * 2 * 2
    assert [(r.cell_index, r.replicate) for r in records] == sorted((r.cell_index, r.replicate) for r in records)
    for record in records:
        assert record.r_s == pytest.approx(record.lam * record.r_d)
        assert record.seed == derive_seed(42, record.cell_index, record.replicate)
        assert record.average_abs_error == pytest.approx(abs(record.empirical_average_cc - record.average_limit))
        if record.undefined:
            assert record.empirical_global_cc is None and record.global_abs_error is None
        else:
            assert record.global_abs_error == pytest.approx(abs(record.empirical_global_cc - record.global_limit))
    lam_one = [record for record in records if record.lam == 1.0]
    assert all(record.global_limit == pytest.approx(0.75) for record in lam_one)


def test_runs_are_deterministic(tmp_path):
    config = _small_config()
    first = run_experiment(config, threads=1)
    second = run_experiment(config, threads=1)
    assert first == second
    write_records_csv(first, str(tmp_path / 'a.csv'))
    write_records_csv(second, str(tmp_path / 'b.csv'))
    assert (tmp_path / 'a.csv').read_bytes() == (tmp_path / 'b.csv').read_bytes()


def test_worker_count_does_not_change_records(tmp_path):
    config = _small_config()
    serial = run_experiment(config, threads=1)
    parallel = run_experiment(config, threads=3)
    assert serial == parallel
    write_records_csv(serial, str(tmp_path / 'serial.csv'))
    write_records_csv(parallel, str(tmp_path / 'parallel.csv'))
    assert (tmp_path / 'serial.csv').read_bytes() == (tmp_path / 'parallel.csv').read_bytes()


def test_records_csv_layout(tmp_path):
    records = run_experiment(_small_config(n_values=(300,), lambda_values=(2.0,), tau_values=(0.5,)), threads=1)
    path = tmp_path / 'nested' / 'records.csv'
    write_records_csv(records, str(path))
    with open(path, newline='', encoding='utf-8') as handle:
        rows = list(csv.reader(handle))
    assert tuple(rows[0]) == RECORD_FIELDS
    assert len(rows) == 1 + len(records)
    first = dict(zip(rows[0], rows[1]))
    assert float(first['empirical_average_cc']) == records[0].empirical_average_cc
    assert first['undefined'] in ('0', '1')


def test_infeasible_cells_are_skipped(caplog):
    config = _small_config(n_values=(200,), lambda_values=(2.0, 30.0), tau_values=(0.5,))
    with caplog.at_level(logging.WARNING, logger='gbmlab.experiments.runner'):
        records = run_experiment(config, threads=1)
    assert {record.lam for record in records} == {2.0}
    assert any('infeasible' in message for message in caplog.messages)


def test_progress_events():
    notifier = ProgressNotifier()
    events = []
    notifier.subscribe(events.append)
    run_experiment(_small_config(replicates=1), threads=1, progress=notifier)
    assert len(events) == 8
    assert [event.completed for event in events] == list(range(1, 9))
    assert all(event.total == 8 for event in events)


def test_failing_subscriber_does_not_stop_the_run():
    notifier = ProgressNotifier()
    seen = []

    def broken(event):
        raise RuntimeError("subscriber failure")

    notifier.subscribe(broken)
    token = notifier.subscribe(seen.append)
    records = run_experiment(_small_config(n_values=(200,), replicates=1), threads=1, progress=notifier)
    assert len(records) == 4
    assert len(seen) == 4
    notifier.unsubscribe(token)
    run_experiment(_small_config(n_values=(200,), replicates=1), threads=1, progress=notifier)
    assert len(seen) == 4


def _record(n, replicate, global_error, average_error):
    undefined = global_error is None
    return ExperimentRecord(
        n=n, tau=0.5, lam=2.0, r_s=0.02, r_d=0.01, replicate=replicate, seed=replicate,
        empirical_global_cc=None if undefined else 0.6, empirical_average_cc=0.6,
        global_limit=2.0 / 3.0, average_limit=2.0 / 3.0,
        global_abs_error=global_error, average_abs_error=average_error, undefined=undefined,
        cell_index=0 if n == 100 else 1,
    )


def test_convergence_excludes_undefined_replicates(caplog):
    records = [
        _record(100, 0, 0.1, 0.2),
        _record(100, 1, None, 0.4),
        _record(100, 2, 0.3, 0.6),
        _record(1000, 0, 0.01, 0.02),
    ]
    with caplog.at_level(logging.WARNING):
        rows = summarize_convergence(records)
    assert [row.n for row in rows] == [100, 1000]
    assert rows[0].replicates == 2
    assert rows[0].undefined_count == 1
    assert rows[0].mean_global_abs_error == pytest.approx(0.2)
    assert rows[0].mean_average_abs_error == pytest.approx(0.4)
    assert rows[1].undefined_count == 0
    assert any('undefined' in message for message in caplog.messages)


def test_convergence_all_undefined_cell():
    rows = summarize_convergence([_record(100, 0, None, 0.5)])
    assert rows[0].replicates == 0
    assert rows[0].mean_global_abs_error is None


def test_repeated_n_values_stay_separate_cells():
    config = _small_config(n_values=(200, 200), lambda_values=(2.0,), tau_values=(0.5,), replicates=1)
    records = run_experiment(config, threads=1)
    assert [record.cell_index for record in records] == [0, 1]
    assert records[0].seed != records[1].seed
    rows = summarize_convergence(records)
    assert [row.n for row in rows] == [200, 200]
    assert all(row.replicates + row.undefined_count == 1 for row in rows)


def test_single_n_gives_one_row(caplog, tmp_path):
    config = _small_config(n_values=(300,), lambda_values=(2.0,), tau_values=(0.5,))
    with caplog.at_level(logging.WARNING):
        rows = convergence_study(config, threads=1)
    assert len(rows) == 1
    assert rows[0].replicates + rows[0].undefined_count == 2
    assert any('3 or more' in message for message in caplog.messages)
    path = tmp_path / 'convergence.csv'
    write_convergence_csv(rows, str(path))
    header = path.read_text(encoding='utf-8').splitlines()[0]
    assert header == 'n,lambda,tau,replicates,undefined_count,mean_global_abs_error,mean_average_abs_error'


def test_figure1_landmarks():
    rows = figure1_data()
    assert len(rows) == 901
    assert rows[0].lam == 1.0 and rows[0].f == pytest.approx(0.75)
    by_lambda = {row.lam: row.f for row in rows}
    assert by_lambda[4.0] == pytest.approx(0.6, abs=1e-15)
    assert min(rows, key=lambda row: row.f).lam == 4.0
    assert max(rows, key=lambda row: row.f).lam == 1.0


def test_figure1_rejects_small_lambda():
    with pytest.raises(ParameterError):
        figure1_data([0.5, 1.0])


def test_figure2_rows():
    rows = figure2_data()
    assert sorted({row.lam for row in rows}) == list(DEFAULT_LAMBDA_SET)
    assert len(rows) == 6 * 99
    for row in rows:
        assert row.reference == 0.75
        if row.tau == 0.5:
            assert row.h == pytest.approx(row.g, abs=1e-12)
    table = {(row.lam, row.tau): row for row in rows}
    for lam in DEFAULT_LAMBDA_SET:
        for k in range(1, 50):
            low, high = table[(lam, round(k / 100, 2))], table[(lam, round(1 - k / 100, 2))]
            assert low.g == pytest.approx(high.g, abs=1e-12)
            assert low.h == pytest.approx(high.h, abs=1e-12)
    assert table[(1.5, 0.01)].g == pytest.approx(0.75, abs=0.02)
    assert table[(1.5, 0.99)].g == pytest.approx(0.75, abs=0.02)


def test_figure2_rejects_boundary_tau():
    with pytest.raises(ParameterError):
        figure2_data(tau_grid=[0.0, 0.5])


def test_write_figures(tmp_path):
    first, second = write_figures(str(tmp_path / 'figs'))
    fig1 = open(first, encoding='utf-8').read().splitlines()
    fig2 = open(second, encoding='utf-8').read().splitlines()
    assert fig1[0] == ','.join(FIGURE1_HEADER)
    assert '4,0.59999999999999998' in fig1 or '4,0.6' in fig1
    assert fig2[0] == 'lambda,tau,h,g'
    assert len(fig2) == 1 + 6 * 99
    before = (open(first, 'rb').read(), open(second, 'rb').read())
    write_figures(str(tmp_path / 'figs'))
    assert (open(first, 'rb').read(), open(second, 'rb').read()) == before


@pytest.mark.slow
def test_convergence_error_shrinks_with_n():
    config = ExperimentConfig(n_values=(512, 2048, 8192), lambda_values=(2.0,), tau_values=(0.5,), r_d=0.02,
                              replicates=10, base_seed=2024)
    rows = convergence_study(config)
    assert [row.n for row in rows] == [512, 2048, 8192]
    assert rows[-1].mean_global_abs_error < rows[0].mean_global_abs_error


@pytest.mark.slow
@pytest.mark.parametrize("lam, expected", [(1.0, 0.75), (4.0, 0.6)])
def test_global_coefficient_matches_limit_at_scale(lam, expected):
    config = ExperimentConfig(n_values=(4096,), lambda_values=(lam,), tau_values=(0.5,), r_d=0.01,
                              replicates=20, base_seed=1)
    records = run_experiment(config)
    values = [record.empirical_global_cc for record in records]
    assert all(value is not None for value in values)
    assert math.fsum(values) / len(values) == pytest.approx(expected, abs=0.02)


@pytest.mark.slow
def test_both_coefficients_match_limits_at_n4096():
    config = ExperimentConfig(n_values=(4096,), lambda_values=(1.0, 2.0, 4.0, 8.0), tau_values=(0.3, 0.5),
                              r_d=0.01, replicates=20, base_seed=5)
    records = run_experiment(config)
    assert not any(record.undefined for record in records)
    for row in summarize_convergence(records):
        cell = [record for record in records if (record.lam, record.tau) == (row.lam, row.tau)]
        mean_global = math.fsum(record.empirical_global_cc for record in cell) / len(cell)
        mean_average = math.fsum(record.empirical_average_cc for record in cell) / len(cell)
        assert mean_global == pytest.approx(cell[0].global_limit, abs=0.02)
        assert mean_average == pytest.approx(cell[0].average_limit, abs=0.02)


@pytest.mark.slow
def test_average_coefficient_at_strong_communities():
    config = ExperimentConfig(n_values=(8192,), lambda_values=(5.0,), tau_values=(0.3,), r_d=0.01,
                              replicates=10, base_seed=11)
    records = run_experiment(config)
    assert all(record.average_limit == pytest.approx(h_of(5.0, 0.3), abs=1e-12) for record in records)
    mean_average = math.fsum(record.empirical_average_cc for record in records) / len(records)
    assert mean_average == pytest.approx(h_of(5.0, 0.3), abs=0.02)
