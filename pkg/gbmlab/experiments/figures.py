"""
Figure data.

Tables behind the two limit plots: f(lambda) for balanced communities, and
h(lambda, tau) against g(lambda, tau) for a fixed set of community strengths.
Plotting is left to whatever consumes the CSVs.
"""

import csv
import os
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core.errors import ParameterError
from ..theory.limits import RGG_LIMIT, f_of, g_of, h_of

# Configure logging
logger = logging.getLogger(__name__)

FIGURE1_FILE = 'fig1.csv'
FIGURE2_FILE = 'fig2.csv'
FIGURE1_HEADER = ('lambda', 'f')
FIGURE2_HEADER = ('lambda', 'tau', 'h', 'g')

DEFAULT_LAMBDA_SET = (1.5, 2.0, 5.0, 10.0, 25.0, 50.0)


def default_lambda_grid() -> Tuple[float, ...]:
    """[1, 10] in steps of 0.01."""
    return tuple(round(1.0 + k / 100.0, 2) for k in range(901))


def default_tau_grid() -> Tuple[float, ...]:
    """0.01 to 0.99 in steps of 0.01."""
    return tuple(round(k / 100.0, 2) for k in range(1, 100))


@dataclass(frozen=True)
class Figure1Row:
    lam: float
    f: float

    def as_row(self) -> List[str]:
        return [_fmt(self.lam), _fmt(self.f)]


@dataclass(frozen=True)
class Figure2Row:
    lam: float
    tau: float
    h: float
    g: float
    reference: float = RGG_LIMIT

    def as_row(self) -> List[str]:
        return [_fmt(self.lam), _fmt(self.tau), _fmt(self.h), _fmt(self.g)]


def _fmt(value: float) -> str:
    return format(float(value), '.17g')


def figure1_data(lambda_grid: Optional[Sequence[float]] = None) -> List[Figure1Row]:
    """
    Balanced-community global limit over a lambda grid.

    Raises:
        ParameterError: For a lambda below 1
    """
    grid = default_lambda_grid() if lambda_grid is None else lambda_grid
    return [Figure1Row(lam=float(lam), f=f_of(lam)) for lam in grid]


def figure2_data(lambda_set: Optional[Sequence[float]] = None,
                 tau_grid: Optional[Sequence[float]] = None) -> List[Figure2Row]:
    """
    Average limit h next to the global limit g, one row per (lambda, tau).

    Args:
        lambda_set: Community strengths, by default 1.5, 2, 5, 10, 25 and 50
        tau_grid: Community fractions strictly inside (0, 1)

    Returns:
        List[Figure2Row]: lambda-major order
    """
    lambdas = DEFAULT_LAMBDA_SET if lambda_set is None else lambda_set
    taus = default_tau_grid() if tau_grid is None else tau_grid
    for tau in taus:
        if not 0.0 < tau < 1.0:
            raise ParameterError(f"tau grid must lie in (0, 1), got {tau}", field='tau')
    return [
        Figure2Row(lam=float(lam), tau=float(tau), h=h_of(lam, tau), g=g_of(lam, tau))
        for lam in lambdas
        for tau in taus
    ]


def write_figure_csv(rows: Iterable, header: Sequence[str], path: str) -> None:
    """Write figure rows with a header, 17 significant digits per value."""
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(row.as_row() for row in rows)


def write_figures(out_dir: str) -> Tuple[str, str]:
    """
    Write fig1.csv and fig2.csv with the default grids.

    Returns:
        (fig1 path, fig2 path)
    """
    os.makedirs(out_dir, exist_ok=True)
    first = os.path.join(out_dir, FIGURE1_FILE)
    second = os.path.join(out_dir, FIGURE2_FILE)
    write_figure_csv(figure1_data(), FIGURE1_HEADER, first)
    write_figure_csv(figure2_data(), FIGURE2_HEADER, second)
    logger.info(f"Wrote {first} and {second}")
    return first, second
