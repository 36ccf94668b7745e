"""
Simulation Engine - replicated Renyi-index experiments over random graph cells
Every (cell, replicate) pair is an independent task with its own RNG stream,
so results do not depend on how many workers run them or in what order.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

import config
from asymptotics import theoretical_summary
from errors import AllZeroWeights, CellFailure, InvalidModelParameter, NonPositiveAlpha, RenyiToolkitError
from generators import (
    HeteroErConfig,
    PowerLawConfig,
    SeedSpec,
    sample_hetero_er,
    sample_power_law_graph,
)
from graph_core import Graph, degree_sequence
from kernels import ConstantKernel, ExponentialProductKernel, Kernel
from numerics import compensated_sum
from renyi_index import WeightSequence, renyi_index

MODELS = ('hetero-er', 'power-law')
KERNEL_FAMILIES = ('exp', 'constant')


@dataclass(frozen=True)
class CellConfig:
    """
    One experiment cell

    hetero-er cells use n, p and a kernel (kernel='exp' with kappa, or
    kernel='constant' with c); power-law cells use n, tau and p.
    """
    model: str
    n: int
    p: float
    alphas: Tuple[float, ...]
    replicates: int = config.DEFAULT_REPLICATES
    kernel_family: str = 'exp'
    kappa: Optional[float] = None
    c: Optional[float] = None
    tau: Optional[float] = None
    cell_id: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'alphas', tuple(float(a) for a in self.alphas))
        if self.model not in MODELS:
            raise InvalidModelParameter(f"unknown model {self.model!r} (expected one of {', '.join(MODELS)})")
        if self.replicates < 2:
            raise InvalidModelParameter(f"replicates must be >= 2, got {self.replicates}")
        if not self.alphas:
            raise NonPositiveAlpha("a cell needs at least one alpha")
        for a in self.alphas:
            if not math.isfinite(a) or a <= 0:
                raise NonPositiveAlpha(f"alpha must be finite and > 0, got {a}")
        # Builds and validates the model config
        self.model_config()

    def kernel(self) -> Kernel:
        if self.model != 'hetero-er':
            raise InvalidModelParameter("only hetero-er cells have a kernel")
        if self.kernel_family == 'exp':
            if self.kappa is None:
                raise InvalidModelParameter("exp kernel needs kappa")
            return ExponentialProductKernel(float(self.kappa))
        if self.kernel_family == 'constant':
            return ConstantKernel(1.0 if self.c is None else float(self.c))
        raise InvalidModelParameter(f"unknown kernel {self.kernel_family!r}")

    def model_config(self):
        if self.model == 'hetero-er':
            return HeteroErConfig(n=int(self.n), p_n=float(self.p), kernel=self.kernel())
        if self.tau is None:
            raise InvalidModelParameter("power-law cell needs tau")
        return PowerLawConfig(n=int(self.n), tau=float(self.tau), p=float(self.p))

    @property
    def label(self) -> str:
        """Model column of the summary: hetero-er-exp, hetero-er-const or power-law"""
        if self.model == 'power-law':
            return 'power-law'
        return 'hetero-er-exp' if self.kernel_family == 'exp' else 'hetero-er-const'

    @property
    def params(self) -> Tuple[float, float]:
        """(param1, param2): (p, kappa|c) for hetero-er, (tau, p) for power-law"""
        if self.model == 'power-law':
            return float(self.tau), float(self.p)
        second = self.kappa if self.kernel_family == 'exp' else (1.0 if self.c is None else self.c)
        return float(self.p), float(second)

    def describe(self) -> str:
        p1, p2 = self.params
        return f"{self.cell_id or '-'} {self.label} n={self.n} params=({p1:g}, {p2:g})"


@dataclass
class ExperimentConfig:
    """Cells plus the master seed every replicate stream derives from"""
    cells: List[CellConfig] = field(default_factory=list)
    master_seed: int = config.DEFAULT_MASTER_SEED
    replicates: int = config.DEFAULT_REPLICATES
    name: str = ''


@dataclass(frozen=True)
class SummaryRow:
    """Aggregate over the replicates of one (cell, alpha)"""
    model: str
    n: int
    param1: float
    param2: float
    alpha: float
    replicates: int
    mean: float
    sd: float
    limit: Optional[float] = None
    plugin: Optional[float] = None
    abs_gap: Optional[float] = None
    cell_id: str = ''

    def to_record(self) -> Dict:
        return {
            'model': self.model,
            'n': self.n,
            'param1': self.param1,
            'param2': self.param2,
            'alpha': self.alpha,
            'replicates': self.replicates,
            'mean': self.mean,
            'sd': self.sd,
            'limit': self.limit,
            'plugin': self.plugin,
            'abs_gap': self.abs_gap,
        }


@dataclass
class ExperimentReport:
    """Rows of every successful cell, in config order, plus the failures

    redraws maps a cell id to the number of edgeless graphs it discarded
    (cells with none are absent).
    """
    rows: List[SummaryRow] = field(default_factory=list)
    failures: List[CellFailure] = field(default_factory=list)
    redraws: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


# ====================
# REPLICATES
# ====================

def _sample_graph(cell: CellConfig, seed: SeedSpec) -> Graph:
    model_cfg = cell.model_config()
    if cell.model == 'hetero-er':
        return sample_hetero_er(model_cfg, seed)
    graph, _ = sample_power_law_graph(model_cfg, seed)
    return graph


def redraw_seed(cell: CellConfig, master_seed: int, replicate: int, attempt: int) -> SeedSpec:
    """Stream of draw `attempt` of a replicate; attempt 0 is the replicate's own stream"""
    cell_id = cell.cell_id if attempt == 0 else f"{cell.cell_id}#retry{attempt}"
    return SeedSpec(master_seed=master_seed, cell_id=cell_id, replicate=replicate)


def replicate_indexes(cell: CellConfig, master_seed: int, replicate: int,
                      max_redraws: int = config.MAX_EMPTY_REDRAWS) -> Tuple[np.ndarray, int]:
    """
    Sample one graph for the cell and return its index for every alpha

    The index is undefined on an edgeless graph, so an empty draw is replaced
    by a fresh one on a derived stream (the index is conditioned on at least
    one edge).

    Returns:
        (indexes, redraws) where redraws counts the discarded empty graphs

    Raises:
        AllZeroWeights: every one of the 1 + max_redraws draws was empty
    """
    for attempt in range(max_redraws + 1):
        graph = _sample_graph(cell, redraw_seed(cell, master_seed, replicate, attempt))
        if graph.num_edges:
            weights = WeightSequence(degree_sequence(graph).degrees)
            values = np.array([renyi_index(weights, a) for a in cell.alphas], dtype=np.float64)
            return values, attempt
    raise AllZeroWeights(
        f"all {max_redraws + 1} draws were edgeless - the index is undefined"
    )


def _run_task(cell: CellConfig, master_seed: int, replicate: int, max_redraws: int):
    """Task wrapper: (values, redraws, None) on success, (None, 0, reason) on a library error"""
    try:
        values, redraws = replicate_indexes(cell, master_seed, replicate, max_redraws)
        return values, redraws, None
    except RenyiToolkitError as e:
        return None, 0, f"replicate {replicate}: {type(e).__name__}: {e}"


def _mean_sd(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and sample sd (divisor R - 1), both via compensated sums"""
    ordered = sorted(float(v) for v in values)
    mean = compensated_sum(ordered) / len(ordered)
    ss = compensated_sum([(v - mean) ** 2 for v in ordered])
    return mean, math.sqrt(ss / (len(ordered) - 1))


def _aggregate(cell: CellConfig, values: np.ndarray) -> List[SummaryRow]:
    """values is (replicates, alphas)"""
    rows = []
    p1, p2 = cell.params
    for j, alpha in enumerate(cell.alphas):
        mean, sd = _mean_sd(values[:, j])
        theory = theoretical_summary(cell, alpha)
        limit = theory.limit_value
        rows.append(SummaryRow(
            model=cell.label,
            n=int(cell.n),
            param1=p1,
            param2=p2,
            alpha=alpha,
            replicates=int(values.shape[0]),
            mean=mean,
            sd=sd,
            limit=limit,
            plugin=theory.plugin_value,
            abs_gap=abs(mean - limit) if limit is not None else None,
            cell_id=cell.cell_id,
        ))
    return rows


# ====================
# ENGINE
# ====================

class SimulationEngine:
    """
    Replicated simulation runner

    Features:
    - Parallel over (cell x replicate) with joblib
    - Results reduced in task-index order (schedule independent)
    - Edgeless replicates redrawn on derived streams (bounded)
    - Per-cell failure isolation
    - Theory columns (limit, unclamped plug-in, gap) attached to every row
    """

    def __init__(self, jobs: int = config.DEFAULT_JOBS, max_redraws: int = config.MAX_EMPTY_REDRAWS):
        if jobs < 1:
            raise InvalidModelParameter(f"jobs must be >= 1, got {jobs}")
        if max_redraws < 0:
            raise InvalidModelParameter(f"max_redraws must be >= 0, got {max_redraws}")
        self.jobs = jobs
        self.max_redraws = max_redraws
        logger.info(f"✓ Simulation Engine initialized with {jobs} worker(s)")

    def run_cell(self, cell: CellConfig, master_seed: int) -> List[SummaryRow]:
        """
        Run every replicate of one cell

        Raises:
            CellFailure: a replicate failed (e.g. AllZeroWeights once every redraw
                was edgeless)
        """
        report = self.run_experiment(ExperimentConfig(cells=[cell], master_seed=master_seed))
        if report.failures:
            raise report.failures[0]
        return report.rows

    def run_experiment(self, experiment: ExperimentConfig) -> ExperimentReport:
        """
        Run all cells

        Args:
            experiment: cells and master seed

        Returns:
            ExperimentReport with rows in config order and one CellFailure per
            failed cell
        """
        cells = experiment.cells
        seed = experiment.master_seed
        tasks = [(ci, r) for ci, cell in enumerate(cells) for r in range(cell.replicates)]
        logger.info(
            f"🔄 Running {len(cells)} cell(s), {len(tasks)} replicate task(s), "
            f"master_seed={seed}, jobs={self.jobs}"
        )
        if not tasks:
            return ExperimentReport()

        # Ordered output: result k belongs to tasks[k] whatever the schedule
        results = Parallel(n_jobs=self.jobs)(
            delayed(_run_task)(cells[ci], seed, r, self.max_redraws) for ci, r in tasks
        )

        by_cell: Dict[int, List] = {}
        for (ci, _), result in zip(tasks, results):
            by_cell.setdefault(ci, []).append(result)

        report = ExperimentReport()
        for ci, cell in enumerate(cells):
            outcomes = by_cell.get(ci, [])
            errors = [reason for _, _, reason in outcomes if reason is not None]
            if errors:
                failure = CellFailure(cell.cell_id or str(ci), errors[0])
                logger.error(f"❌ Cell {cell.describe()} failed: {errors[0]}")
                report.failures.append(failure)
                continue
            redraws = sum(count for _, count, _ in outcomes)
            if redraws:
                report.redraws[cell.cell_id or str(ci)] = redraws
                logger.info(f"🔁 Cell {cell.describe()}: redrew {redraws} edgeless graph(s)")
            values = np.vstack([values for values, _, _ in outcomes])
            rows = _aggregate(cell, values)
            logger.debug(f"📊 Cell {cell.describe()}: " + ', '.join(
                f"R_{row.alpha:g}={row.mean:.4f}({row.sd:.4f})" for row in rows))
            report.rows.extend(rows)

        if report.failures:
            logger.warning(f"⚠️ {len(report.failures)} of {len(cells)} cell(s) failed")
        logger.success(f"✅ Simulation complete: {len(report.rows)} summary row(s)")
        return report


def run_cell(cell: CellConfig, master_seed: int, jobs: int = 1) -> List[SummaryRow]:
    """One SummaryRow per alpha of the cell"""
    return SimulationEngine(jobs).run_cell(cell, master_seed)


def run_experiment(experiment: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    return SimulationEngine(jobs).run_experiment(experiment)


def _fmt(value: Optional[float], spec: str = '.4f') -> str:
    return '-' if value is None else format(value, spec)


def print_results(rows: List[SummaryRow], title: str = "SIMULATION RESULTS"):
    """Print summary rows in a formatted way"""
    print("\n" + "=" * 96)
    print(title)
    print("=" * 96)
    print(f"{'model':<16}{'n':>7}{'param1':>9}{'param2':>9}{'alpha':>7}"
          f"{'mean':>9}{'sd':>9}{'limit':>9}{'plugin (unclamped)':>20}")
    print("-" * 96)
    for row in rows:
        print(f"{row.model:<16}{row.n:>7}{row.param1:>9g}{row.param2:>9g}{row.alpha:>7g}"
              f"{row.mean:>9.4f}{row.sd:>9.4f}{_fmt(row.limit):>9}{_fmt(row.plugin):>20}")
    print("=" * 96 + "\n")
