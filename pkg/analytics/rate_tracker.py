"""
Rate Tracker - empirical convergence rates from log-log regression
"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger
from scipy import stats

from errors import DegenerateFit, InsufficientPoints, RenyiToolkitError
from simulation.sim_engine import SummaryRow
from simulation.summary_store import rows_to_frame

DEFAULT_GROUP_KEYS = ('model', 'param1', 'param2', 'alpha')
MIN_POINTS = 3


@dataclass(frozen=True)
class RateEstimate:
    """OLS fit of log(err) on log(n); slope is the empirical rate exponent"""
    points: Tuple[Tuple[int, float], ...]
    slope: float
    intercept: float
    r_squared: float


def estimate_rate(points: Sequence[Tuple[float, float]]) -> RateEstimate:
    """
    Fit err ~ C n^slope

    Args:
        points: (n, err) pairs with err > 0

    Returns:
        RateEstimate

    Raises:
        InsufficientPoints: fewer than three points
        DegenerateFit: all n equal, or an n appears twice
    """
    pts = sorted((float(n), float(err)) for n, err in points)
    if len(pts) < MIN_POINTS:
        raise InsufficientPoints(f"rate estimate needs >= {MIN_POINTS} points, got {len(pts)}")
    ns = np.array([n for n, _ in pts])
    errs = np.array([e for _, e in pts])
    if np.any(ns <= 0):
        raise RenyiToolkitError("n must be > 0")
    if not np.all(np.isfinite(errs)) or np.any(errs <= 0):
        raise RenyiToolkitError("every err must be finite and > 0")
    if np.all(ns == ns[0]):
        raise DegenerateFit("all n are equal - the slope is undefined")
    if np.any(np.diff(ns) == 0):
        raise DegenerateFit("n values must be strictly increasing")

    fit = stats.linregress(np.log(ns), np.log(errs))
    estimate = RateEstimate(
        points=tuple((int(n) if float(n).is_integer() else n, e) for n, e in pts),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue) ** 2,
    )
    logger.debug(f"📈 Rate fit over {len(pts)} points: slope={estimate.slope:.4f}, r2={estimate.r_squared:.4f}")
    return estimate


def gap_points(frame: pd.DataFrame) -> List[Tuple[int, float]]:
    """(n, abs_gap) pairs of one group; rows without a limit are skipped"""
    usable = frame.dropna(subset=['abs_gap']).sort_values('n')
    return [(int(n), float(gap)) for n, gap in zip(usable['n'], usable['abs_gap'])]


def group_rates(rows: List[SummaryRow], keys: Sequence[str] = DEFAULT_GROUP_KEYS) -> Dict[Tuple, RateEstimate]:
    """
    One RateEstimate per group of summary rows

    Args:
        rows: summary rows (e.g. from read_summary)
        keys: summary columns identifying a group; n varies inside a group

    Raises:
        InsufficientPoints: a group has fewer than three usable n values
    """
    frame = rows_to_frame(rows)
    unknown = [k for k in keys if k not in frame.columns or k == 'n']
    if unknown:
        raise RenyiToolkitError(f"cannot group by {', '.join(unknown)}")

    estimates: Dict[Tuple, RateEstimate] = {}
    for group, part in frame.groupby(list(keys), sort=False):
        group = group if isinstance(group, tuple) else (group,)
        points = gap_points(part)
        try:
            estimates[group] = estimate_rate(points)
        except InsufficientPoints as e:
            raise InsufficientPoints(f"group {dict(zip(keys, group))}: {e}")
    logger.info(f"📊 Estimated {len(estimates)} rate(s)")
    return estimates


def rate_table(estimates: Dict[Tuple, RateEstimate], keys: Sequence[str]) -> str:
    """CSV text: group keys, points, slope, intercept, r_squared"""
    lines = [','.join(list(keys) + ['points', 'slope', 'intercept', 'r_squared'])]
    for group, est in estimates.items():
        cells = [f"{v:g}" if isinstance(v, float) else str(v) for v in group]
        cells += [str(len(est.points)), f"{est.slope:.6g}", f"{est.intercept:.6g}", f"{est.r_squared:.6g}"]
        lines.append(','.join(cells))
    return '\n'.join(lines) + '\n'

