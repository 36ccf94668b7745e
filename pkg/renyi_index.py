"""
Renyi Index - heterogeneity of a nonnegative weight (degree) sequence

R_alpha = 1 - [ (1/n) sum (d_i/d)^alpha ]^(1/(1-alpha))        alpha != 1
R_1     = 1 - exp( -(1/n) sum (d_i/d) log(d_i/d) )               alpha == 1

The index lies in [0, 1]; 0 means every weight equals the mean.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp, xlogy

import config
from errors import AllZeroWeights, NegativeWeight, NonPositiveAlpha, RenyiToolkitError
from graph_core import Graph, degree_sequence
from numerics import compensated_sum


@dataclass(frozen=True)
class IndexParams:
    """Index order alpha (> 0, finite)"""
    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise NonPositiveAlpha(f"alpha must be finite and > 0, got {self.alpha}")
        object.__setattr__(self, 'alpha', alpha)

    @property
    def is_theil(self) -> bool:
        return abs(self.alpha - 1.0) <= config.THEIL_BRANCH_TOLERANCE


class WeightSequence:
    """
    Immutable nonnegative weights d_1..d_n

    Values are stored sorted ascending so every reduction runs in the same
    order regardless of how the caller arranged the input.
    """

    __slots__ = ('_values',)

    def __init__(self, values: Union[Sequence[float], np.ndarray]):
        arr = np.asarray(values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise RenyiToolkitError("weight sequence must contain at least one value")
        if not np.all(np.isfinite(arr)):
            raise RenyiToolkitError("weight sequence contains NaN or infinite values")
        if np.any(arr < 0):
            raise NegativeWeight(f"weights must be >= 0, found min {arr.min()}")
        arr = np.sort(arr)
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return int(self._values.size)

    def mean(self) -> float:
        return compensated_sum(self._values) / self._values.size

    def ratios(self) -> np.ndarray:
        """d_i / d in ascending order; raises AllZeroWeights when d == 0"""
        d = self.mean()
        if d <= 0:
            raise AllZeroWeights("all weights are zero - the index is undefined")
        return self._values / d


WeightsLike = Union[WeightSequence, Sequence[float], np.ndarray]
AlphaLike = Union[float, IndexParams]


def _as_weights(weights: WeightsLike) -> WeightSequence:
    if isinstance(weights, WeightSequence):
        return weights
    return WeightSequence(weights)


def _as_params(alpha: AlphaLike) -> IndexParams:
    if isinstance(alpha, IndexParams):
        return alpha
    return IndexParams(alpha)


def _theil_statistic(ratios: np.ndarray) -> float:
    # xlogy gives 0*log(0) = 0
    return compensated_sum(xlogy(ratios, ratios)) / ratios.size


def _log_power_mean(ratios: np.ndarray, alpha: float) -> float:
    """log((1/n) sum r_i^alpha), evaluated in log space"""
    with np.errstate(divide='ignore'):
        log_r = np.log(ratios)
    return float(logsumexp(alpha * log_r)) - math.log(ratios.size)


def renyi_index(weights: WeightsLike, alpha: AlphaLike) -> float:
    """
    Renyi index of a weight sequence

    Args:
        weights: nonnegative values with positive mean
        alpha: index order, any finite alpha > 0

    Returns:
        R_alpha in [0, 1]

    Raises:
        AllZeroWeights, NonPositiveAlpha, NegativeWeight
    """
    params = _as_params(alpha)
    ratios = _as_weights(weights).ratios()

    if params.is_theil:
        return 1.0 - math.exp(-_theil_statistic(ratios))

    a = params.alpha
    if a > config.LOG_SPACE_ALPHA:
        return 1.0 - math.exp(_log_power_mean(ratios, a) / (1.0 - a))

    power_mean = compensated_sum(np.power(ratios, a)) / ratios.size
    return 1.0 - power_mean ** (1.0 / (1.0 - a))


def renyi_profile(weights: WeightsLike, alphas: Iterable[float]) -> List[Tuple[float, float]]:
    """renyi_index for each alpha, order preserved"""
    seq = _as_weights(weights)
    return [(float(a), renyi_index(seq, a)) for a in alphas]


def theil_index(weights: WeightsLike) -> float:
    """Theil statistic T = (1/n) sum (d_i/d) log(d_i/d); R_1 = 1 - exp(-T)"""
    return _theil_statistic(_as_weights(weights).ratios())


def simpson_index(weights: WeightsLike) -> float:
    """The alpha = 2 index (a function of Simpson's concentration)"""
    return renyi_index(weights, 2.0)


def atkinson_index(weights: WeightsLike, alpha: float) -> float:
    """Atkinson's inequality index; coincides with R_alpha for 0 < alpha <= 1"""
    if not 0 < alpha <= 1:
        raise NonPositiveAlpha(f"Atkinson index needs 0 < alpha <= 1, got {alpha}")
    return renyi_index(weights, alpha)


def _graph_degrees(graph: Graph) -> np.ndarray:
    # n=0 has no edges either
    if graph.n == 0:
        raise AllZeroWeights("graph has no nodes - the index is undefined")
    return degree_sequence(graph).degrees


def degree_renyi_index(graph: Graph, alpha: AlphaLike) -> float:
    """Renyi index of a graph's degree sequence"""
    return renyi_index(_graph_degrees(graph), alpha)


def degree_renyi_profile(graph: Graph, alphas: Iterable[float]) -> List[Tuple[float, float]]:
    return renyi_profile(_graph_degrees(graph), alphas)
