"""
Kernels - symmetric functions f on [0,1]^2 and their finite-n moments

For a size n the grid values are f_ij = f(i/n, j/n) with 1-based i, j, and

    f_i          = (1/n) sum_{j != i} f_ij
    lambda_{k,l} = (1/n^2) sum_{i != j} f_i^k f_ij^l
    gamma_{k,l}  = (1/n^2) sum_{i != j} f_i^k f_j^k f_ij^l

Both supported families are products f(x,y) = a(x) a(y), so every moment is
an O(n) reduction over the factor vector a_i = a(i/n).
"""
import math
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np
from loguru import logger

from errors import GridIndexOutOfRange, InvalidModelParameter, KernelDomainError
from numerics import compensated_sum, safe_power


class Kernel(ABC):
    """Symmetric kernel f: [0,1]^2 -> [0,1] with f >= lower_bound > 0"""

    family: str = ''

    @abstractmethod
    def factor(self, x: np.ndarray) -> np.ndarray:
        """a(x) such that f(x, y) = a(x) a(y)"""

    @property
    @abstractmethod
    def lower_bound(self) -> float:
        """epsilon with f >= epsilon on [0,1]^2"""

    @property
    @abstractmethod
    def params(self) -> Dict[str, float]:
        ...

    def evaluate(self, x: float, y: float) -> float:
        return float(self.factor(np.float64(x)) * self.factor(np.float64(y)))

    def row(self, x: float, ys: np.ndarray) -> np.ndarray:
        """f(x, y) for every y in ys"""
        return self.factor(np.float64(x)) * self.factor(ys)

    def describe(self) -> str:
        inner = ', '.join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({inner})"


@dataclass(frozen=True)
class ConstantKernel(Kernel):
    """f = c; the homogeneous Erdos-Renyi case"""
    c: float = 1.0
    family = 'constant'

    def __post_init__(self):
        if not (0 < self.c <= 1):
            raise InvalidModelParameter(f"constant kernel needs c in (0, 1], got {self.c}")

    def factor(self, x: np.ndarray) -> np.ndarray:
        return np.full(np.shape(x), math.sqrt(self.c), dtype=np.float64)

    def evaluate(self, x: float, y: float) -> float:
        return float(self.c)

    def row(self, x: float, ys: np.ndarray) -> np.ndarray:
        return np.full(np.shape(ys), float(self.c))

    @property
    def lower_bound(self) -> float:
        return float(self.c)

    @property
    def params(self) -> Dict[str, float]:
        return {'c': float(self.c)}


@dataclass(frozen=True)
class ExponentialProductKernel(Kernel):
    """f(x, y) = exp(-kappa x) exp(-kappa y); kappa = 0 is Erdos-Renyi"""
    kappa: float = 0.0
    family = 'exp'

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa < 0:
            raise InvalidModelParameter(f"exponential kernel needs kappa >= 0, got {self.kappa}")

    def factor(self, x: np.ndarray) -> np.ndarray:
        return np.exp(-self.kappa * np.asarray(x, dtype=np.float64))

    @property
    def lower_bound(self) -> float:
        return math.exp(-2.0 * self.kappa)

    @property
    def params(self) -> Dict[str, float]:
        return {'kappa': float(self.kappa)}


# ====================
# POINTWISE
# ====================

def eval_kernel(kernel: Kernel, x: float, y: float) -> float:
    """f(x, y) for x, y in [0, 1]"""
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise KernelDomainError(f"kernel evaluated outside [0,1]^2 at ({x}, {y})")
    return kernel.evaluate(x, y)


def grid_value(kernel: Kernel, n: int, i: int, j: int) -> float:
    """f_ij = f(i/n, j/n), 1 <= i, j <= n"""
    if not (1 <= i <= n and 1 <= j <= n):
        raise GridIndexOutOfRange(f"grid index ({i}, {j}) outside 1..{n}")
    return eval_kernel(kernel, i / n, j / n)


def grid_factors(kernel: Kernel, n: int) -> np.ndarray:
    """a(i/n) for i = 1..n"""
    return kernel.factor(np.arange(1, n + 1, dtype=np.float64) / n)


def _check_n(n: int):
    if n < 2:
        raise InvalidModelParameter(f"kernel moments need n >= 2, got {n}")


def _check_orders(k: float, l: Union[int, float]) -> Tuple[float, int]:
    if not math.isfinite(k) or k < 0:
        raise InvalidModelParameter(f"moment order k must be >= 0, got {k}")
    if l < 0 or int(l) != l:
        raise InvalidModelParameter(f"moment order l must be a nonnegative integer, got {l}")
    return float(k), int(l)


def _row_means_from_factors(a: np.ndarray) -> np.ndarray:
    total = compensated_sum(a)
    return a * (total - a) / a.size


# ====================
# MOMENTS
# ====================

class KernelMoments:
    """
    Finite-n moments of one kernel, memoized per (k, l)

    Safe for concurrent use: each cache is guarded by a lock and every value
    is computed deterministically, so a racing double-compute stores the same
    number.
    """

    def __init__(self, kernel: Kernel, n: int):
        _check_n(n)
        self.kernel = kernel
        self.n = n
        self._lock = threading.Lock()
        self._factors = grid_factors(kernel, n)
        self._factors.setflags(write=False)
        self._row_means = _row_means_from_factors(self._factors)
        self._row_means.setflags(write=False)
        self._lambda: Dict[Tuple[float, int], float] = {}
        self._gamma: Dict[Tuple[float, int], float] = {}

    @property
    def factors(self) -> np.ndarray:
        return self._factors

    @property
    def f_i(self) -> np.ndarray:
        return self._row_means

    def lambda_(self, k: float, l: int) -> float:
        key = _check_orders(k, l)
        with self._lock:
            if key in self._lambda:
                return self._lambda[key]
        value = self._compute(key[0], key[1], symmetric=False)
        with self._lock:
            self._lambda[key] = value
        return value

    def gamma(self, k: float, l: int) -> float:
        key = _check_orders(k, l)
        with self._lock:
            if key in self._gamma:
                return self._gamma[key]
        value = self._compute(key[0], key[1], symmetric=True)
        with self._lock:
            self._gamma[key] = value
        return value

    def _compute(self, k: float, l: int, symmetric: bool) -> float:
        # f_ij^l = a_i^l a_j^l, so sum_{j != i} w_j a_j^l = W - w_i a_i^l
        a_l = self._factors ** l
        weight = safe_power(self._row_means, k) * a_l
        if symmetric:
            partner = weight
        else:
            partner = a_l
        total = compensated_sum(partner)
        terms = weight * (total - partner)
        return compensated_sum(terms) / (float(self.n) * float(self.n))


_cache_lock = threading.Lock()
_moment_cache: Dict[Tuple[Kernel, int], KernelMoments] = {}


def get_moments(kernel: Kernel, n: int) -> KernelMoments:
    """Shared KernelMoments for (kernel, n)"""
    key = (kernel, int(n))
    with _cache_lock:
        moments = _moment_cache.get(key)
    if moments is None:
        moments = KernelMoments(kernel, int(n))
        with _cache_lock:
            moments = _moment_cache.setdefault(key, moments)
        logger.debug(f"✓ Kernel moments prepared for {kernel.describe()} at n={n}")
    return moments


def clear_moment_cache():
    with _cache_lock:
        _moment_cache.clear()


def row_means(kernel: Kernel, n: int) -> np.ndarray:
    """f_1..f_n"""
    return get_moments(kernel, n).f_i.copy()


def lambda_moment(kernel: Kernel, n: int, k: float, l: int) -> float:
    """lambda_{k,l} = (1/n^2) sum_{i != j} f_i^k f_ij^l"""
    return get_moments(kernel, n).lambda_(k, l)


def gamma_moment(kernel: Kernel, n: int, k: float, l: int) -> float:
    """gamma_{k,l} = (1/n^2) sum_{i != j} f_i^k f_j^k f_ij^l"""
    return get_moments(kernel, n).gamma(k, l)


def expected_degrees(kernel: Kernel, n: int, p_n: float) -> np.ndarray:
    """mu_i = p_n sum_{j != i} f_ij = n p_n f_i"""
    return p_n * n * get_moments(kernel, n).f_i


def expected_degree_spread(kernel: Kernel, n: int) -> float:
    """mu_1 / mu_n, the ratio of the largest to the smallest expected degree"""
    f = get_moments(kernel, n).f_i
    return float(f[0] / f[-1])


# ====================
# n -> infinity LIMITS (exponential kernel)
# ====================

def _exp_mean(kappa: float, t: float) -> float:
    """integral_0^1 exp(-kappa t x) dx"""
    s = kappa * t
    if s == 0:
        return 1.0
    return -math.expm1(-s) / s


def lambda_limit_exponential(kappa: float, k: float, l: int) -> float:
    """lim lambda_{k,l} for f = exp(-kappa x) exp(-kappa y)"""
    k, l = _check_orders(k, l)
    m1 = _exp_mean(kappa, 1.0)
    return m1 ** k * _exp_mean(kappa, k + l) * _exp_mean(kappa, l)


def gamma_limit_exponential(kappa: float, k: float, l: int) -> float:
    """lim gamma_{k,l} for f = exp(-kappa x) exp(-kappa y)"""
    k, l = _check_orders(k, l)
    m1 = _exp_mean(kappa, 1.0)
    return m1 ** (2 * k) * _exp_mean(kappa, k + l) ** 2
