"""
Asymptotics - theoretical values the simulations are compared against

Finite-n plug-in predictions built from kernel moments, closed-form limits for
the exponential kernel, truncated-Pareto moments and the power-law rate.
Plug-in values are never clamped to [0, 1]: at finite n they can sit just
outside it (constant kernel, alpha > 1 gives -O(1/n)).
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import xlogy

import config
from errors import InvalidModelParameter, KEqualsTau, NonPositiveAlpha
from kernels import ExponentialProductKernel, Kernel, get_moments
from numerics import compensated_sum, log_expm1


@dataclass(frozen=True)
class TheoreticalSummary:
    """Theory attached to one (model, alpha, n) combination"""
    model: str
    alpha: float
    n: int
    limit_value: Optional[float]
    plugin_value: Optional[float]
    rate_order: str
    rate_exponent: float


def _check_alpha(alpha: float, allow_one: bool = False) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise NonPositiveAlpha(f"alpha must be finite and > 0, got {alpha}")
    if not allow_one and abs(alpha - 1.0) <= config.THEIL_BRANCH_TOLERANCE:
        raise NonPositiveAlpha("alpha = 1 has its own formula (use the Theil-branch functions)")
    return alpha


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa < 0:
        raise InvalidModelParameter(f"kappa must be >= 0, got {kappa}")
    return kappa


# ====================
# FINITE-n PLUG-IN
# ====================

def plugin_prediction(kernel: Kernel, n: int, alpha: float) -> float:
    """
    1 - (lambda_{alpha,0} / lambda_{0,1}^alpha)^(1/(1-alpha)) with finite-n moments

    Args:
        kernel: edge-probability kernel
        n: graph size (>= 2)
        alpha: index order, alpha != 1

    Returns:
        Unclamped plug-in value
    """
    alpha = _check_alpha(alpha)
    moments = get_moments(kernel, n)
    log_ratio = math.log(moments.lambda_(alpha, 0)) - alpha * math.log(moments.lambda_(0, 1))
    return 1.0 - math.exp(log_ratio / (1.0 - alpha))


def _scaled_row_means(kernel: Kernel, n: int) -> np.ndarray:
    # mu_i / (n p_n lambda_{0,1}) = f_i / lambda_{0,1}; p_n cancels
    moments = get_moments(kernel, n)
    return moments.f_i / moments.lambda_(0, 1)


def r_n_theoretical(kernel: Kernel, n: int, p_n: float = 1.0) -> float:
    """r_n = (1/n) sum x_i log x_i with x_i = mu_i / (n p_n lambda_{0,1})"""
    if not 0.0 < p_n <= 1.0:
        raise InvalidModelParameter(f"p_n must lie in (0, 1], got {p_n}")
    x = _scaled_row_means(kernel, n)
    return compensated_sum(xlogy(x, x)) / n


def plugin_r1(kernel: Kernel, n: int, p_n: float = 1.0) -> float:
    """Finite-n alpha = 1 prediction 1 - exp(-r_n)"""
    return 1.0 - math.exp(-r_n_theoretical(kernel, n, p_n))


def theil_log_ratios(kernel: Kernel, n: int, p_n: float = 1.0) -> np.ndarray:
    """l_i = log(mu_i / (n p_n lambda_{0,1}))"""
    if not 0.0 < p_n <= 1.0:
        raise InvalidModelParameter(f"p_n must lie in (0, 1], got {p_n}")
    return np.log(_scaled_row_means(kernel, n))


def s_moment(kernel: Kernel, n: int, p_n: float, k: int) -> float:
    """
    s_k = sum_{i<j} (2 + l_i + l_j)^k f_ij (1 - p_n f_ij)

    O(n^2) row sweep; s_2 of order n^2 is the non-degeneracy condition for the
    alpha = 1 expansion.
    """
    l = theil_log_ratios(kernel, n, p_n)
    points = np.arange(1, n + 1, dtype=np.float64) / n
    row_totals = []
    for i in range(n - 1):
        f = kernel.row(points[i], points[i + 1:])
        row_totals.append(compensated_sum((2.0 + l[i] + l[i + 1:]) ** k * f * (1.0 - p_n * f)))
    return compensated_sum(row_totals)


# ====================
# EXPONENTIAL KERNEL CLOSED FORMS
# ====================

def limit_exponential(alpha: float, kappa: float) -> float:
    """
    n -> infinity index for f = exp(-kappa x) exp(-kappa y), alpha != 1

        1 - ((e^{kappa alpha} - 1) kappa^{alpha-1} / (alpha (e^kappa - 1)^alpha))^{1/(1-alpha)}

    Evaluated in log space throughout, so large kappa*alpha cannot overflow.
    kappa = 0 returns exactly 0.
    """
    alpha = _check_alpha(alpha)
    kappa = _check_kappa(kappa)
    if kappa == 0:
        return 0.0
    log_q = (log_expm1(kappa * alpha) + (alpha - 1.0) * math.log(kappa)
             - math.log(alpha) - alpha * log_expm1(kappa))
    return -math.expm1(log_q / (1.0 - alpha))


def g_kappa(kappa: float) -> float:
    """g(kappa) = -1 + kappa/(e^kappa - 1) - log((e^kappa - 1)/(kappa e^kappa)); g(0) = 0"""
    kappa = _check_kappa(kappa)
    if kappa == 0:
        return 0.0
    # log((e^k - 1)/(k e^k)) = log(1 - e^-k) - log k
    return -1.0 + kappa / math.expm1(kappa) - (math.log(-math.expm1(-kappa)) - math.log(kappa))


def limit_r1_exponential(kappa: float) -> float:
    """n -> infinity alpha = 1 index: 1 - exp(-g(kappa))"""
    return -math.expm1(-g_kappa(kappa))


# ====================
# POWER-LAW MODEL
# ====================

def truncated_pareto_moment(n: float, tau: float, k: float) -> float:
    """
    E[min(W, sqrt(n))^k] for P(W > x) = x^-tau

        n^{(k-tau)/2} k/(k-tau) - tau/(k-tau)

    Raises:
        KEqualsTau: the closed form has a pole at k == tau
    """
    if k <= 0:
        raise InvalidModelParameter(f"moment order k must be > 0, got {k}")
    if tau <= 0:
        raise InvalidModelParameter(f"tau must be > 0, got {tau}")
    if k == tau:
        raise KEqualsTau(f"k == tau == {tau}: the truncated moment needs a k != tau grid")
    if n < 1:
        raise InvalidModelParameter(f"n must be >= 1, got {n}")
    d = k - tau
    return n ** (d / 2.0) * k / d - tau / d


def powerlaw_gap_rate(n: float, tau: float) -> float:
    """n^(tau/2 - 1), the order of 1 - R_2 for the power-law graph"""
    lo, hi = config.POWER_LAW_TAU_RANGE
    if not lo < tau < hi:
        raise InvalidModelParameter(f"tau must lie in ({lo:g}, {hi:g}), got {tau}")
    return float(n) ** (tau / 2.0 - 1.0)


def expected_degree_powerlaw(tau: float, p: float) -> float:
    """p (E W)^2 = p (tau/(tau-1))^2, the pre-cutoff expected degree"""
    if tau <= 1:
        raise InvalidModelParameter(f"E W is finite only for tau > 1, got {tau}")
    return p * (tau / (tau - 1.0)) ** 2


# ====================
# SUMMARY
# ====================

def theoretical_summary(cell, alpha: float) -> TheoreticalSummary:
    """
    Limit, plug-in and rate for one cell

    `cell` needs `model`, `n`, `p`, and `kernel()` for hetero-ER models or
    `tau` for the power-law model.
    """
    alpha = _check_alpha(alpha, allow_one=True)
    theil = abs(alpha - 1.0) <= config.THEIL_BRANCH_TOLERANCE

    if cell.model == 'power-law':
        limit = 1.0 if alpha == 2.0 else None
        return TheoreticalSummary(
            model=cell.model, alpha=alpha, n=cell.n,
            limit_value=limit, plugin_value=None,
            rate_order='n^(tau/2-1)', rate_exponent=cell.tau / 2.0 - 1.0,
        )

    kernel = cell.kernel()
    if theil:
        plugin = plugin_r1(kernel, cell.n, cell.p) if cell.p > 0 else None
        rate = '1/(n sqrt(p_n))'
    else:
        plugin = plugin_prediction(kernel, cell.n, alpha)
        rate = '1/(n p_n) + 1/(n sqrt(p_n))'

    if isinstance(kernel, ExponentialProductKernel):
        limit = limit_r1_exponential(kernel.kappa) if theil else limit_exponential(alpha, kernel.kappa)
    else:
        limit = 0.0

    return TheoreticalSummary(
        model=cell.model, alpha=alpha, n=cell.n,
        limit_value=limit, plugin_value=plugin,
        rate_order=rate, rate_exponent=-1.0,
    )
