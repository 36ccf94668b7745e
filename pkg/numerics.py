"""
Numerical helpers shared by the index, kernel and asymptotics modules
"""
import math
from typing import Iterable

import numpy as np


def compensated_sum(values: Iterable[float]) -> float:
    """
    Compensated sum of a sequence of floats

    Uses math.fsum, which tracks partial sums exactly and rounds once, so the
    result does not depend on how callers split or schedule the work.
    """
    if isinstance(values, np.ndarray):
        return math.fsum(values.ravel().tolist())
    return math.fsum(values)


def log_expm1(x: float) -> float:
    """log(e^x - 1) for x > 0 without overflowing at large x"""
    if x <= 0:
        raise ValueError(f"log_expm1 needs x > 0, got {x}")
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def safe_power(base: np.ndarray, exponent: float) -> np.ndarray:
    """
    base**exponent via exp(exponent * log(base)) for strictly positive bases

    Non-integer exponents on kernel row means go through here; zero exponent
    returns exact ones.
    """
    base = np.asarray(base, dtype=np.float64)
    if exponent == 0:
        return np.ones_like(base)
    if exponent == 1:
        return base.copy()
    if np.any(base <= 0):
        raise ValueError("safe_power needs strictly positive bases")
    return np.exp(exponent * np.log(base))
