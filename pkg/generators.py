"""
Random Graph Generators - heterogeneous Erdos-Renyi and power-law models

Every draw comes from a Philox stream whose key is a SHA-256 hash of
(master_seed, cell_id, replicate), so replicates can run in any order or
process and still reproduce bit-for-bit.
"""
import hashlib
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from loguru import logger

import config
from errors import InvalidModelParameter
from graph_core import Graph
from kernels import Kernel, grid_factors

_U52 = 2.0 ** -52


@dataclass(frozen=True)
class SeedSpec:
    """Identifies one independent random stream"""
    master_seed: int
    cell_id: str = ''
    replicate: int = 0

    def __post_init__(self):
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise InvalidModelParameter(f"master_seed must be an unsigned 64-bit integer, got {self.master_seed}")
        if int(self.replicate) < 0:
            raise InvalidModelParameter(f"replicate must be >= 0, got {self.replicate}")

    def entropy(self) -> Tuple[int, ...]:
        payload = f"{int(self.master_seed)}|{self.cell_id}|{int(self.replicate)}".encode('utf-8')
        digest = hashlib.sha256(payload).digest()
        return tuple(int.from_bytes(digest[i:i + 4], 'little') for i in range(0, 32, 4))

    def rng(self) -> np.random.Generator:
        """Fresh generator for this stream"""
        return np.random.Generator(np.random.Philox(np.random.SeedSequence(self.entropy())))


@dataclass(frozen=True)
class HeteroErConfig:
    """G(n, p_n, f): P(A_ij = 1) = p_n f(i/n, j/n)"""
    n: int
    p_n: float
    kernel: Kernel

    def __post_init__(self):
        if self.n < 2:
            raise InvalidModelParameter(f"n must be >= 2, got {self.n}")
        if self.n > config.MAX_DENSE_N:
            raise InvalidModelParameter(f"n={self.n} exceeds MAX_DENSE_N={config.MAX_DENSE_N}")
        if not 0.0 <= self.p_n <= 1.0:
            raise InvalidModelParameter(f"p_n must lie in [0, 1], got {self.p_n}")


@dataclass(frozen=True)
class PowerLawConfig:
    """G(n, tau): P(A_ij = 1 | W) = p w~_i w~_j / n, w~ = min(w, sqrt(n))"""
    n: int
    tau: float
    p: float

    def __post_init__(self):
        lo, hi = config.POWER_LAW_TAU_RANGE
        if self.n < 2:
            raise InvalidModelParameter(f"n must be >= 2, got {self.n}")
        if self.n > config.MAX_DENSE_N:
            raise InvalidModelParameter(f"n={self.n} exceeds MAX_DENSE_N={config.MAX_DENSE_N}")
        if not lo < self.tau < hi:
            raise InvalidModelParameter(f"tau must lie in ({lo:g}, {hi:g}), got {self.tau}")
        if not 0.0 < self.p < 1.0:
            raise InvalidModelParameter(f"p must lie in (0, 1), got {self.p}")


# ====================
# PRIMITIVES
# ====================

def open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """
    Uniforms on the open interval (0, 1): midpoints of the 2^-52 grid

    k + 0.5 is exact for k < 2^52, so the values run from 2^-53 to 1 - 2^-53.
    """
    k = rng.integers(0, 2 ** 52, size=size, dtype=np.int64)
    return (k + 0.5) * _U52


def _pareto_draws(rng: np.random.Generator, n: int, tau: float) -> np.ndarray:
    return open_uniform(rng, n) ** (-1.0 / tau)


def _sample_pairs(rng: np.random.Generator, n: int, row_probs) -> Graph:
    """
    One Bernoulli draw per unordered pair, row by row

    row_probs(u) returns the probabilities for pairs (u, v), v = u+1..n-1.
    """
    us = []
    vs = []
    for u in range(n - 1):
        probs = row_probs(u)
        hits = np.flatnonzero(rng.random(probs.size) < probs)
        if hits.size:
            us.append(np.full(hits.size, u, dtype=np.int64))
            vs.append(hits.astype(np.int64) + (u + 1))
    if not us:
        return Graph(n)
    edges = np.column_stack((np.concatenate(us), np.concatenate(vs)))
    return Graph._from_canonical(n, edges)


# ====================
# SAMPLERS
# ====================

def sample_pareto_weights(n: int, tau: float, seed: SeedSpec) -> np.ndarray:
    """
    i.i.d. draws with P(W > x) = x^-tau, x >= 1

    Inverse transform w = U^(-1/tau) with U uniform on the open interval.
    """
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidModelParameter(f"tau must be > 0, got {tau}")
    return _pareto_draws(seed.rng(), int(n), float(tau))


def truncate_weights(weights: np.ndarray, n: int) -> np.ndarray:
    """w~ = min(w, sqrt(n))"""
    return np.minimum(weights, math.sqrt(n))


def sample_hetero_er(cfg: HeteroErConfig, seed: SeedSpec) -> Graph:
    """Each pair {u, v} independently with probability p_n f((u+1)/n, (v+1)/n)"""
    n = cfg.n
    rng = seed.rng()
    points = np.arange(1, n + 1, dtype=np.float64) / n
    kernel = cfg.kernel
    p_n = cfg.p_n

    def row_probs(u: int) -> np.ndarray:
        return p_n * kernel.row(points[u], points[u + 1:])

    graph = _sample_pairs(rng, n, row_probs)
    logger.debug(f"Sampled hetero-ER {kernel.describe()} n={n} p={p_n:g}: {graph.num_edges} edges")
    return graph


def sample_power_law_given_weights(n: int, truncated: np.ndarray, p: float,
                                   rng: np.random.Generator) -> Graph:
    """Edges conditional on frozen truncated weights: Bernoulli(p w~_u w~_v / n)"""
    truncated = np.asarray(truncated, dtype=np.float64)
    scale = p / n

    def row_probs(u: int) -> np.ndarray:
        return scale * truncated[u] * truncated[u + 1:]

    return _sample_pairs(rng, n, row_probs)


def sample_power_law_graph(cfg: PowerLawConfig, seed: SeedSpec) -> Tuple[Graph, np.ndarray]:
    """
    Sample G(n, tau)

    Returns:
        (graph, truncated weights w~) - the weights the edge probabilities used
    """
    rng = seed.rng()
    weights = _pareto_draws(rng, cfg.n, cfg.tau)
    truncated = truncate_weights(weights, cfg.n)
    graph = sample_power_law_given_weights(cfg.n, truncated, cfg.p, rng)
    logger.debug(
        f"Sampled power-law n={cfg.n} tau={cfg.tau:g} p={cfg.p:g}: {graph.num_edges} edges, "
        f"{int(np.count_nonzero(weights >= math.sqrt(cfg.n)))} capped weights"
    )
    return graph, truncated


def edge_probability_matrix(cfg: HeteroErConfig) -> np.ndarray:
    """Dense p_n f_ij matrix with zero diagonal (small n only; used for marginal checks)"""
    a = grid_factors(cfg.kernel, cfg.n)
    probs = cfg.p_n * np.outer(a, a)
    if cfg.kernel.family == 'constant':
        probs = np.full_like(probs, cfg.p_n * cfg.kernel.lower_bound)
    np.fill_diagonal(probs, 0.0)
    return probs
