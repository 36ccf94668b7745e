"""
Graph Core - simple undirected graphs, degree sequences and edge-list files
Edge-list format: UTF-8 lines of "u v" (0-based ids), optional "# n=<N>"
header, other '#' lines are comments. LF or CRLF on read, LF on write.
"""
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from errors import MalformedLine, NodeIdOutOfRange, RenyiToolkitError
from numerics import compensated_sum

_HEADER_RE = re.compile(r'#\s*n\s*=\s*([0-9]+)\s*')
_ID_RE = re.compile(r'[0-9]+')


class Graph:
    """
    Immutable simple undirected graph

    Edges are an (m, 2) array of canonical pairs (u < v), unique and sorted
    lexicographically, so two graphs with the same edge set serialize
    identically.
    """

    __slots__ = ('_n', '_edges')

    def __init__(self, n: int, edges: Optional[np.ndarray] = None):
        n = int(n)
        if n < 0:
            raise RenyiToolkitError(f"node count must be >= 0, got {n}")
        if edges is None:
            edges = np.empty((0, 2), dtype=np.int64)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)

        if edges.size:
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise RenyiToolkitError("edges must be canonical pairs with u < v (no self-loops)")
            if edges.min() < 0 or edges.max() >= n:
                raise RenyiToolkitError(f"edge endpoint outside 0..{n - 1}")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
            if np.any(np.all(edges[1:] == edges[:-1], axis=1)):
                raise RenyiToolkitError("duplicate edges")

        edges = np.ascontiguousarray(edges)
        edges.setflags(write=False)
        self._n = n
        self._edges = edges

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> 'Graph':
        """Build from arbitrary pairs, dropping self-loops and duplicates"""
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        arr = arr[arr[:, 0] != arr[:, 1]]
        arr = np.sort(arr, axis=1)
        arr = np.unique(arr, axis=0) if arr.size else arr
        return cls(n, arr)

    @classmethod
    def _from_canonical(cls, n: int, edges: np.ndarray) -> 'Graph':
        """Wrap pairs already canonical, unique and lexicographically sorted (sampler output)"""
        graph = cls.__new__(cls)
        edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        graph._n = int(n)
        graph._edges = edges
        return graph

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def num_edges(self) -> int:
        return int(self._edges.shape[0])

    def edge_set(self) -> set:
        return {(int(u), int(v)) for u, v in self._edges}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        return hash((self._n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.num_edges})"


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees d_1..d_n of a simple graph"""
    degrees: np.ndarray

    def __post_init__(self):
        deg = np.asarray(self.degrees, dtype=np.int64).ravel()
        n = deg.size
        if n and (deg.min() < 0 or deg.max() > n - 1):
            raise RenyiToolkitError("degrees must lie in 0..n-1")
        if int(deg.sum()) % 2:
            raise RenyiToolkitError("degree sum must be even")
        deg.setflags(write=False)
        object.__setattr__(self, 'degrees', deg)

    def __len__(self) -> int:
        return int(self.degrees.size)


@dataclass(frozen=True)
class ParseStats:
    """What parse_edge_list dropped or read from the header"""
    duplicates: int = 0
    self_loops: int = 0
    declared_n: Optional[int] = None


# ====================
# DEGREES
# ====================

def degree_sequence(g: Graph) -> DegreeSequence:
    """d_i = number of edges incident to node i; sum(d) == 2|E|"""
    counts = np.bincount(g.edges.ravel(), minlength=g.n) if g.n else np.zeros(0, dtype=np.int64)
    return DegreeSequence(counts.astype(np.int64))


def mean_degree(ds: DegreeSequence) -> float:
    """Average degree sum(d)/n"""
    if len(ds) == 0:
        raise RenyiToolkitError("mean degree of an empty graph is undefined")
    return compensated_sum(ds.degrees.astype(np.float64)) / len(ds)


# ====================
# EDGE-LIST I/O
# ====================

def parse_edge_list_with_stats(text: str) -> Tuple[Graph, ParseStats]:
    """
    Parse edge-list text

    Returns:
        (graph, stats) where stats counts dropped duplicates and self-loops

    Raises:
        MalformedLine: a data line is not two nonnegative integers
        NodeIdOutOfRange: an id is >= the declared n
    """
    declared_n: Optional[int] = None
    seen = set()
    pairs: List[Tuple[int, int]] = []
    duplicates = 0
    self_loops = 0
    max_id = -1

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('#'):
            match = _HEADER_RE.fullmatch(line)
            if match and declared_n is None and max_id < 0:
                declared_n = int(match.group(1))
            continue

        parts = line.split()
        if len(parts) != 2 or not all(_ID_RE.fullmatch(p) for p in parts):
            raise MalformedLine(line_no, raw)
        u, v = int(parts[0]), int(parts[1])

        if declared_n is not None and max(u, v) >= declared_n:
            raise NodeIdOutOfRange(line_no, max(u, v), declared_n)
        max_id = max(max_id, u, v)

        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        pairs.append(key)

    n = declared_n if declared_n is not None else max_id + 1
    if duplicates:
        logger.warning(f"⚠️ Dropped {duplicates} duplicate edge(s)")
    if self_loops:
        logger.warning(f"⚠️ Dropped {self_loops} self-loop(s)")

    graph = Graph(n, np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    return graph, ParseStats(duplicates=duplicates, self_loops=self_loops, declared_n=declared_n)


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph (see parse_edge_list_with_stats)"""
    graph, _ = parse_edge_list_with_stats(text)
    return graph


def format_edge_list(g: Graph) -> str:
    """Serialize with a '# n=<N>' header, one canonical pair per line, LF endings"""
    lines = [f"# n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    return '\n'.join(lines) + '\n'


def read_edge_list(path: str) -> Graph:
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    graph = parse_edge_list(text)
    logger.debug(f"📂 Loaded {graph} from {path}")
    return graph


def write_edge_list(g: Graph, path: str):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(format_edge_list(g))
    logger.debug(f"💾 Wrote {g} to {path}")


def write_weights(weights: np.ndarray, path: str):
    """Weights sidecar: 'node_id weight' per line"""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for node, w in enumerate(np.asarray(weights, dtype=np.float64).tolist()):
            f.write(f"{node} {w!r}\n")


def read_weights(path: str) -> np.ndarray:
    values = {}
    with open(path, 'r', encoding='utf-8') as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            if len(parts) != 2 or not _ID_RE.fullmatch(parts[0]):
                raise MalformedLine(line_no, raw.rstrip('\r\n'))
            try:
                values[int(parts[0])] = float(parts[1])
            except ValueError:
                raise MalformedLine(line_no, raw.rstrip('\r\n'))
    weights = np.zeros(len(values), dtype=np.float64)
    for node, w in values.items():
        if node >= weights.size:
            raise NodeIdOutOfRange(0, node, weights.size)
        weights[node] = w
    return weights
