"""
Error types for the Renyi heterogeneity toolkit
All errors derive from ValueError so callers that already guard on
ValueError keep working.
"""
from typing import Optional


class RenyiToolkitError(ValueError):
    """Base class for every error raised by the toolkit"""


# ====================
# INDEX
# ====================

class AllZeroWeights(RenyiToolkitError):
    """Every weight is zero, so the mean is zero and the index is undefined"""


class NonPositiveAlpha(RenyiToolkitError):
    """alpha must be a finite positive number"""


class NegativeWeight(RenyiToolkitError):
    """A weight (degree) below zero was supplied"""


# ====================
# GRAPHS
# ====================

class MalformedLine(RenyiToolkitError):
    """An edge-list line could not be parsed as 'u v'"""

    def __init__(self, line_no: int, line: str = ''):
        self.line_no = line_no
        self.line = line
        super().__init__(f"Malformed edge-list line {line_no}: {line!r}")


class NodeIdOutOfRange(RenyiToolkitError):
    """A node id exceeds the declared node count"""

    def __init__(self, line_no: int, node: int, n: int):
        self.line_no = line_no
        self.node = node
        self.n = n
        super().__init__(f"Node id {node} on line {line_no} is out of range for n={n}")


# ====================
# KERNELS / MODELS
# ====================

class KernelDomainError(RenyiToolkitError):
    """Kernel evaluated outside [0,1]^2"""


class GridIndexOutOfRange(RenyiToolkitError):
    """Grid index outside 1..n"""


class InvalidModelParameter(RenyiToolkitError):
    """A random-graph model parameter is outside its valid range"""


class KEqualsTau(RenyiToolkitError):
    """The truncated Pareto moment formula has a pole at k == tau"""


# ====================
# SIMULATION / ANALYTICS
# ====================

class DegenerateFit(RenyiToolkitError):
    """Log-log regression is undefined (all n equal)"""


class InsufficientPoints(RenyiToolkitError):
    """Fewer than three points were supplied to the rate estimator"""


class CellFailure(RenyiToolkitError):
    """A simulation cell could not be completed"""

    def __init__(self, cell_id: str, reason: str):
        self.cell_id = cell_id
        self.reason = reason
        super().__init__(f"Cell {cell_id} failed: {reason}")


class ConfigSchemaError(RenyiToolkitError):
    """An experiment config document violates the schema"""

    def __init__(self, key_path: str, message: str, source: Optional[str] = None):
        self.key_path = key_path
        self.message = message
        self.source = source
        where = f"{source}: " if source else ''
        super().__init__(f"{where}{key_path}: {message}")
