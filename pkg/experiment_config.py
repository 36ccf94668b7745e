"""
Experiment Configuration
Bundled experiment grids and the JSON schema for user-written ones
"""
import itertools
import json
import math
import os
from typing import Any, Dict, List, Optional

from loguru import logger

import config
from errors import ConfigSchemaError, RenyiToolkitError
from simulation.sim_engine import MODELS, CellConfig, ExperimentConfig

# ============================================
# BUNDLED EXPERIMENTS
# ============================================
# Each name maps to a JSON document under config.CONFIG_DIR

BUNDLED_CONFIGS = {
    'table1_small': {
        'file': 'table1_small.json',
        'description': 'Exponential-kernel hetero-ER, kappa in {0.1, 4, 25}, n in {100, 500}, alpha in {0.5, 1}',
    },
    'table4_small': {
        'file': 'table4_small.json',
        'description': 'Power-law graphs, tau x p grid at n in {500, 1000}, alpha = 2',
    },
    'tables123_desk': {
        'file': 'tables123_desk.json',
        'description': 'Full hetero-ER grid at n <= 2000, six alphas',
    },
    'table4_desk': {
        'file': 'table4_desk.json',
        'description': 'Full power-law grid at n <= 2000',
    },
    'powerlaw_rate': {
        'file': 'powerlaw_rate.json',
        'description': 'tau = 1.5, p = 0.25 over n in {500, 1000, 2000, 10000} for the rate fit',
    },
}

# Per-model keys a cell may carry; list-valued numeric keys expand into a grid
CELL_KEYS = {
    'hetero-er': ('model', 'id', 'kernel', 'n', 'p', 'kappa', 'c', 'alphas', 'replicates'),
    'power-law': ('model', 'id', 'n', 'tau', 'p', 'alphas', 'replicates'),
}
GRID_KEYS = ('n', 'p', 'kappa', 'c', 'tau')
TOP_LEVEL_KEYS = ('name', 'description', 'master_seed', 'replicates', 'cells')


def get_bundled_config_path(name: str) -> Optional[str]:
    entry = BUNDLED_CONFIGS.get(name)
    if entry is None:
        return None
    return os.path.join(config.CONFIG_DIR, entry['file'])


def list_bundled_configs() -> List[str]:
    return list(BUNDLED_CONFIGS.keys())


# ============================================
# VALIDATION
# ============================================

def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _values(cell: Dict, key: str, path: str) -> List:
    """Scalar or non-empty list of numbers -> list"""
    raw = cell[key]
    values = raw if isinstance(raw, list) else [raw]
    if not values:
        raise ConfigSchemaError(path, "must not be an empty list")
    for i, v in enumerate(values):
        if not _is_number(v):
            where = f"{path}[{i}]" if isinstance(raw, list) else path
            raise ConfigSchemaError(where, f"expected a number, got {v!r}")
    return values


def _check_range(values: List, path: str, ok, expected: str):
    for i, v in enumerate(values):
        if not ok(v):
            raise ConfigSchemaError(path if len(values) == 1 else f"{path}[{i}]", f"{v!r} outside {expected}")


def _validate_cell(cell: Any, path: str) -> Dict[str, List]:
    """Check one cell; returns the list form of every grid key present"""
    if not isinstance(cell, dict):
        raise ConfigSchemaError(path, "cell must be an object")
    model = cell.get('model')
    if model not in MODELS:
        raise ConfigSchemaError(f"{path}.model", f"expected one of {', '.join(MODELS)}, got {model!r}")

    for key in cell:
        if key not in CELL_KEYS[model]:
            raise ConfigSchemaError(f"{path}.{key}", f"unknown key for model {model}")

    required = ['n', 'p', 'alphas'] + (['tau'] if model == 'power-law' else [])
    kernel = cell.get('kernel', 'exp') if model == 'hetero-er' else None
    if model == 'hetero-er':
        if kernel not in ('exp', 'constant'):
            raise ConfigSchemaError(f"{path}.kernel", f"expected 'exp' or 'constant', got {kernel!r}")
        if kernel == 'exp':
            required.append('kappa')
        elif 'kappa' in cell:
            raise ConfigSchemaError(f"{path}.kappa", "only the exp kernel takes kappa")
        if kernel == 'exp' and 'c' in cell:
            raise ConfigSchemaError(f"{path}.c", "only the constant kernel takes c")
    for key in required:
        if key not in cell:
            raise ConfigSchemaError(f"{path}.{key}", "missing required key")

    grid = {key: _values(cell, key, f"{path}.{key}") for key in cell if key in GRID_KEYS}

    _check_range(grid['n'], f"{path}.n", lambda v: _is_integer(v) and 2 <= v <= config.MAX_DENSE_N,
                 f"integers 2..{config.MAX_DENSE_N}")
    if model == 'hetero-er':
        _check_range(grid['p'], f"{path}.p", lambda v: 0 <= v <= 1, "[0, 1]")
        if 'kappa' in grid:
            _check_range(grid['kappa'], f"{path}.kappa", lambda v: v >= 0, "[0, inf)")
        if 'c' in grid:
            _check_range(grid['c'], f"{path}.c", lambda v: 0 < v <= 1, "(0, 1]")
    else:
        lo, hi = config.POWER_LAW_TAU_RANGE
        _check_range(grid['tau'], f"{path}.tau", lambda v: lo < v < hi, f"({lo:g}, {hi:g})")
        _check_range(grid['p'], f"{path}.p", lambda v: 0 < v < 1, "(0, 1)")

    alphas = cell['alphas']
    if not isinstance(alphas, list) or not alphas:
        raise ConfigSchemaError(f"{path}.alphas", "expected a non-empty list of numbers")
    for i, a in enumerate(alphas):
        if not _is_number(a) or a <= 0:
            raise ConfigSchemaError(f"{path}.alphas[{i}]", f"alpha must be a number > 0, got {a!r}")

    if 'replicates' in cell and not (_is_integer(cell['replicates']) and cell['replicates'] >= 2):
        raise ConfigSchemaError(f"{path}.replicates", f"expected an integer >= 2, got {cell['replicates']!r}")
    if 'id' in cell and not isinstance(cell['id'], str):
        raise ConfigSchemaError(f"{path}.id", "expected a string")
    return grid


def _expand_cell(cell: Dict, grid: Dict[str, List], index: int, replicates: int) -> List[CellConfig]:
    """Cartesian product of the list-valued keys, in document key order"""
    keys = [k for k in cell if k in grid]
    base_id = cell.get('id', f"cells[{index}]")
    cells = []
    for combo in itertools.product(*(grid[k] for k in keys)):
        values = dict(zip(keys, combo))
        cell_id = base_id + '|' + ','.join(f"{k}={values[k]!r}" for k in keys)
        cells.append(CellConfig(
            model=cell['model'],
            n=int(values['n']),
            p=float(values['p']),
            alphas=tuple(float(a) for a in cell['alphas']),
            replicates=int(cell.get('replicates', replicates)),
            kernel_family=cell.get('kernel', 'exp'),
            kappa=float(values['kappa']) if 'kappa' in values else None,
            c=float(values['c']) if 'c' in values else None,
            tau=float(values['tau']) if 'tau' in values else None,
            cell_id=cell_id,
        ))
    return cells


def parse_experiment(document: Any, source: Optional[str] = None) -> ExperimentConfig:
    """
    Validate a decoded experiment document and expand it into cells

    Raises:
        ConfigSchemaError: with the key path of the first violation
    """
    try:
        if not isinstance(document, dict):
            raise ConfigSchemaError('$', "experiment document must be an object")
        for key in document:
            if key not in TOP_LEVEL_KEYS:
                raise ConfigSchemaError(key, "unknown top-level key")

        seed = document.get('master_seed', config.DEFAULT_MASTER_SEED)
        if not _is_integer(seed) or not 0 <= seed < 2 ** 64:
            raise ConfigSchemaError('master_seed', f"expected an unsigned 64-bit integer, got {seed!r}")

        replicates = document.get('replicates', config.DEFAULT_REPLICATES)
        if not _is_integer(replicates) or replicates < 2:
            raise ConfigSchemaError('replicates', f"expected an integer >= 2, got {replicates!r}")

        raw_cells = document.get('cells')
        if not isinstance(raw_cells, list):
            raise ConfigSchemaError('cells', "expected a list of cells")

        cells: List[CellConfig] = []
        for i, cell in enumerate(raw_cells):
            path = f"cells[{i}]"
            grid = _validate_cell(cell, path)
            try:
                cells.extend(_expand_cell(cell, grid, i, replicates))
            except ConfigSchemaError:
                raise
            except RenyiToolkitError as e:
                raise ConfigSchemaError(path, str(e))
    except ConfigSchemaError as e:
        if source and not e.source:
            raise ConfigSchemaError(e.key_path, e.message, source)
        raise

    ids = [c.cell_id for c in cells]
    if len(set(ids)) != len(ids):
        raise ConfigSchemaError('cells', "duplicate cells (give repeated cells distinct ids)", source)

    return ExperimentConfig(
        cells=cells,
        master_seed=int(seed),
        replicates=int(replicates),
        name=str(document.get('name', source or '')),
    )


def load_experiment(name_or_path: str) -> ExperimentConfig:
    """
    Load a bundled experiment by name, or a JSON document by path

    Raises:
        ConfigSchemaError: unreadable file, invalid JSON or schema violation
    """
    path = get_bundled_config_path(name_or_path) or name_or_path
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except FileNotFoundError:
        raise ConfigSchemaError('$', f"no bundled config or file named {name_or_path!r}")
    except json.JSONDecodeError as e:
        raise ConfigSchemaError(f"$ (line {e.lineno}, column {e.colno})", e.msg, path)

    experiment = parse_experiment(document, source=path)
    logger.info(f"📂 Loaded experiment {experiment.name or path}: {len(experiment.cells)} cell(s)")
    return experiment
