"""
Summary Store - CSV / JSON persistence of simulation summary rows
"""
import json
import math
import os
from typing import List, Optional

import pandas as pd
from loguru import logger

import config
from errors import RenyiToolkitError
from simulation.sim_engine import SummaryRow

SUMMARY_COLUMNS = [
    'model', 'n', 'param1', 'param2', 'alpha', 'replicates',
    'mean', 'sd', 'limit', 'plugin', 'abs_gap',
]
FORMATS = ('csv', 'json')


def _round_sig(value: Optional[float], digits: int = config.SIGNIFICANT_DIGITS) -> Optional[float]:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    return float(f"{float(value):.{digits}g}")


def rows_to_frame(rows: List[SummaryRow]) -> pd.DataFrame:
    """Summary rows as a DataFrame with exactly the summary columns"""
    frame = pd.DataFrame([row.to_record() for row in rows], columns=SUMMARY_COLUMNS)
    frame['n'] = frame['n'].astype('int64')
    frame['replicates'] = frame['replicates'].astype('int64')
    return frame


def format_summary(rows: List[SummaryRow], fmt: str = 'csv') -> str:
    """
    Render rows as CSV or JSON text

    CSV: header + one line per row, 6 significant digits, empty field for an
    absent value, LF endings. JSON: array of objects with the same keys,
    absent values as null.
    """
    if fmt == 'csv':
        return rows_to_frame(rows).to_csv(
            index=False,
            float_format=f"%.{config.SIGNIFICANT_DIGITS}g",
            na_rep='',
            lineterminator='\n',
        )
    if fmt == 'json':
        records = []
        for row in rows:
            record = row.to_record()
            for key in SUMMARY_COLUMNS:
                if key not in ('model', 'n', 'replicates'):
                    record[key] = _round_sig(record[key])
            records.append(record)
        return json.dumps(records, indent=2) + '\n'
    raise RenyiToolkitError(f"unknown summary format {fmt!r} (expected csv or json)")


def write_summary(rows: List[SummaryRow], fmt: str, path: str):
    """Write rows to path; IO errors propagate as OSError"""
    text = format_summary(rows, fmt)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.info(f"💾 Wrote {len(rows)} summary row(s) to {path} ({fmt})")


def _optional(value) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return None if math.isnan(value) else value


def _row_from_record(record: dict) -> SummaryRow:
    return SummaryRow(
        model=str(record['model']),
        n=int(record['n']),
        param1=float(record['param1']),
        param2=float(record['param2']),
        alpha=float(record['alpha']),
        replicates=int(record['replicates']),
        mean=float(record['mean']),
        sd=float(record['sd']),
        limit=_optional(record.get('limit')),
        plugin=_optional(record.get('plugin')),
        abs_gap=_optional(record.get('abs_gap')),
    )


def read_summary(path: str) -> List[SummaryRow]:
    """Load a summary written by write_summary (format from the extension or content)"""
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()

    if path.lower().endswith('.json') or text.lstrip().startswith('['):
        records = json.loads(text)
    else:
        frame = pd.read_csv(path)
        missing = [c for c in SUMMARY_COLUMNS if c not in frame.columns]
        if missing:
            raise RenyiToolkitError(f"{path}: summary is missing column(s) {', '.join(missing)}")
        records = frame.to_dict(orient='records')

    rows = [_row_from_record(record) for record in records]
    logger.debug(f"📂 Loaded {len(rows)} summary row(s) from {path}")
    return rows
