#!/usr/bin/env python3
"""
Desk-scale reproduction runs (slow): reference bands, power-law rate and the
reproduction script
"""
import pytest

from analytics.rate_tracker import estimate_rate
from experiment_config import load_experiment
from run_reproduction import run_reproduction
from simulation.reference_tables import in_band, reference_band
from simulation.sim_engine import SimulationEngine

pytestmark = pytest.mark.slow


def _out_of_band(rows):
    return [
        f"{r.model} n={r.n} ({r.param1:g}, {r.param2:g}) alpha={r.alpha:g}: {r.mean:.4f} not in {reference_band(r)}"
        for r in rows if in_band(r) is False
    ]


def test_hetero_er_grid():
    report = SimulationEngine(jobs=2).run_experiment(load_experiment('tables123_desk'))
    assert report.ok
    assert len(report.rows) == 3 * 2 * 3 * 6
    assert all(in_band(r) is not None for r in report.rows)
    assert _out_of_band(report.rows) == []


def test_power_law_grid():
    report = SimulationEngine(jobs=2).run_experiment(load_experiment('table4_desk'))
    assert report.ok
    assert len(report.rows) == 3 * 4 * 3
    assert _out_of_band(report.rows) == []


def test_power_law_rate():
    report = SimulationEngine(jobs=2).run_experiment(load_experiment('powerlaw_rate'))
    rows = sorted(report.rows, key=lambda r: r.n)
    assert [r.n for r in rows] == [500, 1000, 2000, 10000]
    gaps = [1.0 - r.mean for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    slope = estimate_rate([(r.n, g) for r, g in zip(rows, gaps)]).slope
    assert -0.40 <= slope <= -0.10


def test_reproduction_script(capsys):
    assert run_reproduction('table1_small', jobs=2)
    out = capsys.readouterr().out
    assert 'REFERENCE COMPARISON' in out
    assert '24/24 rows within the reference band' in out
