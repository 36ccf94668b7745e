#!/usr/bin/env python3
"""
Run Reproduction - run a bundled experiment grid and compare every row with
the reference simulation tables
"""
import os
import sys

from loguru import logger

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from experiment_config import list_bundled_configs, load_experiment
from simulation.reference_tables import PRINTED_LIMITS, reference_band, reference_stats
from simulation.sim_engine import SimulationEngine, print_results


def run_reproduction(name: str = 'table1_small', jobs: int = 1) -> bool:
    """
    Run one bundled grid and print mean vs reference per row

    Returns:
        True when every row with a reference cell lands in its band
    """
    print("\n" + "=" * 60)
    print(f"RENYI INDEX REPRODUCTION - {name}")
    print("=" * 60 + "\n")

    experiment = load_experiment(name)
    print(f"Cells: {len(experiment.cells)}")
    print(f"Replicates: {experiment.replicates}")
    print(f"Master seed: {experiment.master_seed}")
    print()

    report = SimulationEngine(jobs).run_experiment(experiment)
    print_results(report.rows)

    print("=" * 88)
    print("REFERENCE COMPARISON")
    print("=" * 88)
    print(f"{'model':<16}{'n':>7}{'param1':>9}{'param2':>9}{'alpha':>7}{'mean':>9}{'ref':>9}{'band':>18}  ok")
    print("-" * 88)

    checked = 0
    in_band = 0
    for row in report.rows:
        stats = reference_stats(row)
        band = reference_band(row)
        if stats is None:
            continue
        ok = band[0] <= row.mean <= band[1]
        checked += 1
        in_band += ok
        print(
            f"{row.model:<16}{row.n:>7}{row.param1:>9g}{row.param2:>9g}{row.alpha:>7g}"
            f"{row.mean:>9.4f}{stats[0]:>9.4f}   [{band[0]:.4f}, {band[1]:.4f}]  {'✓' if ok else '✗'}"
        )
        printed = PRINTED_LIMITS.get((row.param2, row.alpha))
        if row.model == 'hetero-er-exp' and printed is not None and abs(row.limit - printed) > 0.002:
            logger.warning(f"⚠️ Limit {row.limit:.4f} differs from reference {printed:.3f}")

    print("=" * 88 + "\n")
    print(f"📊 {in_band}/{checked} rows within the reference band")
    if report.redraws:
        print(f"🔁 {sum(report.redraws.values())} edgeless graph(s) redrawn in {len(report.redraws)} cell(s)")
    for failure in report.failures:
        print(f"❌ {failure}")
    return in_band == checked and not report.failures


if __name__ == '__main__':
    name = sys.argv[1] if len(sys.argv) > 1 else 'table1_small'
    jobs = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    if name not in list_bundled_configs():
        print(f"Unknown grid {name!r}; choose one of {', '.join(list_bundled_configs())}")
        sys.exit(2)
    try:
        sys.exit(0 if run_reproduction(name, jobs) else 1)
    except KeyboardInterrupt:
        print("\n\n⚠️  Reproduction interrupted by user")
    except Exception as e:
        logger.error(f"Reproduction error: {e}")
        import traceback
        traceback.print_exc()
