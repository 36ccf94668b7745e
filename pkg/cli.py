"""
Command-line interface

    renyi-toolkit compute  --graph G.txt --alpha 0.5,1,2
    renyi-toolkit generate --model hetero-er --n 500 --p 0.1 --kappa 4 --out G.txt
    renyi-toolkit limits   --kernel exp --kappa 4 --alpha 0.5,1,2 [--n 1000]
    renyi-toolkit limits   --powerlaw --tau 1.5 --n 10000 [--p 0.25]
    renyi-toolkit simulate --config table1_small --out summary.csv [--jobs 4]
    renyi-toolkit rate     --summary summary.csv [--group model,param1,param2,alpha]

Exit codes: 0 ok, 2 usage / config / parse error, 3 all-zero degrees,
4 some simulation cells failed.
"""
import argparse
import sys
from typing import List, Optional

from loguru import logger

import config
from analytics.rate_tracker import DEFAULT_GROUP_KEYS, group_rates, rate_table
from asymptotics import (
    expected_degree_powerlaw,
    limit_exponential,
    limit_r1_exponential,
    plugin_prediction,
    plugin_r1,
    powerlaw_gap_rate,
)
from errors import AllZeroWeights, RenyiToolkitError
from experiment_config import list_bundled_configs, load_experiment
from generators import (
    HeteroErConfig,
    PowerLawConfig,
    SeedSpec,
    sample_hetero_er,
    sample_power_law_graph,
)
from graph_core import degree_sequence, mean_degree, read_edge_list, write_edge_list, write_weights
from kernels import ConstantKernel, ExponentialProductKernel
from renyi_index import degree_renyi_profile
from simulation.sim_engine import SimulationEngine, print_results
from simulation.summary_store import FORMATS, read_summary, write_summary

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_CELL_FAILURE = 4

PLUGIN_HEADER = 'plugin (unclamped)'


def _alpha_list(text: str) -> List[float]:
    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one alpha")
    return values


def _key_list(text: str) -> List[str]:
    keys = [part.strip() for part in text.split(',') if part.strip()]
    if not keys:
        raise argparse.ArgumentTypeError("expected at least one group key")
    return keys


def _kernel(args):
    if args.kernel == 'constant':
        return ConstantKernel(args.c)
    return ExponentialProductKernel(args.kappa)


# ====================
# SUBCOMMANDS
# ====================

def cmd_compute(args) -> int:
    graph = read_edge_list(args.graph)
    profile = degree_renyi_profile(graph, args.alpha)
    print("alpha,index")
    for alpha, value in profile:
        print(f"{alpha:g},{value:.6g}")
    return EXIT_OK


def cmd_generate(args) -> int:
    seed = SeedSpec(master_seed=args.seed, cell_id='generate', replicate=0)
    if args.model == 'hetero-er':
        graph = sample_hetero_er(HeteroErConfig(n=args.n, p_n=args.p, kernel=_kernel(args)), seed)
        weights = None
    else:
        if args.tau is None:
            raise RenyiToolkitError("--tau is required for --model power-law")
        graph, weights = sample_power_law_graph(PowerLawConfig(n=args.n, tau=args.tau, p=args.p), seed)

    write_edge_list(graph, args.out)
    if weights is not None:
        write_weights(weights, args.weights_out or args.out + '.weights')

    print(f"n={graph.n} edges={graph.num_edges} mean_degree={mean_degree(degree_sequence(graph)):.6g}",
          file=sys.stderr)
    return EXIT_OK


def cmd_limits(args) -> int:
    if args.powerlaw:
        if args.tau is None or args.n is None:
            raise RenyiToolkitError("--powerlaw needs --tau and --n")
        rate = powerlaw_gap_rate(args.n, args.tau)
        if args.p is None:
            print("tau,n,rate")
            print(f"{args.tau:g},{args.n},{rate:.6g}")
        else:
            print("tau,n,rate,expected_degree")
            print(f"{args.tau:g},{args.n},{rate:.6g},{expected_degree_powerlaw(args.tau, args.p):.6g}")
        return EXIT_OK

    kernel = _kernel(args)
    alphas = args.alpha or [0.5, 1.0, 2.0]
    header = ['alpha', 'limit'] + ([PLUGIN_HEADER] if args.n is not None else [])
    print(','.join(header))
    for alpha in alphas:
        theil = abs(alpha - 1.0) <= config.THEIL_BRANCH_TOLERANCE
        if args.kernel == 'constant':
            limit = 0.0
        elif theil:
            limit = limit_r1_exponential(kernel.kappa)
        else:
            limit = limit_exponential(alpha, kernel.kappa)
        cells = [f"{alpha:g}", f"{limit:.6g}"]
        if args.n is not None:
            plugin = plugin_r1(kernel, args.n) if theil else plugin_prediction(kernel, args.n, alpha)
            cells.append(f"{plugin:.6g}")
        print(','.join(cells))
    return EXIT_OK


def cmd_simulate(args) -> int:
    experiment = load_experiment(args.config)
    fmt = args.format or ('json' if args.out.lower().endswith('.json') else 'csv')
    report = SimulationEngine(args.jobs).run_experiment(experiment)
    write_summary(report.rows, fmt, args.out)
    if not args.quiet:
        print_results(report.rows, title=f"SIMULATION RESULTS - {experiment.name or args.config}")
    for failure in report.failures:
        logger.error(f"Cell {failure.cell_id}: {failure.reason}")
    return EXIT_CELL_FAILURE if report.failures else EXIT_OK


def cmd_rate(args) -> int:
    rows = read_summary(args.summary)
    estimates = group_rates(rows, args.group)
    sys.stdout.write(rate_table(estimates, args.group))
    return EXIT_OK


# ====================
# PARSER
# ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='renyi-toolkit',
        description='Renyi-index heterogeneity of random graph degree sequences',
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('compute', help='Renyi index of an edge-list file', allow_abbrev=False)
    p.add_argument('--graph', required=True, help='edge-list file ("u v" per line, optional "# n=N" header)')
    p.add_argument('--alpha', type=_alpha_list, default=[0.5, 1.0, 2.0],
                   help='comma-separated index orders, each finite and > 0 (default 0.5,1,2)')
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser('generate', help='sample a random graph to an edge-list file', allow_abbrev=False)
    p.add_argument('--model', required=True, choices=['hetero-er', 'power-law'], help='random graph model')
    p.add_argument('--n', type=int, required=True, help=f'number of nodes, 2..{config.MAX_DENSE_N}')
    p.add_argument('--p', type=float, required=True,
                   help='edge density: p_n in [0, 1] for hetero-er, p in (0, 1) for power-law')
    p.add_argument('--kernel', choices=['exp', 'constant'], default='exp',
                   help='hetero-er kernel: exp(-kappa x) exp(-kappa y) or constant c (default exp)')
    p.add_argument('--kappa', type=float, default=0.0, help='exp kernel decay, >= 0 (default 0)')
    p.add_argument('--c', type=float, default=1.0, help='constant kernel value in (0, 1] (default 1)')
    p.add_argument('--tau', type=float, help='power-law tail exponent in (1, 2)')
    p.add_argument('--seed', type=int, default=config.DEFAULT_MASTER_SEED,
                   help=f'master seed, unsigned 64-bit (default {config.DEFAULT_MASTER_SEED})')
    p.add_argument('--out', required=True, help='edge-list output path')
    p.add_argument('--weights-out', help='power-law weights sidecar path (default <out>.weights)')
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser('limits', help='theoretical limits, plug-in values and rates', allow_abbrev=False)
    p.add_argument('--kernel', choices=['exp', 'constant'], default='exp', help='hetero-er kernel (default exp)')
    p.add_argument('--kappa', type=float, default=0.0, help='exp kernel decay, >= 0 (default 0)')
    p.add_argument('--c', type=float, default=1.0, help='constant kernel value in (0, 1] (default 1)')
    p.add_argument('--alpha', type=_alpha_list, help='comma-separated index orders > 0 (default 0.5,1,2)')
    p.add_argument('--n', type=int, help='graph size: adds the finite-n plug-in column, or the power-law rate n')
    p.add_argument('--powerlaw', action='store_true', help='print the power-law gap rate n^(tau/2-1)')
    p.add_argument('--tau', type=float, help='power-law tail exponent in (1, 2)')
    p.add_argument('--p', type=float, help='power-law edge density in (0, 1): adds the expected degree')
    p.set_defaults(handler=cmd_limits)

    p = sub.add_parser('simulate', help='run a replicated experiment grid', allow_abbrev=False)
    p.add_argument('--config', required=True,
                   help=f"bundled name ({', '.join(list_bundled_configs())}) or JSON config path")
    p.add_argument('--out', required=True, help='summary output path')
    p.add_argument('--format', choices=list(FORMATS), help='summary format (default from --out extension, else csv)')
    p.add_argument('--jobs', type=int, default=config.DEFAULT_JOBS,
                   help=f'parallel workers, >= 1 (default {config.DEFAULT_JOBS}); output does not depend on it')
    p.add_argument('--quiet', action='store_true', help='skip the results table on stdout')
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser('rate', help='log-log convergence rate per group of a summary', allow_abbrev=False)
    p.add_argument('--summary', required=True, help='summary CSV or JSON written by simulate')
    p.add_argument('--group', type=_key_list, default=list(DEFAULT_GROUP_KEYS),
                   help='comma-separated summary columns defining a group (default model,param1,param2,alpha)')
    p.set_defaults(handler=cmd_rate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return args.handler(args)
    except AllZeroWeights as e:
        logger.error(f"❌ {e}")
        return EXIT_DEGENERATE
    except RenyiToolkitError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
