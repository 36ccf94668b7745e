"""
Reference Tables - benchmark simulation means and sds (20 graphs per cell)
Used to check reproduction runs: a row is in band when its mean lies within
4 sd / sqrt(20) plus a rounding slack of the reference mean.
"""
import math
from typing import Dict, Optional, Tuple

from simulation.sim_engine import SummaryRow

REFERENCE_REPLICATES = 20
HETERO_ER_SLACK = 0.02
POWER_LAW_SLACK = 0.03

HETERO_ER_ALPHAS = (0.5, 1.0, 2.0, 2.5, 3.0, 10.0)

# ============================================
# HETERO-ER, EXPONENTIAL KERNEL
# ============================================
# n, p, kappa, then (mean, sd) for each alpha in HETERO_ER_ALPHAS
_HETERO_ER_ROWS = [
    (100, 0.1, 0.1, (.0263, .0039), (.0474, .0072), (.0916, .0113), (.1082, .0150), (.1285, .0158), (.2612, .0425)),
    (500, 0.1, 0.1, (.0053, .0003), (.0103, .0005), (.0208, .0014), (.0251, .0019), (.0304, .0021), (.0875, .0059)),
    (2000, 0.1, 0.1, (.0014, .0001), (.0029, .0001), (.0058, .0001), (.0072, .0002), (.0086, .0002), (.0275, .0007)),
    (10000, 0.1, 0.1, (.0004, .0001), (.0009, .0001), (.0018, .0001), (.0022, .0001), (.0027, .0001), (.0091, .0002)),

    (100, 0.1, 4.0, (.6626, .0326), (.7016, .0280), (.7352, .0412), (.7475, .0386), (.7540, .0341), (.8391, .0312)),
    (500, 0.1, 4.0, (.3983, .0115), (.4725, .0098), (.5848, .0111), (.6106, .0099), (.6400, .0090), (.7603, .0171)),
    (2000, 0.1, 4.0, (.2780, .0035), (.4069, .0028), (.5361, .0029), (.5714, .0032), (.5966, .0042), (.7112, .0042)),
    (10000, 0.1, 4.0, (.2444, .0007), (.3861, .0005), (.5212, .0006), (.5569, .0006), (.5820, .0010), (.6896, .0012)),

    (100, 0.1, 25.0, (.9763, .0073), (.9913, .0109), (.9761, .0075), (.9771, .0075), (.9686, .0102), (.9774, .0065)),
    (500, 0.1, 25.0, (.9521, .0072), (.9533, .0080), (.9572, .0064), (.9645, .0054), (.9640, .0079), (.9720, .0064)),
    (2000, 0.1, 25.0, (.9078, .0025), (.9198, .0029), (.9344, .0032), (.9416, .0034), (.9456, .0026), (.9643, .0027)),
    (10000, 0.1, 25.0, (.8523, .0002), (.8992, .0004), (.9235, .0004), (.9300, .0003), (.9338, .0005), (.9537, .0010)),

    (100, 0.5, 0.1, (.0032, .0005), (.0063, .0008), (.0126, .0020), (.0158, .0022), (.0203, .0021), (.0561, .0076)),
    (500, 0.5, 0.1, (.0008, .0001), (.0016, .0001), (.0032, .0001), (.0040, .0003), (.0048, .0003), (.0154, .0008)),
    (2000, 0.5, 0.1, (.0003, .0001), (.0007, .0001), (.0014, .0001), (.0017, .0001), (.0021, .0001), (.0070, .0002)),
    (10000, 0.5, 0.1, (.0002, .0001), (.0004, .0001), (.0009, .0001), (.0011, .0001), (.0014, .0001), (.0047, .0001)),

    (100, 0.5, 4.0, (.4029, .0413), (.4643, .0224), (.5679, .0253), (.6049, .0156), (.6178, .0202), (.7265, .0252)),
    (500, 0.5, 4.0, (.2667, .0076), (.3984, .0065), (.5315, .0051), (.5650, .0057), (.5899, .0042), (.7028, .0066)),
    (2000, 0.5, 4.0, (.2445, .0008), (.3854, .0011), (.5211, .0010), (.5563, .0013), (.5812, .0012), (.6888, .0018)),
    (10000, 0.5, 4.0, (.2394, .0001), (.3817, .0001), (.5187, .0003), (.5542, .0002), (.5795, .0002), (.6847, .0005)),

    (100, 0.5, 25.0, (.9583, .0185), (.9573, .0157), (.958, .0170), (.9612, .0149), (.9618, .0132), (.9661, .0115)),
    (500, 0.5, 25.0, (.9024, .0072), (.9045, .0041), (.931, .0052), (.9347, .0055), (.9394, .0050), (.9585, .0047)),
    (2000, 0.5, 25.0, (.8739, .0025), (.8998, .0013), (.923, .0015), (.9290, .0015), (.9337, .0015), (.9528, .0017)),
    (10000, 0.5, 25.0, (.8443, .0003), (.8932, .0002), (.921, .0001), (.9270, .0002), (.9312, .0001), (.9499, .0003)),
]

# Printed 3-decimal limits per (kappa, alpha)
PRINTED_LIMITS: Dict[Tuple[float, float], float] = {
    (4.0, 0.5): 0.238, (4.0, 1.0): 0.380, (4.0, 2.0): 0.517,
    (4.0, 2.5): 0.553, (4.0, 3.0): 0.578, (4.0, 10.0): 0.683,
    (25.0, 0.5): 0.840, (25.0, 1.0): 0.891, (25.0, 2.0): 0.920,
    (25.0, 2.5): 0.926, (25.0, 3.0): 0.930, (25.0, 10.0): 0.948,
}

# ============================================
# POWER-LAW, alpha = 2
# ============================================
POWER_LAW_TAUS = (1.05, 1.5, 1.95)

# n, p, then (mean, sd) for each tau in POWER_LAW_TAUS
_POWER_LAW_ROWS = [
    (500, 0.01, (.886, .019), (.939, .013), (.961, .011)),
    (500, 0.05, (.744, .017), (.811, .021), (.855, .017)),
    (500, 0.25, (.645, .013), (.656, .025), (.653, .033)),
    (500, 0.95, (.622, .016), (.611, .023), (.541, .044)),

    (1000, 0.01, (.877, .007), (.939, .009), (.961, .008)),
    (1000, 0.05, (.766, .012), (.826, .018), (.855, .018)),
    (1000, 0.25, (.702, .010), (.691, .024), (.671, .026)),
    (1000, 0.95, (.686, .006), (.662, .026), (.549, .064)),

    (2000, 0.01, (.886, .009), (.941, .006), (.964, .006)),
    (2000, 0.05, (.794, .011), (.831, .013), (.858, .013)),
    (2000, 0.25, (.746, .008), (.731, .016), (.692, .028)),
    (2000, 0.95, (.741, .011), (.703, .023), (.606, .032)),

    (10000, 0.01, (.927, .002), (.946, .002), (.964, .002)),
    (10000, 0.05, (.901, .003), (.911, .010), (.903, .010)),
    (10000, 0.25, (.898, .003), (.892, .014), (.851, .020)),
    (10000, 0.95, (.895, .001), (.894, .011), (.825, .043)),
]


def _build_hetero() -> Dict[Tuple[int, float, float, float], Tuple[float, float]]:
    table = {}
    for n, p, kappa, *stats in _HETERO_ER_ROWS:
        for alpha, (mean, sd) in zip(HETERO_ER_ALPHAS, stats):
            table[(n, p, kappa, alpha)] = (mean, sd)
    return table


def _build_power_law() -> Dict[Tuple[int, float, float], Tuple[float, float]]:
    table = {}
    for n, p, *stats in _POWER_LAW_ROWS:
        for tau, (mean, sd) in zip(POWER_LAW_TAUS, stats):
            table[(n, p, tau)] = (mean, sd)
    return table


HETERO_ER_REFERENCE = _build_hetero()
POWER_LAW_REFERENCE = _build_power_law()


def reference_stats(row: SummaryRow) -> Optional[Tuple[float, float]]:
    """(mean, sd) for the matching reference cell, or None"""
    if row.model == 'hetero-er-exp':
        return HETERO_ER_REFERENCE.get((row.n, row.param1, row.param2, row.alpha))
    if row.model == 'power-law' and row.alpha == 2.0:
        return POWER_LAW_REFERENCE.get((row.n, row.param2, row.param1))
    return None


def reference_band(row: SummaryRow) -> Optional[Tuple[float, float]]:
    """
    Acceptance band (lo, hi) for a summary row

    Returns:
        mean +/- (4 sd / sqrt(20) + slack), or None when no reference cell matches
    """
    stats = reference_stats(row)
    if stats is None:
        return None
    mean, sd = stats
    slack = POWER_LAW_SLACK if row.model == 'power-law' else HETERO_ER_SLACK
    half = 4.0 * sd / math.sqrt(REFERENCE_REPLICATES) + slack
    return mean - half, mean + half


def in_band(row: SummaryRow) -> Optional[bool]:
    band = reference_band(row)
    if band is None:
        return None
    return band[0] <= row.mean <= band[1]
