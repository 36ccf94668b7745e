"""
Renyi Heterogeneity Toolkit Configuration
"""
import os
from dotenv import load_dotenv
from loguru import logger

# Load environment variables
load_dotenv()

# ====================
# ENVIRONMENT SETTINGS
# ====================
ENVIRONMENT = os.getenv('ENVIRONMENT', 'development')
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

# ====================
# LOGGING SETTINGS
# ====================
LOG_DIR = os.getenv('LOG_DIR', 'logs')
LOG_FILE = 'renyi_toolkit.log'
LOG_TO_FILE = os.getenv('LOG_TO_FILE', 'False').lower() == 'true'
LOG_ROTATION = os.getenv('LOG_ROTATION', '50 MB')
LOG_RETENTION = os.getenv('LOG_RETENTION', '10 days')

# ====================
# SIMULATION DEFAULTS
# ====================
DEFAULT_REPLICATES = int(os.getenv('DEFAULT_REPLICATES', 20))  # graphs per cell
DEFAULT_MASTER_SEED = int(os.getenv('DEFAULT_MASTER_SEED', 20240601))
DEFAULT_JOBS = int(os.getenv('DEFAULT_JOBS', 1))  # worker processes for simulate
CONFIG_DIR = os.getenv(
    'CONFIG_DIR',
    os.path.join(os.path.dirname(os.path.abspath(__file__)), 'configs')
)

# ====================
# NUMERICS
# ====================
THEIL_BRANCH_TOLERANCE = 1e-9  # |alpha - 1| at or below this uses the Theil branch
LOG_SPACE_ALPHA = 50.0  # powers of degree ratios go through log space above this alpha
SIGNIFICANT_DIGITS = 6  # summary CSV / JSON precision

# ====================
# MODEL RANGES
# ====================
POWER_LAW_TAU_RANGE = (1.0, 2.0)  # open interval
MAX_DENSE_N = 20000  # O(n^2) pair sampling above this is refused
MAX_EMPTY_REDRAWS = int(os.getenv('MAX_EMPTY_REDRAWS', 100))  # edgeless replicates redrawn before a cell fails


# ====================
# SAFETY CHECKS
# ====================
def validate_config():
    """Validate configuration settings"""
    errors = []
    warnings = []

    if DEFAULT_REPLICATES < 2:
        errors.append("DEFAULT_REPLICATES must be at least 2 (sample sd needs R-1 > 0)")
    elif DEFAULT_REPLICATES < 20:
        warnings.append(f"DEFAULT_REPLICATES={DEFAULT_REPLICATES} is below the 20-graph protocol")

    if DEFAULT_JOBS < 1:
        errors.append("DEFAULT_JOBS must be at least 1")

    if DEFAULT_MASTER_SEED < 0 or DEFAULT_MASTER_SEED >= 2 ** 64:
        errors.append("DEFAULT_MASTER_SEED must fit in an unsigned 64-bit integer")

    if MAX_EMPTY_REDRAWS < 0:
        errors.append("MAX_EMPTY_REDRAWS must be >= 0")

    if LOG_LEVEL.upper() not in ('TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL'):
        errors.append(f"Unknown LOG_LEVEL {LOG_LEVEL!r}")

    if not os.path.isdir(CONFIG_DIR):
        warnings.append(f"CONFIG_DIR {CONFIG_DIR} does not exist - bundled configs unavailable")

    # Print warnings
    for warning in warnings:
        logger.warning(f"Config Warning: {warning}")

    # Print and raise errors
    if errors:
        for error in errors:
            logger.error(f"Config Error: {error}")
        raise ValueError("Configuration validation failed - see errors above")

    return True


# Run validation
if __name__ == '__main__':
    validate_config()
    print("Configuration validated successfully")
