"""
APUnroll Configuration

Result-affecting limits are plain constants (override them with CLI flags).
Only operational knobs that never change a result read the environment.
"""
import os
from pathlib import Path

# Load .env at import time
try:
    from dotenv import load_dotenv
    _env_path = Path(__file__).parent.parent / ".env"
    if _env_path.exists():
        load_dotenv(_env_path)
except ImportError:
    pass

# Base Paths
PROJECT_ROOT = Path(__file__).parent.parent

# Logging
LOG_LEVEL = os.environ.get("APUNROLL_LOG_LEVEL", "WARNING").upper()

# Worker pool
DEFAULT_JOBS = 1

# Vectorized verification: (d, a) cells evaluated per numpy block
VERIFY_CHUNK_CELLS = int(os.environ.get("APUNROLL_VERIFY_CHUNK", str(1 << 20)))
# Line counting: common differences per work item
COUNT_CHUNK_D = int(os.environ.get("APUNROLL_COUNT_CHUNK", "2048"))

# Exhaustive Z_m enumeration: refuse when r^(m-1) exceeds this
ENUMERATION_BUDGET = 10**8

# periodic_coefficient enumerates m^2 classes
PERIODIC_MAX_MODULUS = 10**4

# Best-known moduli checks
TABLE_DEFAULT_LIMIT = 50000
BRUTE_CONFIRM_LIMIT = 25000

# Line colorings are materialized one byte per cell, positions decoded in chunks
LINE_MAX_N = 2_000_000_000
MATERIALIZE_CHUNK = 1 << 16
INT64_MAX = (1 << 63) - 1

# Exhaustive averaging oracle enumerates r^n colorings
EXHAUSTIVE_AVERAGE_MAX_COLORINGS = 1 << 20

# Twelve-block two-coloring of [n] for 3-APs
BLOCK_SIZES_3AP = (28, 6, 28, 37, 59, 116, 116, 59, 37, 28, 6, 28)
