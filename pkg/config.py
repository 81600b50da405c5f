import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Field Configuration
DEFAULT_FIELD_ORDER = int(os.getenv("TRELLIS_FIELD", "2"))

# Search Budgets
# TRELLIS_BUDGET, when set, overrides every search budget at once.
_SHARED_BUDGET = os.getenv("TRELLIS_BUDGET")
ENUMERATION_BUDGET = int(_SHARED_BUDGET or os.getenv("ENUMERATION_BUDGET", "65536"))
ISO_SEARCH_BUDGET = int(_SHARED_BUDGET or os.getenv("ISO_SEARCH_BUDGET", "200000"))
ISO_MAX_STATE_DIM = int(os.getenv("ISO_MAX_STATE_DIM", "4"))
VERTEX_BUDGET = int(os.getenv("VERTEX_BUDGET", "4096"))

# Characteristic Generators
TIE_BREAK_POLICIES = ["lex", "normalized"]
DEFAULT_TIE_BREAK = os.getenv("TIE_BREAK", "lex")

# Verification Suites
VERIFY_SUITES = ["paper-examples", "kv-conjecture", "properties"]
DEFAULT_SEED = int(os.getenv("TRELLIS_SEED", "0"))
RANDOM_CODE_COUNT = int(os.getenv("RANDOM_CODE_COUNT", "20"))
RANDOM_CODE_MAX_LENGTH = int(os.getenv("RANDOM_CODE_MAX_LENGTH", "8"))
DEFAULT_JOBS = int(os.getenv("TRELLIS_JOBS", "1"))

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# File Paths
REPORTS_DIR = os.getenv("REPORTS_DIR", "reports")
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"
