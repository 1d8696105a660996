# config/config.py
DEFAULT_CONFIG_PATH = "config/config.yaml"

DEFAULT_REL_TOL = 1e-9
SCAN_EQUALITY_REL_TOL = 1e-6
TOL_ENV_VAR = "NIEP3_TOL"

DEFAULT_GRID_N = 200
DEFAULT_SEED = 0
DEFAULT_TRIALS = 1000
BISECTION_RESOLUTION = 1e-4
MAX_KMAX = 12
DEFAULT_KMAX = 8

CLASS_LABELS = {
    "General": "general",
    "Symmetric": "symmetric",
    "Stochastic": "stochastic",
    "SymmetricStochastic": "symmetric-stochastic",
    "DoublyStochastic": "doubly-stochastic",
}

LOG_LEVEL = "INFO"
LOG_FILE = "data/logs/niep3.log"

CSV_FLOAT_FORMAT = "%.17g"
SWEEP_DEFAULT_GRID = 100
