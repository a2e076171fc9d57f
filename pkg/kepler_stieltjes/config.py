import importlib.metadata
import logging
import os
from pathlib import Path

import dotenv
import toml

dotenv.load_dotenv()

#######################################################################
### App metadata
#######################################################################

APP_NAME = "kepler_stieltjes"  # redundant with pyproject.name
APP_DESCRIPTION = "Kepler equation through the Bessel-Kapteyn series and its Stieltjes representation"

try:
    APP_VERSION = importlib.metadata.version(APP_NAME)
except importlib.metadata.PackageNotFoundError:
    logging.warning(f"Package {APP_NAME} is not installed.")
    APP_VERSION = "0.0"


#######################################################################
### Commons
#######################################################################

ENV = os.getenv("ENV", "dev")
assert ENV in ["unittest", "dev", "prod"], "wrong ENV value"

# Runners
MAX_WORKERS = int(os.getenv("KS_MAX_WORKERS", "8"))

#######################################################################
### Numerics
#######################################################################

# Kepler oracle
KEPLER_TOL = 1e-13
KEPLER_MAX_ITER = 200

# Quadrature
PANEL_BUDGET = int(os.getenv("KS_PANEL_BUDGET", "10000"))
QUAD_TOL_ABS = 1e-13
QUAD_TOL_REL = 1e-12
EXP_UNDERFLOW = -745.0  # exp() of anything below is 0 in double precision

# Series and transformations
BREAKDOWN_GUARD = 1e-300
SERIES_MAX_ORDER = 20000
WENIGER_BETA = 1.0
# Working precision (decimal digits) of the Kapteyn terms and of the epsilon and delta tables
RESUM_DPS = int(os.getenv("KS_RESUM_DPS", "60"))
LOG_OVERFLOW = 709.78  # log(max double)

# Precision knob (CLI) -> quadrature tolerances
PRECISION_LEVELS_PATH = Path(__file__).parent / "config" / "precision_levels.toml"


def load_precision_levels() -> dict[int, dict]:
    with open(PRECISION_LEVELS_PATH, "r", encoding="utf-8") as f:
        config = toml.load(f)
    return {int(level): params for level, params in config["levels"].items()}


PRECISION_LEVELS = load_precision_levels()
DEFAULT_PRECISION = 15


#######################################################################
### Environment specific
#######################################################################

if ENV == "unittest":
    # Verify suites run on reduced grids
    VERIFY_SCALE = 0.25
    MAX_WORKERS = min(MAX_WORKERS, 2)
elif ENV == "dev":
    VERIFY_SCALE = 1.0
else:
    VERIFY_SCALE = 1.0
