from src.opcalc import __version__

TOOL_VERSION = __version__
REPORT_SCHEMA_VERSION = 1

DEFAULT_RING = "curve-cohomology"
CHOW_RING = "curve-chow"
RING_KEYS = (DEFAULT_RING, CHOW_RING)
DEFAULT_GENUS = 2

# 各套件的默认范围
DEFAULT_MAX_INDEX = 4
DEFAULT_HV_TOTAL = 4
DEFAULT_DIVIDED_INDEX = 3
DEFAULT_DIVIDED_POWER = 3
DEFAULT_CONFLUENCE_TRIALS = 10_000
DEFAULT_FOCK_WEIGHT = 8
DEFAULT_WITT_GENUS = 4
DEFAULT_WITT_GENERATORS = 3
DEFAULT_WITT_INDEX = 4
DEFAULT_PONTRYAGIN_POWER = 6
DEFAULT_TAUT_INDEX = 3
DEFAULT_TAUT_WEIGHT = 5
DEFAULT_T_WEIGHT = 4
DEFAULT_X_INDEX = 4
DEFAULT_FOURIER_TOTAL = 5
DEFAULT_TAU_K = 4
DEFAULT_MAX_GENUS = 3
DEFAULT_SEED = 20240501

SUITES = (
    "jacobi",
    "hv",
    "pbw",
    "divided",
    "heisenberg",
    "fock-sl2",
    "witt",
    "taut-homomorphism",
    "t-relations",
    "x-equivalence",
    "x-sl2",
    "tau-pullback",
    "gross-schoen",
    "ring",
    "combinat",
    "modules",
    "lefschetz",
    "collino",
)

ALL_SUITE = "all"
