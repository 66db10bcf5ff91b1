"""Constants for QaoaBench."""

# Capacity guards
MAX_BRUTE_FORCE_NODES = 30
MAX_EMULATOR_QUBITS = 24
MAX_EMULATOR_QUBITS_WITH_ANCILLA = 25

# Brute-force enumeration block size (assignments per chunk)
BRUTE_FORCE_CHUNK = 1 << 20

# Graph generation
REGULAR_DEGREE = 3
MAX_PAIRING_ATTEMPTS = 100_000

# Optimization methods
METHOD_NM = "nm"
METHOD_FD = "fd"
METHOD_AG = "ag"
METHOD_TAGS = (METHOD_NM, METHOD_FD, METHOD_AG)

# Precision presets from the depth-7 comparison: (method, epsilon, delta, epsilon_ag)
PRECISION_PRESETS = {
    "nm-0.1": (METHOD_NM, 0.1, 0.1, 0.1),
    "nm-0.01": (METHOD_NM, 0.01, 0.1, 0.1),
    "fd-0.1-0.1": (METHOD_FD, 0.1, 0.1, 0.1),
    "fd-0.01-0.1": (METHOD_FD, 0.01, 0.1, 0.1),
    "fd-0.01-0.01": (METHOD_FD, 0.01, 0.01, 0.1),
    "ag-0.1-0.1": (METHOD_AG, 0.1, 0.1, 0.1),
    "ag-0.01-0.1": (METHOD_AG, 0.01, 0.1, 0.1),
}

# Parameter ranges for initial points and canonical reporting
GAMMA_PERIOD = 6.283185307179586
BETA_PERIOD = 3.141592653589793

# Trace event tags
EVENT_VERTEX_UPDATE = "vertex-update"
EVENT_LINE_SEARCH_START = "line-search-start"
EVENT_LINE_SEARCH_END = "line-search-end"
EVENT_STOP_REASON = "stop-reason"

# Output layout
INSTANCES_DIR = "instances"
CURVES_DIR = "curves"
RUNS_FILE = "runs.jsonl"
SUMMARY_FILE = "summary.csv"
LOG_FILE = "qaoabench.log"
INSTANCE_FILE_PATTERN = "instance_{instance_id:04d}.json"

# Log levels accepted by the config loader
LOG_LEVELS = ["debug", "info", "warning", "error", "critical"]
