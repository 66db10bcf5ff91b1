"""Configuration templates for QaoaBench."""

MINIMAL_CONFIG = '''\
# QaoaBench configuration
# Generated by: qaoabench config init
# One key per setting; command-line flags override these values.

nodes: 10             # Even, >= 4
depths: [5]           # Circuit depths p
instances: 20
runs: 16              # Optimization runs per instance
seed: 20180914
out: "results"

methods: ["nm", "fd", "ag"]
epsilon: 0.01         # Objective precision
delta: 0.1            # Finite-difference increment
epsilon_ag: 0.1       # Analytical gradient component precision

# Uncomment to enable features:

# presets: ["nm-0.01", "fd-0.01-0.1", "ag-0.01-0.1"]  # Replaces methods
# exact: true         # Noiseless estimates at one repetition each
# warm_start: true    # Extra run from the padded previous-depth optimum
# workers: 4          # Instances in parallel
'''

FULL_CONFIG = '''\
# QaoaBench full configuration
# Generated by: qaoabench config init --full
# One key per setting; command-line flags override these values.

version: "1.0"

# ============================================================================
# EXPERIMENT
# ============================================================================
nodes: 10                     # Even number of graph nodes, >= 4
depths: [5]                   # Circuit depths p, e.g. [1, 2, 3, 4, 5, 6, 7, 8]
instances: 20                 # Random 3-regular instances N_i
runs: 16                      # Optimization runs per instance N_r
seed: 20180914                # Master seed of every random stream
out: "results"                # Output directory
warm_start: false             # Extra run per depth from the padded previous-depth optimum
workers: 1                    # Processes; 1 runs serially
full_trace: false             # Keep every trace event in runs.jsonl

# ============================================================================
# PRECISION
# ============================================================================
methods: ["nm", "fd", "ag"]   # nm (Nelder-Mead), fd (BFGS + finite differences),
                              # ag (BFGS + analytical gradient)
presets: []                   # nm-0.1, nm-0.01, fd-0.1-0.1, fd-0.01-0.1,
                              # fd-0.01-0.01, ag-0.1-0.1, ag-0.01-0.1
epsilon: 0.01                 # Objective precision
delta: 0.1                    # Finite-difference increment
epsilon_ag: 0.1               # Analytical gradient component precision
exact: false                  # Noiseless estimates, one repetition each

# ============================================================================
# STOPPING RULES
# ============================================================================
nm_alpha: 20                  # Plateau length factor: stop after dim * alpha updates
nm_alpha_halved: 10           # Factor once the latest improvement was small
nm_epsilon_half_threshold: null  # null means epsilon / 2 of the method
nm_max_updates: 8000
bfgs_grad_floor_scale: 0.001  # Gradient floor sqrt(dim) * max(scale, delta^2)
bfgs_improvement_tol: 0.0001
bfgs_min_directions: null     # null means the dimension 2p
bfgs_max_line_searches: 300

# ============================================================================
# LINE SEARCH (backtracking, sufficient increase)
# ============================================================================
line_search_c: 0.0001
line_search_contraction: 0.5
line_search_initial_step: 1.0
line_search_max_backtracks: 30

# ============================================================================
# LOGGING
# ============================================================================
log_level: "info"             # debug, info, warning, error, critical
color_output: true
log_to_file: false            # Write <out>/qaoabench.log during runs
'''


def get_config_template(full: bool = False) -> str:
    """Get configuration template content.

    Args:
        full: If True, return full config with all options.
              If False, return minimal config.

    Returns:
        Configuration template as string.
    """
    return FULL_CONFIG if full else MINIMAL_CONFIG
