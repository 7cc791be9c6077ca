"""Reconstruction over i.i.d. deletion channels.

Exact symbolwise posteriors for single and multiple traces, a smooth
relaxation of maximum likelihood with analytic gradients, heuristic and
baseline reconstructors, channel simulators with exact reference
distributions, brute-force oracles, and a Monte-Carlo benchmark
harness.
"""

from .baselines import bma
from .channel import (
    ChannelConfig,
    joint_trace_distribution,
    likelihood,
    remnant_subset_probs,
    transmit,
    transmit_cascade,
    transmit_remnant,
    transmit_t,
)
from .editgraph import (
    EditGraph,
    build_edit_graph,
    edge_symbol,
    forward_potentials,
    infiltration,
    infiltration_many,
    marked_path_counts,
    path_length_counts,
    reverse_potentials,
)
from .evaluate import (
    ExperimentConfig,
    ResultRow,
    edit_error,
    hamming_error,
    load_config,
    rows_to_csv,
    run_experiment,
)
from .multi_trace import (
    grad_ascent_traces,
    independent_combination,
    ml_exhaustive_traces,
    remnant_posterior,
    smap_exact,
    smap_fast,
    smap_posteriors,
    smap_sequential,
)
from .relaxed import f_decompose, f_gradient, f_tables, f_value, f_value_and_gradient
from .seq_core import binomial_coeff, substitute
from .single_trace import (
    AscentConfig,
    coordinate_switch,
    grad_ascent_single,
    map_single,
    ml_exhaustive,
    posterior_single,
    threshold,
)

__version__ = "0.1.0"
