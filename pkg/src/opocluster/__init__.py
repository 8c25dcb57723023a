"""opocluster: OPO cluster-state synthesis and GKP fault-tolerance thresholds.

The package models a multimode optical parametric oscillator whose
structured pump writes a two-mode-squeezing interaction graph over
spatiospectral modes.  A symmetric eigendecomposition reduces that graph
to the adjacency of the generated cluster state; pruning small weights
recovers path, grid and cubic lattice topologies.  A Monte Carlo decoder
(GKP binning, analog log-likelihood weights, exact minimum-weight perfect
matching) then estimates the squeezing threshold of the measurement-based
surface code carried by the cubic lattice.
"""

from .configio import GraphConfig, format_graph_config, parse_graph_config
from .errors import OpoClusterError
from .hgraph import GMatrix, PmSpec, add_phase_modulation, \
    build_g_downconversion, g_from_edge_file, g_to_edge_file
from .modes import FieldKind, ModeId, ModeSet, PumpComponent, PumpSpec, \
    capacity_estimate, dc_partners, enumerate_modes
from .montecarlo import RatePoint, ThresholdResult, TrialConfig, \
    effective_sigma2, estimate_rate, mix_seed, run_trial, threshold_scan, \
    wilson_interval
from .noise import NoiseParams, r_from_db, sample_displacement, sigma2_fin, \
    sigma2_loss, sigma2_total
from .reduce import AMatrix, ClusterGraph, TopologyClass, TopologyReport, \
    a_from_g, classify_graph, prune, weight_to_db
from .rhg import RhgInstance, build_lattice, logical_parity, \
    syndrome_from_flips
from .decoder import GkpOutcome, MatchingProblem, decode_to_correction, \
    defect_pair_weights, gkp_decode, gkp_decode_array, llr_weight, \
    marginal_flip_probability, mwpm

__all__ = [
    "AMatrix", "ClusterGraph", "FieldKind", "GkpOutcome", "GMatrix",
    "GraphConfig", "MatchingProblem", "ModeId", "ModeSet", "NoiseParams",
    "OpoClusterError", "PmSpec", "PumpComponent", "PumpSpec", "RatePoint",
    "RhgInstance", "ThresholdResult", "TopologyClass", "TopologyReport",
    "TrialConfig", "a_from_g", "add_phase_modulation", "build_g_downconversion",
    "build_lattice", "capacity_estimate", "classify_graph", "dc_partners",
    "decode_to_correction", "defect_pair_weights", "effective_sigma2",
    "enumerate_modes", "estimate_rate", "format_graph_config",
    "g_from_edge_file", "g_to_edge_file", "gkp_decode", "gkp_decode_array",
    "llr_weight", "logical_parity", "marginal_flip_probability", "mix_seed",
    "mwpm", "parse_graph_config",
    "prune", "r_from_db", "run_trial", "sample_displacement", "sigma2_fin",
    "sigma2_loss", "sigma2_total", "syndrome_from_flips", "threshold_scan",
    "weight_to_db", "wilson_interval",
]

__version__ = "0.1.0"
