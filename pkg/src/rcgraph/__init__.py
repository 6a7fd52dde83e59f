"""Rainbow connection toolkit for dense graphs.

Exact rainbow connection numbers on small graphs by canonical brute force,
constructive 2/3/4-colorings above the known edge-density thresholds, the
threshold function itself with sharpness-witness search, and exhaustive
sweeps that stress-test all of it.
"""

from ._kernels import backend_name
from .colorer import (BASE_CAP, CaseTag, ColoringResult, ReductionStep,
                      color_rc2, color_rc3, color_rc4, fallback_exact,
                      reduce_min_degree)
from .errors import (BudgetExceededError, CapReachedError, DisconnectedError,
                     InputError, PreconditionNotMet, ProofGap, RcGraphError,
                     StructuralError)
from .exact import (RcCertificate, enumerate_colorings, rc_exact, rc_exceeds,
                    rc_lower_bound)
from .formats import emit_dot, emit_edge_list, emit_json, parse_edge_list
from .generators import generate
from .graph import (Graph, complement_neighborhood, components, delete_edges,
                    delete_vertex, diameter, distance, induced, is_connected,
                    k_step_neighborhood, make_graph, min_degree_vertex)
from .thresholds import (SearchReport, ThresholdEntry, connected_graph_stream,
                         exhaustive_verify, f_threshold, lollipop,
                         sharpness_witness)
from .verify import (EdgeColoring, RainbowWitness, is_rainbow_connected,
                     rainbow_path_exists, rainbow_witness)

__version__ = "0.1.0"

__all__ = [
    "BASE_CAP", "BudgetExceededError", "CapReachedError", "CaseTag",
    "ColoringResult", "DisconnectedError", "EdgeColoring", "Graph",
    "InputError", "PreconditionNotMet", "ProofGap", "RainbowWitness",
    "RcCertificate", "RcGraphError", "ReductionStep", "SearchReport",
    "StructuralError", "ThresholdEntry", "backend_name",
    "color_rc2", "color_rc3", "color_rc4", "complement_neighborhood",
    "components", "connected_graph_stream", "delete_edges", "delete_vertex",
    "diameter", "distance", "emit_dot", "emit_edge_list", "emit_json",
    "enumerate_colorings", "exhaustive_verify", "f_threshold",
    "fallback_exact", "generate", "induced", "is_connected",
    "is_rainbow_connected", "k_step_neighborhood", "lollipop", "make_graph",
    "min_degree_vertex", "parse_edge_list", "rainbow_path_exists",
    "rainbow_witness", "rc_exact", "rc_exceeds", "rc_lower_bound",
    "reduce_min_degree", "sharpness_witness",
]
