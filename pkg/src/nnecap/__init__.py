"""Bounds on the zero-error capacity of (d, n) nearest-neighbour-error channels."""
from .core import Symbol, ZqVector, l1_distance, lee_abs, lee_distance, psi
from .graph import (ChannelModel, ConfusionGraph, build_channel, build_confusion_graph,
                    export_dimacs, graph_power, nne_graph, read_dimacs, strong_product)
from .lee import (LeeCode, WindowSet, construct_pl, exists_pl, extract_window, lee_sphere,
                  verify_perfect, window_at)
from .solver import (LpProblem, max_independent_set, maximal_cliques, solve_clique_cover_lp,
                     verify_feasible)
from .bounds import (BoundReport, asymptotic_gap, capacity_bracket, classify_vertex,
                     lemma5_assignment, lower_bound_closed, upper_bound_closed)
from .codec import ZeroErrorCode, decode, encode, transmit

__version__ = "0.1.0"
