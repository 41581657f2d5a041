"""Cycle counting in graphs through spectral power sums.

Exact triangle and cycle counts, the edge-count bounds that follow from
maximising sum(x_i^p) over unit vectors with zero coordinate sum, the
closed-form maximisers themselves, Newton's identities in exact arithmetic,
and exhaustive checks over small labeled graphs.
"""

__version__ = "0.1.0"

from .bounds import (
    M,
    S_even,
    bound_report,
    cycle_bound_naive,
    cycle_bound_sharp,
    triangle_bound_naive,
    triangle_bound_sharp,
)
from .cycles import closed_walk_classes, count_simple_cycles, count_triangles, walk_cycle_gap
from .graph import Graph, complete, enumerate_graphs, from_edge_list, parse_edge_list
from .powersum import (
    PowerSumProblem,
    exceptional_set,
    extremal_point,
    g_threshold,
    numeric_maximize,
    two_level_solutions,
)
from .spectral import adjacency_spectrum, spectral_trace, trace_power
