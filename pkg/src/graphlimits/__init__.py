"""Randomly growing dense graphs, their graphon limits, densities and distances."""
from .densities import (
    PatternGraph,
    SizeError,
    expected_tinj_pag,
    hom_count,
    inj_count,
    limit_tinj_pag,
    pattern,
    t_density,
    t_hom_multi,
    t_inj,
    t_kernel_mc,
    t_kernel_quad,
    t_log_closed,
    t_step_exact,
    well_distribution_report,
)
from .distances import (
    CutNormResult,
    OverlayResult,
    cut_distance_graph_kernel,
    cut_distance_graphs,
    cut_norm_exact,
    cut_norm_heuristic,
    dyadic_lower_bound,
    edit_distance,
    rect_integral,
)
from .graphs import Graph, LabeledSample, Multigraph, chessboard, half_graph, petersen
from .growth import (
    edge_prob_oracle,
    grow_homogeneous,
    grow_pag,
    grow_prefix,
    grow_prescribed,
    grow_ranked,
    grow_spag,
    grow_uniform,
    pag_multigraph_probability,
    sample_w_random,
    simplify_pag,
    weighted_h,
)
from .kernels import (
    BuiltinGraphon,
    Kernel,
    StepGraphon,
    builtin_kernel,
    flatten_2d,
    reorder_by_degree,
    step_eval,
    step_from_graph,
)
from .rng import Seed
from .viz import RasterSpec, render, render_series

__version__ = "0.1.0"
