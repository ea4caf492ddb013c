"""depthopt: occlusion-aware rate-distortion adjustment of quantized depth
maps for depth-image-based view synthesis."""

from .camera import (
    DEFAULT_CAMERA,
    Camera,
    DepthLevel,
    QuantizedDisparity,
    derived_constants,
    disparity,
    disparity_error,
    load_camera,
    round_disparity,
)
from .cost import (
    PixelTables,
    build_tables,
    constrained_mass,
    distortion_values,
    expected_pixel_distortion,
    group_cost,
    group_cost_constrained,
    group_distortion,
    group_rate,
    probability_masses,
    rate_values,
)
from .estimator import DepthMapOptimizer
from .intervals import (
    Interval,
    equal_error_interval,
    interval_table,
    scan_interval,
    zero_error_interval,
)
from .metrics import RDPoint, bd_rate, psnr
from .optimize import (
    BisectionResult,
    GroupSolution,
    InfeasibleBudgetError,
    Problem,
    ProblemSolution,
    SearchSpaceError,
    bisect_lambda,
    brute_force,
    dp_optimize,
    independent_optimize,
    min_rate,
    solve_group,
    solve_problem,
    stage_cost,
    sweep_lambda,
)
from .pgm import read_pgm, write_pgm
from .pipeline import (
    FrameProblem,
    Report,
    build_problem,
    occluded_fraction,
    run_optimize,
    synthesize_image,
    synthesize_scene,
)
from .scene import Scene, gen_scene
from .warping import (
    OcclusionGroup,
    Pixel,
    extract_groups,
    first_max_index,
    forward_warp,
    order_preserved,
    synthesize_row,
    texture_weights,
)

__version__ = "0.1.0"

__all__ = [
    "BisectionResult",
    "Camera",
    "DEFAULT_CAMERA",
    "DepthLevel",
    "DepthMapOptimizer",
    "FrameProblem",
    "GroupSolution",
    "InfeasibleBudgetError",
    "Interval",
    "OcclusionGroup",
    "Pixel",
    "PixelTables",
    "Problem",
    "ProblemSolution",
    "QuantizedDisparity",
    "RDPoint",
    "Report",
    "Scene",
    "SearchSpaceError",
    "bd_rate",
    "bisect_lambda",
    "brute_force",
    "build_problem",
    "build_tables",
    "constrained_mass",
    "derived_constants",
    "disparity",
    "disparity_error",
    "distortion_values",
    "dp_optimize",
    "equal_error_interval",
    "expected_pixel_distortion",
    "extract_groups",
    "first_max_index",
    "forward_warp",
    "gen_scene",
    "group_cost",
    "group_cost_constrained",
    "group_distortion",
    "group_rate",
    "independent_optimize",
    "interval_table",
    "load_camera",
    "min_rate",
    "occluded_fraction",
    "order_preserved",
    "probability_masses",
    "psnr",
    "rate_values",
    "read_pgm",
    "round_disparity",
    "run_optimize",
    "scan_interval",
    "solve_group",
    "solve_problem",
    "stage_cost",
    "sweep_lambda",
    "synthesize_image",
    "synthesize_row",
    "synthesize_scene",
    "texture_weights",
    "write_pgm",
    "zero_error_interval",
]
