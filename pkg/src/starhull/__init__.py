"""Star, convex, and topological hulls of planar Brownian motion and bridge:
exact laws, exact samplers, and the Monte Carlo experiments that verify them.
"""

from .analytic import (
    QuadratureConfig,
    RayLawParams,
    bb_radial_density,
    bb_radial_moment,
    bessel_k,
    bm_radial_density,
    bm_radial_moment,
    erfc,
    erfc_gamma_moment,
    expected_hull_area,
    hit_place_cdf,
    hit_place_density,
    hit_time_density,
    hit_time_tail_asymptotic,
    ray_hit_density,
    ray_hit_laplace,
)
from .errors import (
    DomainError,
    NumericError,
    ResourceError,
    StarHullError,
    StatisticsError,
)
from .geometry import (
    ConvexPolygon,
    GridRaster,
    PlanarPath,
    RadialProfile,
    convex_hull,
    lattice_hull_area,
    polygon_area,
    profile_polygon,
    radial_distance,
    radial_profile,
    star_hull_area,
    topological_hull_area,
)
from .hitting import (
    RayHitSample,
    path_ray_hit,
    sample_bb_radial,
    sample_bm_radial,
    sample_first_passage,
    sample_hit_place,
    sample_hit_place_halfplane,
    sample_ray_hit,
)
from .mc import (
    ExperimentSpec,
    McEstimate,
    area_experiment,
    estimate,
    hull_bm_topo_experiment,
    ks_one_sample,
    ks_threshold,
    ks_two_sample,
    radial_area_experiment,
    ray_laplace_experiment,
    run_experiment,
    tail_slope,
)
from .paths import PathSpec, rotate, sample_bm, sample_bridge, sample_srw
from .rng import entropy_seed, substream, substream_seed

__version__ = "0.1.0"
