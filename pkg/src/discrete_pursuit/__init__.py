"""Projection pursuit for discrete data.

Finite spaces and projection bases, the block-sum (discrete Radon)
transform with 2-design inversion, distances to uniformity including exact
small-support optimal transport, least-uniform-direction search, sampling
theory checks, and the embedded Plato sentence-ending corpus with full
reproduction pipelines.
"""

from .spaces import (
    Block,
    DesignParams,
    DiscreteSpace,
    NotADesignError,
    ProjectionBase,
    base_affine,
    base_from_quotient,
    base_marginal_z2k,
    base_pairs_z2k,
    base_subsets,
    design_params,
    make_space,
    merge_bases,
    space_z2k,
)
from .radon import (
    MassFunction,
    TransformValues,
    delta_mass,
    fourier_z2k,
    invert,
    mass_function,
    transform,
    uniform_mass,
)
from .metrics import (
    GroundMetric,
    ProfileDistanceResult,
    ground_adjacent_transposition,
    ground_from_csv,
    ground_to_csv,
    ground_zero_one,
    hellinger,
    profile_distance,
    tv,
    wasserstein,
)
from .pursuit import (
    AdjustedMargins,
    Projection,
    ScanResult,
    adjusted_second_order,
    affine_scan,
    discrepancy,
    first_order,
    l1_between_adjusted,
    least_uniform,
    projection_of,
    rank_profiles,
)
from .theory import (
    balls_in_boxes,
    beta_tail,
    chebyshev_fraction,
    design_moments,
    peizer_pratt_beta,
    poisson_split,
    s_minus,
    sample_simplex,
    thm45_montecarlo,
    thm45_statistic,
    thm46_check,
    thm52_montecarlo,
)
from .plato import Corpus, corpus_to_csv, ingest_csv, load_table1
from .reproduce import plato_report, reproduce_margin_tables, reproduce_rankings

__version__ = "0.1.0"
