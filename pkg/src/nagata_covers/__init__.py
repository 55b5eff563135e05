"""Bounded colored covers of metric spaces and their certification."""

from .calculus import (LAMBDA_LADDER, HurewiczTrace, IntervalColorCover, SlabCoverProvider,
                       SlabCoverRequest, brick_provider, combined_constant, expand_and_recolor,
                       greedy_recolor, hurewicz_combine, hurewicz_trace, interval_slab_colors)
from .covers import (ColoredCover, CoverCertificate, certify, is_cover, max_diameter,
                     measured_lipschitz, min_separation, multiplicity)
from .errors import (AnnulusCoverError, ArgumentError, CertificationError, ConstructionError,
                     CoverError, LadderExhausted, PreconditionError, RecolorError)
from .hyperbolic import (HOROSPHERE_CONSTANT, UpperHalfSpacePoint, UpperHalfSpaceSample, busemann,
                         hadamard_cover, hadamard_slab_provider, horosphere_plane_cover,
                         horosphere_projection, hyperbolic_distance, sample_upper_half_space)
from .metric import (FiniteMetricSpace, GraphMetricSpace, RealValuedFunction, WeightedGraph,
                     build_graph_metric)
from .planar import (AnnulusSpec, PlanarGraph, annulus, annulus_cover, gen_grid,
                     gen_random_planar, planar_nagata_cover, planar_nagata_trace)
from .tiling import gen_hyperbolic_tiling

__version__ = "0.1.0"
