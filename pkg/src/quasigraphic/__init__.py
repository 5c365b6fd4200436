"""Frameworks for matroids: graphs that witness quasi-graphicness.

The package is organised bottom-up: multigraphs (:mod:`.graph`), matroids
given by their circuits (:mod:`.matroid`), biased graphs with their frame
and lift matroids (:mod:`.biased`), the signed-graph constructions
(:mod:`.constructions`), the framework engine (:mod:`.frameworks`) and
structural analysis of frameworks (:mod:`.analysis`).
"""

from .analysis import (
    AnalyzedFramework,
    analyze,
    blocking_pairs,
    fixed_vertices,
    framework_blocking_vertices,
    is_fixed,
    minimal_balancing_sets_mixed,
    star_star,
)
from .biased import (
    BiasedGraph,
    balancing_sets,
    blocking_vertices,
    check_theta_property,
    derive_bias,
    find_signature,
    frame_matroid,
    from_signature,
    lift_matroid,
    split_blocking_vertex,
    standard_partition,
)
from .constructions import consecutive_twisting, fat_theta, four_twisting, pinch, simple_curling
from .frameworks import (
    classify_representation,
    decide_quasi_graphic,
    enumerate_frameworks,
    is_excluded_minor,
    verify_framework,
)
from .graph import Multigraph, canonical_form, graph_isomorphic, multigraph, whitney_flip
from .matroid import Matroid, cycle_matroid, has_minor, is_graphic, matroid_isomorphic, named_matroid, uniform

__all__ = [name for name in dir() if not name.startswith("_")]
