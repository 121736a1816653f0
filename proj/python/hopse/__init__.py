"""Combinatorial-complex positional/structural encodings without message passing.

Thin wrapper over the compiled extension; see the project README for the
pipeline overview and the CLI.
"""

from hopse._core import (  # noqa: F401
    CombinatorialComplex,
    EncodingMatrix,
    HasseGraph,
    InputGraph,
    NeighborhoodFunction,
    ParseError,
    RankFeatureBundle,
    UnknownSetError,
    build_complex,
    chordless_cycles,
    clique_lift,
    count_extended_routes,
    count_minimal_routes,
    count_neighborhoods,
    cycle_lift,
    encode,
    encode_graph,
    enumerate_minimal_routes,
    fused_triangle_ring,
    hasse_graph,
    is_isomorphic,
    load_bundle,
    load_complex,
    load_graph,
    precompute_bundle,
    rank_targeted,
    save_bundle,
    save_complex,
    save_graph,
    taxonomy_names,
    taxonomy_set,
    train_demo,
)

__all__ = [
    "CombinatorialComplex",
    "EncodingMatrix",
    "HasseGraph",
    "InputGraph",
    "NeighborhoodFunction",
    "ParseError",
    "RankFeatureBundle",
    "UnknownSetError",
    "build_complex",
    "chordless_cycles",
    "clique_lift",
    "count_extended_routes",
    "count_minimal_routes",
    "count_neighborhoods",
    "cycle_lift",
    "encode",
    "encode_graph",
    "enumerate_minimal_routes",
    "fused_triangle_ring",
    "hasse_graph",
    "is_isomorphic",
    "load_bundle",
    "load_complex",
    "load_graph",
    "precompute_bundle",
    "rank_targeted",
    "save_bundle",
    "save_complex",
    "save_graph",
    "taxonomy_names",
    "taxonomy_set",
    "train_demo",
]
