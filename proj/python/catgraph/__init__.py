"""Category graph estimation from graph samples."""

from ._catgraph import (
    CatgraphError,
    CategoryGraph,
    CategoryGraphEstimate,
    CategoryPartition,
    Graph,
    ObservationLog,
    SampleTrace,
    SamplerKind,
    edge_cut,
    estimate_category_graph,
    exact_category_graph,
    is_connected,
    load_graph,
    mean_degree,
    nrmse,
    observe,
    run_experiment,
    sample,
    save_graph,
    synthetic_graph,
    thin,
    to_estimate,
)

__all__ = [
    "CatgraphError",
    "CategoryGraph",
    "CategoryGraphEstimate",
    "CategoryPartition",
    "Graph",
    "ObservationLog",
    "SampleTrace",
    "SamplerKind",
    "edge_cut",
    "estimate_category_graph",
    "exact_category_graph",
    "is_connected",
    "load_graph",
    "mean_degree",
    "nrmse",
    "observe",
    "run_experiment",
    "sample",
    "save_graph",
    "synthetic_graph",
    "thin",
    "to_estimate",
]
